import click

from factorlab.calculi.demos import DEMOS, run_demo
from factorlab.suite import utils


@click.command()
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default='text', help='Output format.')
@click.option('--out', type=click.Path(), default=None, help='Transcript file, stdout by default.')
@click.argument('name', type=str)
def demo(fmt, out, name):
    """Replay the worked example NAME. Exit status is 0 iff every expectation of the transcript holds.
    """
    if name not in DEMOS:
        raise utils.ConfigError(f'Unknown demo {name!r}, expected one of {sorted(DEMOS)}')
    tr = run_demo(name)
    doc = dict(command='demo', ok=tr.ok, results=[tr.to_dict()], telemetry={})
    utils.emit(doc, [f'== {name} =='] + tr.lines, fmt, out)
    click.get_current_context().exit(0 if tr.ok else 1)
