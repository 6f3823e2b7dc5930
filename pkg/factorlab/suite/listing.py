import click

from factorlab.calculi.catalog import _default_catalog, catalog
from factorlab.suite import utils


def listing_lines(entries) -> list:
    lines = []
    for e in entries:
        cal = e.calculus
        lines.append(f'{e.name}  rules={",".join(cal.rule_names)}  essential={cal.essential.value}  '
                     f'confluence: {e.confluence or "unknown"}')
        lines.append(f'  {e.reference}')
        if cal.description:
            lines.append(f'  {cal.description}')
        for r in cal.rules:
            lines.append(f'    {r.name}: {r.doc}')
        for c in e.checks:
            tag = '  expected FAIL' if any(v == 'fail' for v in c.expect.values()) else ''
            lines.append(f'  - {c.name} [{c.essential or cal.essential.value}]: {c.describe()}{tag}')
    return lines


@click.command(name='list')
@click.option('--catalog', 'path', type=click.Path(exists=True), default=_default_catalog,
              help='Path to the calculus catalog.')
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default='text', help='Output format.')
@click.argument('names', type=str, nargs=-1)
def listing(path, fmt, names):
    """List catalog entries with their reference and expected outcomes.
    NAMES restrict the listing to these entries; the whole catalog is listed by default.
    """
    entries = catalog(path)
    unknown = set(names) - {e.name for e in entries}
    if unknown:
        raise utils.ConfigError(f'Unknown calculi {sorted(unknown)}, expected some of {[e.name for e in entries]}')
    if names:
        entries = [e for e in entries if e.name in names]
    if fmt == 'json':
        click.echo(utils.to_json(dict(catalog=[e.to_dict() for e in entries])), nl=False)
    else:
        click.echo('\n'.join(listing_lines(entries)))
