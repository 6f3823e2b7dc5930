import logging
import time
from typing import Any, Dict, List, Optional

import click
from omegaconf import OmegaConf

from factorlab.calculi.catalog import CalculusCatalogEntry, CheckSpec, _default_catalog, catalog, get_entry
from factorlab.calculi.suites import expectations_met
from factorlab.kernel.ars import Bounds
from factorlab.report import FAIL, UNKNOWN
from factorlab.suite import utils
from factorlab.terms import ContextClass

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_UNKNOWN = 2


def select(calculus: Optional[str], suite: Optional[str], essential: Optional[str], path: Optional[str] = None):
    """Catalog checks selected by calculus name, check name and essential context class."""
    path = path or _default_catalog
    try:
        entries = [get_entry(calculus, path)] if calculus else catalog(path)
        if essential is not None:
            essential = ContextClass.parse(essential).value
        selected = []
        for entry in entries:
            checks = [entry.check(suite)] if suite else entry.checks
            for c in checks:
                if essential is None or (c.essential or entry.calculus.essential.value) == essential:
                    selected.append((entry, c))
    except (KeyError, ValueError) as e:
        raise utils.ConfigError(str(e.args[0] if e.args else e)) from e
    if not selected:
        raise utils.ConfigError(f'No check selected by calculus={calculus} suite={suite} essential={essential}')
    return selected


def run_check(entry: CalculusCatalogEntry, check: CheckSpec, bounds: Bounds,
              corpus: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    suite = check.run(entry.calculus, entry.corpus_spec(corpus), bounds)
    met = expectations_met(suite, check.expect)
    return dict(
        calculus=entry.name,
        check=check.name,
        reference=entry.reference,
        expect=dict(check.expect),
        met=met,
        outcome=suite.outcome,
        suite=suite.to_dict(),
        telemetry=suite.telemetry(),
    )


def exit_code(results: List[Dict[str, Any]]) -> int:
    """0 when every expectation is met, 1 on a definite mismatch, 2 when only unknown parts are at fault."""
    missed = [r['suite']['parts'].get(part, {}).get('outcome', FAIL)
              for r in results for part, ok in r['met'].items() if not ok]
    if any(outcome != UNKNOWN for outcome in missed):
        return EXIT_MISMATCH
    return EXIT_UNKNOWN if missed else EXIT_OK


def text_lines(results: List[Dict[str, Any]]) -> List[str]:
    lines = []
    for r in results:
        lines.append(f'{r["calculus"]}/{r["check"]}  ({r["reference"]})')
        for name, part in r['suite']['parts'].items():
            expected = r['expect'].get(name)
            mark = '' if expected is None else ('ok' if r['met'][name] else f'MISMATCH, expected {expected}')
            lines.append(f'  {name:16s} {part["outcome"]:7s} peaks={part["peaks"]} closed={part["closed"]} '
                         f'failed={part["failed"]} unknown={part["unknown"]}  {mark}'.rstrip())
            for f in part['failures'][:1]:
                lines.append(f'    first failure: {f}')
        if r['suite']['conclusion']:
            lines.append(f'  conclusion: {r["suite"]["conclusion"]}')
    return lines


@click.command()
@click.option('--config', type=click.Path(exists=True), default=None, multiple=True,
              help='Path to an extra configuration file (overrides values of the default config).')
@click.option('--calculus', type=str, default=None, help='Catalog entry to check, all entries by default.')
@click.option('--suite', type=str, default=None, help='Check of the entry to run, all checks by default.')
@click.option('--essential', type=click.Choice(['head', 'left', 'weak']), default=None,
              help='Only run checks of this essential context class.')
@click.option('--max-size', type=int, default=None, help='Maximal corpus term size.')
@click.option('--seq-depth', type=int, default=None, help='Length bound of oracle sequences.')
@click.option('--path-bound', type=int, default=None, help='Length bound of closing paths.')
@click.option('--budget', type=int, default=None, help='State budget of one search (env FACTORLAB_BUDGET).')
@click.option('--seed', type=int, default=None, help='Seed of random corpora.')
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default=None, help='Report format.')
@click.option('--out', type=click.Path(), default=None, help='Report file, stdout by default.')
@click.argument('args', type=str, nargs=-1)
def check(config, calculus, suite, essential, max_size, seq_depth, path_bound, budget, seed, fmt, out, args):
    """Run catalog checks and compare their outcomes with the recorded expectations.

    ARGS are parameters to overwrite in the run config in a dot-separated form,
    for example `bounds.seq_depth=3`.
    Exit status is 0 when all expectations are met, 1 on a mismatch, 2 on unknown
    verdicts beyond tolerance and 64 on a usage error.
    """
    logging.basicConfig(level=logging.INFO)
    logging.info('Start checking')
    cfg = utils.load_config(config, args, **{
        'run.calculus': calculus, 'run.suite': suite, 'run.essential': essential,
        'corpus.max_size': max_size, 'corpus.seed': seed,
        'bounds.seq_depth': seq_depth, 'bounds.path_bound': path_bound, 'bounds.budget': budget,
        'output.format': fmt, 'output.out': out})
    bounds = utils.get_bounds(cfg)
    overrides = utils.corpus_overrides(cfg)
    selected = select(cfg.run.calculus, cfg.run.suite, cfg.run.essential, cfg.run.catalog)

    start = time.perf_counter()
    results = []
    for entry, c in selected:
        try:
            results.append(run_check(entry, c, bounds, overrides))
        except (AssertionError, TypeError) as e:
            raise utils.ConfigError(f'Bad configuration of {entry.name}/{c.name}: {e}') from e
    code = exit_code(results)
    telemetry = dict(seconds=round(time.perf_counter() - start, 3),
                     checks={f'{r["calculus"]}/{r["check"]}': r.pop('telemetry') for r in results})
    doc = dict(command='check', ok=code == EXIT_OK, exit_code=code,
               config=OmegaConf.to_container(cfg, resolve=True), results=results, telemetry=telemetry)
    lines = text_lines(results)
    lines.append(f'{"all expectations met" if code == EXIT_OK else "expectations NOT met"} (exit {code})')
    utils.emit(doc, lines, cfg.output.format, cfg.output.out)
    logging.info(f'Finished with exit code {code}')
    click.get_current_context().exit(code)
