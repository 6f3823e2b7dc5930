import logging
import time
from typing import Dict, List, Sequence

import click

from factorlab.engine import Calculus
from factorlab.gen.corpus import CorpusSpec, enumerate_terms
from factorlab.kernel.ars import calculus_view
from factorlab.kernel.swaps import SwapKind, check_swap
from factorlab.rules import FIX_Y, FIX_Z, OPLUS
from factorlab.suite import utils

# rules named after the constant they need in generated terms
_RULE_CONSTANTS = (OPLUS, FIX_Y, FIX_Z)


def _calculus(name: str, rules: Sequence[str], essential: str) -> Calculus:
    constants = sorted({r for r in rules if r in _RULE_CONSTANTS})
    return Calculus(name, list(rules), essential, constants=constants)


def search_counterexample(left: Sequence[str], right: Sequence[str], kind: str = 'root-linear-swap',
                          essential: str = 'head', max_size: int = 7, min_size: int = 1,
                          free_vars: Sequence[str] = ('p', 'q'), path_bound: int = 6, budget: int = 100000,
                          max_witnesses: int = 10, all_sizes: bool = False) -> List[Dict]:
    """Scan exhaustive corpora size by size for peaks of ``kind`` that do not close.

    Stops after the first size with failures unless ``all_sizes`` is set, so the first failure
    reported is on a size-minimal term.
    """
    kind = SwapKind.parse(kind)
    lcal = _calculus('+'.join(left), left, essential)
    rcal = _calculus('+'.join(right), right, essential)
    constants = sorted(set(lcal.constants) | set(rcal.constants))
    layers = []
    for n in range(min_size, max_size + 1):
        corpus = CorpusSpec(min_size=n, max_size=n, free_vars=free_vars, constants=constants)
        report = check_swap(kind, calculus_view(lcal), calculus_view(rcal), enumerate_terms(corpus), path_bound,
                            budget=budget, name=kind.value, max_witnesses=max_witnesses,
                            corpus_name=corpus.describe())
        layers.append(dict(size=n, report=report))
        logging.info(f'size {n}: {report.summary()}')
        if report.failed and not all_sizes:
            break
    return layers


@click.command(name='search-counterexample')
@click.option('--left', type=str, multiple=True, required=True, help='Rule of the inessential first step.')
@click.option('--right', type=str, multiple=True, required=True, help='Rule of the second step.')
@click.option('--kind', type=click.Choice([k.value for k in SwapKind]), default='root-linear-swap',
              help='Swap condition to test.')
@click.option('--essential', type=click.Choice(['head', 'left', 'weak']), default='head',
              help='Essential context class.')
@click.option('--max-size', type=int, default=7, help='Largest term size to scan.')
@click.option('--min-size', type=int, default=1, help='Smallest term size to scan.')
@click.option('--path-bound', type=int, default=6, help='Length bound of closing paths.')
@click.option('--budget', type=int, default=100000, help='State budget of one closing search.')
@click.option('--all', 'all_sizes', is_flag=True, default=False, help='Keep scanning after the first failing size.')
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default='text', help='Report format.')
@click.option('--out', type=click.Path(), default=None, help='Report file, stdout by default.')
def search(left, right, kind, essential, max_size, min_size, path_bound, budget, all_sizes, fmt, out):
    """Search the smallest terms with a non-closing peak of a LEFT step followed by a RIGHT step.
    """
    logging.basicConfig(level=logging.INFO)
    start = time.perf_counter()
    try:
        layers = search_counterexample(left, right, kind, essential, max_size, min_size, path_bound=path_bound,
                                       budget=budget, all_sizes=all_sizes)
    except (AssertionError, KeyError, ValueError) as e:
        raise utils.ConfigError(str(e)) from e
    failures = [f for layer in layers for f in layer['report'].failures]
    results = [dict(size=layer['size'], **layer['report'].to_dict()) for layer in layers]
    doc = dict(command='search', ok=not failures, results=results,
               config=dict(left=list(left), right=list(right), kind=kind, essential=essential,
                           max_size=max_size, min_size=min_size, path_bound=path_bound, budget=budget),
               telemetry=dict(seconds=round(time.perf_counter() - start, 3),
                              sizes={str(layer['size']): layer['report'].telemetry() for layer in layers}))
    lines = [f'size {r["size"]}: {r["outcome"]} peaks={r["peaks"]} failed={r["failed"]}' for r in results]
    if failures:
        first = failures[0]
        lines.append('first counterexample: ' + ' then '.join(
            f'{s["source"]} -{s["rule"]}-> {s["target"]}' for s in first['peak']))
    else:
        lines.append(f'no counterexample up to size {max_size}')
    utils.emit(doc, lines, fmt, out)
