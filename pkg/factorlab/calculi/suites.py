""" Catalog check adapters.

Every check referenced from the catalog is called as ``fn(calculus=..., corpus=..., bounds=..., **kwargs)``
and returns a ``SuiteReport``.
"""
import logging
import time
from typing import Dict, Optional, Sequence, Union

from factorlab.engine import Calculus, check_shape_preservation, enumerate_steps
from factorlab.gen.corpus import CorpusSpec, enumerate_terms
from factorlab.kernel.ars import Bounds, calculus_view
from factorlab.kernel.oracle import oracle_report
from factorlab.kernel.swaps import SwapKind, check_swap
from factorlab.report import Report, SuiteReport
from factorlab.syntax import show
from factorlab.terms import ContextClass, alpha_key


def _setup(calculus: Calculus, corpus, bounds: Optional[Bounds], rules: Optional[Sequence[str]] = None,
           essential: Union[None, str, ContextClass] = None):
    corpus = CorpusSpec.parse(corpus)
    cal = calculus.restrict(rules) if rules else calculus
    if essential is not None:
        cal = cal.with_essential(essential)
    return cal, corpus, list(enumerate_terms(corpus)), bounds or Bounds()


def _single(check: str, cal: Calculus, report: Report) -> SuiteReport:
    return SuiteReport(check=check, calculus=cal.name, parts={report.check: report}, conclusion=report.outcome)


def shape_suite(calculus: Calculus, corpus=None, bounds: Optional[Bounds] = None,
                essential: Union[None, str, ContextClass] = None) -> SuiteReport:
    cal, corpus, terms, bounds = _setup(calculus, corpus, bounds, essential=essential)
    report = check_shape_preservation(cal, terms, bounds.max_witnesses)
    report.corpus = corpus.describe()
    logging.info(f'shape-preservation [{cal.name}]: {report.summary()}')
    return _single('shape', cal, report)


def oracle_suite(calculus: Calculus, corpus=None, bounds: Optional[Bounds] = None,
                 rules: Optional[Sequence[str]] = None, essential: Union[None, str, ContextClass] = None,
                 oracle_budget: Optional[int] = None) -> SuiteReport:
    """Factorization oracle of the calculus (or its restriction to ``rules``) on every corpus term."""
    cal, corpus, terms, bounds = _setup(calculus, corpus, bounds, rules, essential)
    report = oracle_report(calculus_view(cal), terms, bounds.seq_depth, oracle_budget or bounds.budget,
                           bounds.unknown_tolerance, bounds.max_witnesses, corpus_name=corpus.describe())
    return _single('factorization', cal, report)


def swap_suite(calculus: Calculus, corpus=None, bounds: Optional[Bounds] = None, kind: str = 'linear-swap',
               rules: Optional[Sequence[str]] = None, right_rules: Optional[Sequence[str]] = None,
               essential: Union[None, str, ContextClass] = None, tail: Optional[int] = None,
               close_root: bool = False) -> SuiteReport:
    """One swap condition; ``rules`` selects the left relation, ``right_rules`` the right one."""
    cal, corpus, terms, bounds = _setup(calculus, corpus, bounds, rules, essential)
    left = calculus_view(cal)
    right = calculus_view(calculus.restrict(right_rules).with_essential(cal.essential)) if right_rules else left
    kind = SwapKind.parse(kind)
    report = check_swap(kind, left, right, terms, bounds.path_bound, tail, close_root, bounds.budget,
                        max_witnesses=bounds.max_witnesses, corpus_name=corpus.describe())
    return _single(kind.value, cal, report)


def _termination(cal: Calculus, t, budget: int) -> Optional[str]:
    """None when the reduction graph from ``t`` is finite and acyclic, a reason otherwise;
    raises ``OverflowError`` when ``budget`` states are exceeded."""
    succ: Dict = {}
    todo = [t]
    while todo:
        s = todo.pop()
        k = alpha_key(s)
        if k in succ:
            continue
        if len(succ) >= budget:
            raise OverflowError(f'more than {budget} reducts')
        steps = enumerate_steps(cal, s)
        succ[k] = [alpha_key(step.target) for step in steps]
        todo.extend(step.target for step in steps)
    # iterative depth-first search, 1 = on stack, 2 = done
    state = {}
    for root in succ:
        if root in state:
            continue
        stack = [(root, iter(succ[root]))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return f'reduction cycle among {len(succ)} reducts'
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return None


def termination_suite(calculus: Calculus, corpus=None, bounds: Optional[Bounds] = None,
                      rules: Optional[Sequence[str]] = None, budget: int = 10000) -> SuiteReport:
    """Every corpus term has a finite, acyclic reduction graph under ``rules``."""
    cal, corpus, terms, bounds = _setup(calculus, corpus, bounds, rules)
    report = Report(check='termination', calculus=cal.name, corpus=corpus.describe(),
                    max_witnesses=bounds.max_witnesses)
    start = time.perf_counter()
    for t in terms:
        try:
            reason = _termination(cal, t, budget)
        except OverflowError as e:
            report.add_unknown(dict(term=show(t), reason=str(e)))
            continue
        if reason is None:
            report.add_closed()
        else:
            report.add_failure(dict(term=show(t), reason=reason))
    report.seconds = time.perf_counter() - start
    logging.info(f'termination [{cal.name}]: {report.summary()}')
    return _single('termination', cal, report)


def expectations_met(suite: SuiteReport, expect: Dict[str, str]) -> Dict[str, bool]:
    """Per expected part, whether its outcome matches; missing parts count as mismatches."""
    return {part: part in suite.parts and suite.parts[part].outcome == outcome for part, outcome in expect.items()}
