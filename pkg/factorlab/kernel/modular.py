""" Modular factorization: combine per-component evidence with cross-component swap evidence.

``head_test`` and ``leftweak_test`` run the standard battery for extending a base calculus
(beta or betav) with a set of extra rules, and report each part separately.
"""
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from factorlab.engine import Calculus, check_substitutive
from factorlab.gen.corpus import CorpusSpec, enumerate_terms, substitution_triples
from factorlab.kernel.ars import ARSView, Bounds, calculus_view
from factorlab.kernel.oracle import oracle_report
from factorlab.kernel.swaps import SwapKind, check_swap
from factorlab.report import Report, SuiteReport
from factorlab.rules import get_rule
from factorlab.terms import ContextClass

ESTABLISHED = 'established at corpus scale'


@dataclass
class Component:
    name: str
    view: Optional[ARSView] = None
    # factorization taken from prior results instead of being checked here
    assumed: bool = False
    evidence: Optional[Report] = None


@dataclass
class ModularVerdict:
    established: bool
    conclusion: str
    missing: List[str] = field(default_factory=list)
    counterexample: Optional[Dict[str, Any]] = None


def modular_test(components: Sequence[Component], swap_evidence: Iterable[Report]) -> ModularVerdict:
    """Factorization of the union follows when every component factorizes (by assumption or by
    passing evidence) and every cross-component swap check passes on at least one peak. Otherwise the verdict names
    what is missing, and carries the first failing swap peak if there is one.
    """
    missing = []
    for c in components:
        if c.assumed:
            continue
        if c.evidence is None:
            missing.append(f'no factorization evidence for {c.name}')
        elif c.evidence.outcome != 'pass':
            missing.append(f'factorization of {c.name}: {c.evidence.outcome}')
    counterexample = None
    for r in swap_evidence:
        if not r.peaks:
            missing.append(f'{r.check}: no peaks checked')
            continue
        if r.outcome == 'pass':
            continue
        missing.append(f'{r.check}: {r.outcome}')
        if counterexample is None and r.failures:
            counterexample = dict(check=r.check, **r.failures[0])
    if missing:
        return ModularVerdict(False, 'not established: ' + '; '.join(missing), missing, counterexample)
    return ModularVerdict(True, ESTABLISHED)


def _rules(gamma: Union[str, Sequence[str]]) -> List[str]:
    return [gamma] if isinstance(gamma, str) else list(gamma)


def _modular_suite(check: str, essential: ContextClass, gamma: Sequence[str], base: str, corpus: CorpusSpec,
                   bounds: Bounds, self_tail: Optional[int], root_tail: Optional[int], close_root: bool,
                   lifted: bool, oracle: bool, oracle_budget: Optional[int], calculus: Optional[Calculus]
                   ) -> SuiteReport:
    gamma_name = '+'.join(gamma)
    terms = list(enumerate_terms(corpus))
    desc = corpus.describe()
    logging.info(f'{check} for {base} + {gamma_name} ({essential.value}) on {len(terms)} terms: {desc}')
    gamma_cal = Calculus(gamma_name, gamma, essential, corpus.choice, corpus.constants)
    base_cal = Calculus(base, [base], essential, corpus.choice, corpus.constants)
    g, b = calculus_view(gamma_cal), calculus_view(base_cal)
    swap_args = dict(path_bound=bounds.path_bound, close_root=close_root, budget=bounds.budget,
                     max_witnesses=bounds.max_witnesses, corpus_name=desc)

    parts: Dict[str, Report] = {}
    if oracle:
        parts['factorization'] = oracle_report(g, terms, bounds.seq_depth, oracle_budget or bounds.budget,
                                               bounds.unknown_tolerance, bounds.max_witnesses, corpus_name=desc)
    parts['self-swap'] = check_swap(SwapKind.ROOT_LINEAR_SWAP, g, g, terms, tail=self_tail,
                                    name='self-swap', **swap_args)
    parts['root-swap'] = check_swap(SwapKind.ROOT_LINEAR_SWAP, b, g, terms, tail=root_tail,
                                    name='root-swap', **swap_args)
    triples = list(substitution_triples(corpus, terms))
    subst = reduce(Report.merge, [check_substitutive(get_rule(r), triples, bounds.max_witnesses) for r in gamma])
    subst.check, subst.calculus, subst.corpus = 'substitutivity', gamma_name, desc
    parts['substitutivity'] = subst
    if lifted:
        swap_args['close_root'] = False
        parts['lifted-swap'] = check_swap(SwapKind.LINEAR_SWAP, b, g, terms, name='lifted-swap', **swap_args)
        parts['reverse-swap'] = check_swap(SwapKind.LINEAR_SWAP, g, b, terms, name='reverse-swap', **swap_args)

    components = [Component(base, b, assumed=True), Component(gamma_name, g, evidence=parts.get('factorization'))]
    if not oracle:
        # self-swap alone gives factorization of the extra rules
        components[1].evidence = parts['self-swap']
    swaps = [r for k, r in parts.items() if k != 'factorization']
    verdict = modular_test(components, swaps)
    name = calculus.name if calculus is not None else f'{base}+{gamma_name}'
    logging.info(f'{check} {name}: {verdict.conclusion}')
    return SuiteReport(check=check, calculus=name, parts=parts, conclusion=verdict.conclusion)


def head_test(gamma: Union[str, Sequence[str]], corpus: Union[CorpusSpec, Dict, None] = None,
              bounds: Optional[Bounds] = None, base: str = 'beta', self_tail: Optional[int] = None,
              root_tail: Optional[int] = None, close_root: bool = False, lifted: bool = False,
              oracle: bool = True, oracle_budget: Optional[int] = None,
              calculus: Optional[Calculus] = None) -> SuiteReport:
    """Head factorization of ``base ∪ gamma``.

    Parts: factorization of gamma alone, gamma self swap (root peaks), root swap of inessential
    base steps against gamma root steps, substitutivity of gamma, and optionally the lifted
    linear swaps in both directions. ``None`` tails mean ``path_bound``.
    """
    return _modular_suite('head-test', ContextClass.HEAD, _rules(gamma), base, CorpusSpec.parse(corpus),
                          bounds or Bounds(), self_tail, root_tail, close_root, lifted, oracle, oracle_budget,
                          calculus)


def leftweak_test(gamma: Union[str, Sequence[str]], essential: Union[str, ContextClass] = 'weak',
                  corpus: Union[CorpusSpec, Dict, None] = None, bounds: Optional[Bounds] = None,
                  base: str = 'betav', self_tail: Optional[int] = None, root_tail: Optional[int] = None,
                  close_root: bool = False, lifted: bool = False, oracle: bool = True,
                  oracle_budget: Optional[int] = None, calculus: Optional[Calculus] = None) -> SuiteReport:
    """Left or weak factorization of ``base ∪ gamma``, same parts as ``head_test``."""
    essential = ContextClass.parse(essential)
    assert essential in (ContextClass.LEFT, ContextClass.WEAK), f'Expected left or weak, got {essential.value}'
    return _modular_suite(f'{essential.value}-test', essential, _rules(gamma), base, CorpusSpec.parse(corpus),
                          bounds or Bounds(), self_tail, root_tail, close_root, lifted, oracle, oracle_budget,
                          calculus)
