""" Probabilistic call-by-value calculus on multidistributions.

Term level: betav everywhere (surface when the redex sits in a weak context, deep otherwise) and
probabilistic choice ``M (+) N -> ⟦½·M, ½·N⟧`` in weak contexts only. A step of a multidistribution
reduces any non-empty subset of its entries by one term-level step each.
"""
import itertools
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from factorlab.engine import Calculus, enumerate_steps
from factorlab.gen.corpus import CorpusSpec, enumerate_terms
from factorlab.kernel.ars import ARSView, Bounds
from factorlab.kernel.modular import ESTABLISHED
from factorlab.kernel.oracle import factorization_oracle, oracle_report
from factorlab.prob.mdist import MultiDist, mdist_key, mdist_scale
from factorlab.report import Report, SuiteReport
from factorlab.rules import betav
from factorlab.syntax import show
from factorlab.terms import Choice, ContextClass, Position, Term, contexts, has_choice, replace, size

HALF = Fraction(1, 2)

BETAV_SURFACE = 'betav-surface'
BETAV_DEEP = 'betav-deep'
OPLUS = 'oplus'

LIFT_KINDS = {
    'betav': (BETAV_SURFACE, BETAV_DEEP),
    BETAV_SURFACE: (BETAV_SURFACE,),
    BETAV_DEEP: (BETAV_DEEP,),
    OPLUS: (OPLUS,),
    'surface': (BETAV_SURFACE, OPLUS),
    'any': (BETAV_SURFACE, BETAV_DEEP, OPLUS),
}


@dataclass(frozen=True)
class TermProbStep:
    kind: str
    pos: Position
    source: Term
    target: MultiDist

    @property
    def surface(self) -> bool:
        return self.kind != BETAV_DEEP

    def to_dict(self) -> Dict[str, Any]:
        return dict(source=show(self.source), rule=self.kind, pos=[d.value for d in self.pos],
                    target=str(self.target))


@dataclass(frozen=True)
class ProbStep:
    source: MultiDist
    target: MultiDist
    rule: str

    def to_dict(self) -> Dict[str, Any]:
        return dict(source=str(self.source), rule=self.rule, target=str(self.target))


def term_prob_steps(t: Term) -> List[TermProbStep]:
    """Term-level steps in position order, betav before choice at the same position."""
    steps = []
    for pos, sub, classes in contexts(t):
        weak = ContextClass.WEAK in classes
        for r in betav(sub):
            steps.append(TermProbStep(BETAV_SURFACE if weak else BETAV_DEEP, pos, t,
                                      MultiDist.point(replace(t, pos, r))))
        if weak and isinstance(sub, Choice):
            steps.append(TermProbStep(OPLUS, pos, t, MultiDist(((HALF, replace(t, pos, sub.left)),
                                                                (HALF, replace(t, pos, sub.right))))))
    return steps


def _kinds(kind: str):
    try:
        return LIFT_KINDS[kind]
    except KeyError:
        raise ValueError(f'Unknown lift kind {kind!r}, expected one of {sorted(LIFT_KINDS)}') from None


def lift(kind: str, m: MultiDist) -> List[MultiDist]:
    """Reducts of ``m``: each entry stays or takes one term step of ``kind``, at least one entry moves.
    Results are deduplicated as multisets, in the order of the product of entry choices.
    """
    kinds = _kinds(kind)
    options = []
    for p, t in m.entries:
        options.append([None] + [s.target for s in term_prob_steps(t) if s.kind in kinds])
    out, seen = [], set()
    for choice in itertools.product(*options):
        if all(c is None for c in choice):
            continue
        entries = []
        for (p, t), c in zip(m.entries, choice):
            entries.extend(((p, t),) if c is None else mdist_scale(p, c).entries)
        md = MultiDist(tuple(entries))
        k = md.key()
        if k not in seen:
            seen.add(k)
            out.append(md)
    return out


def lift_steps(kind: str, m: MultiDist) -> List[ProbStep]:
    return [ProbStep(m, n, kind) for n in lift(kind, m)]


def _surface_steps(m: MultiDist) -> List[ProbStep]:
    out, seen = [], set()
    for kind in (BETAV_SURFACE, OPLUS):
        for step in lift_steps(kind, m):
            k = step.target.key()
            if k not in seen:
                seen.add(k)
                out.append(step)
    return out


def prob_view() -> ARSView:
    """Surface steps (surface betav lifts and choice lifts) are essential, deep betav lifts are not.
    Lifts mixing surface and deep betav steps in one move are not part of either relation.
    """
    return ARSView(
        name='prob-cbv',
        essential=_surface_steps,
        inessential=lambda m: lift_steps(BETAV_DEEP, m),
        key=mdist_key,
        root=_surface_steps,
    )


def prob_factorization_oracle(m: MultiDist, seq_depth: int = 4, budget: int = 100000):
    return factorization_oracle(prob_view(), m, seq_depth, budget)


def check_surface_swap(corpus: Iterable[Term], max_witnesses: int = 10) -> Report:
    """Term level: a deep betav step followed by a choice step closes as a choice step followed
    by at most one lifted betav step.
    """
    report = Report(check='surface-swap', calculus='prob-cbv', max_witnesses=max_witnesses)
    start = time.perf_counter()
    for t in corpus:
        for s1 in term_prob_steps(t):
            if s1.kind != BETAV_DEEP:
                continue
            (_, u), = s1.target.entries
            for s2 in term_prob_steps(u):
                if s2.kind != OPLUS:
                    continue
                goal = s2.target.key()
                closing = None
                for c in term_prob_steps(t):
                    if c.kind != OPLUS:
                        continue
                    if c.target.key() == goal:
                        closing = [c.to_dict()]
                        break
                    tail = next((n for n in lift('betav', c.target) if n.key() == goal), None)
                    if tail is not None:
                        closing = [c.to_dict(), ProbStep(c.target, tail, 'betav').to_dict()]
                        break
                peak = [s1.to_dict(), s2.to_dict()]
                if closing is None:
                    report.add_failure(dict(peak=peak, reason='no choice step followed by a betav lift closes'))
                else:
                    report.add_closed(dict(peak=peak, closing=closing))
    report.seconds = time.perf_counter() - start
    logging.info(f'surface-swap [prob-cbv]: {report.summary()}')
    return report


def check_mass_conservation(corpus: Iterable[Term], depth: int = 2, max_witnesses: int = 10) -> Report:
    """Every lifted step keeps the total mass of its source."""
    report = Report(check='mass-conservation', calculus='prob-cbv', max_witnesses=max_witnesses)
    for t in corpus:
        layer = [MultiDist.point(t)]
        for _ in range(depth):
            nxt = []
            for m in layer:
                for n in lift('any', m):
                    if n.mass == m.mass:
                        report.add_closed()
                    else:
                        report.add_failure(dict(source=str(m), target=str(n), mass=str(n.mass)))
                    nxt.append(n)
            layer = nxt
    return report


def check_embedding(corpus: Iterable[Term], max_witnesses: int = 10) -> Report:
    """On choice-free terms, lifted betav steps of ``⟦1·M⟧`` are exactly the point distributions
    of the full call-by-value reducts of ``M``.
    """
    cbv = Calculus('cbv-full', ['betav'], ContextClass.FULL)
    report = Report(check='embedding', calculus='prob-cbv', max_witnesses=max_witnesses)
    for t in corpus:
        if has_choice(t):
            continue
        lifted = {n.key() for n in lift('betav', MultiDist.point(t))}
        plain = {MultiDist.point(s.target).key() for s in enumerate_steps(cbv, t)}
        if lifted == plain:
            report.add_closed()
        else:
            report.add_failure(dict(term=show(t), lifted=len(lifted), plain=len(plain)))
    return report


def prob_suite(corpus, bounds: Optional[Bounds] = None, calculus: Optional[Calculus] = None,
               oracle_budget: Optional[int] = None, oracle_size: Optional[int] = None) -> SuiteReport:
    """Surface factorization battery for the probabilistic calculus.

    The oracle runs on point distributions of corpus terms up to ``oracle_size``, since each lift
    multiplies the state space by the subsets of moving entries.
    """
    bounds = bounds or Bounds()
    corpus = CorpusSpec.parse(corpus)
    terms = list(enumerate_terms(corpus))
    desc = corpus.describe()
    logging.info(f'prob-test on {len(terms)} terms: {desc}')
    parts = dict(
        surface_swap=check_surface_swap(terms, bounds.max_witnesses),
        mass=check_mass_conservation(terms, max_witnesses=bounds.max_witnesses),
        embedding=check_embedding(terms, bounds.max_witnesses),
    )
    small = [MultiDist.point(t) for t in terms if oracle_size is None or size(t) <= oracle_size]
    parts['factorization'] = oracle_report(prob_view(), small, bounds.seq_depth, oracle_budget or bounds.budget,
                                           bounds.unknown_tolerance, bounds.max_witnesses, corpus_name=desc)
    parts = {k.replace('_', '-'): v for k, v in parts.items()}
    for r in parts.values():
        r.corpus = desc
    failing = [k for k, r in parts.items() if r.outcome != 'pass']
    conclusion = ESTABLISHED if not failing else f'not established: {", ".join(failing)}'
    return SuiteReport(check='prob-test', calculus=calculus.name if calculus else 'prob-cbv', parts=parts,
                       conclusion=conclusion)
