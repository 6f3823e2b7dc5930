""" Factorization oracle: is every bounded reduction sequence matched by an essential-first one?
"""
import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from factorlab.kernel.ars import ARSView
from factorlab.kernel.search import DEFAULT_BUDGET, Segment, find_path, search
from factorlab.report import Report


class Outcome(Enum):
    HOLDS = 'holds'
    REFUTED = 'refuted'
    UNKNOWN = 'unknown'


@dataclass
class Verdict:
    outcome: Outcome
    source: Any
    target: Any
    sequence: Tuple[Any, ...] = ()
    witness: Optional[Tuple[Any, ...]] = None
    labels: Tuple[str, ...] = ()
    explored: int = 0
    depth: int = 0
    transcript: str = ''

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    def to_dict(self) -> Dict[str, Any]:
        d = dict(
            outcome=self.outcome.value,
            sequence=[s.to_dict() for s in self.sequence],
            explored=self.explored,
            depth=self.depth,
        )
        if self.witness is not None:
            d['witness'] = [dict(label=lbl, **s.to_dict()) for lbl, s in zip(self.labels, self.witness)]
        if self.transcript:
            d['transcript'] = self.transcript
        return d


def bounded_sequences(view: ARSView, source, depth: int, budget: int = DEFAULT_BUDGET
                      ) -> Dict[Hashable, Tuple[Any, ...]]:
    """Endpoints of all non-empty sequences of length at most ``depth``, each with the first
    (shortest, enumeration-ordered) sequence reaching it.
    """
    found: Dict[Hashable, Tuple[Any, ...]] = {}
    layer = [(source, ())]
    seen = {view.key(source)}
    for _ in range(depth):
        nxt = []
        for state, chain in layer:
            for step in view.steps(state):
                k = view.key(step.target)
                if k not in found:
                    found[k] = chain + (step,)
                if k in seen:
                    continue
                seen.add(k)
                nxt.append((step.target, chain + (step,)))
                if len(seen) > budget:
                    logging.warning(f'sequence enumeration from {source} stopped at budget {budget}')
                    return found
        layer = nxt
    return found


def factorized_shape(view: ARSView) -> List[Segment]:
    return [Segment('e', view.essential), Segment('i', view.inessential)]


def factorization_oracle(view: ARSView, source, seq_depth: int = 4,
                         budget: int = DEFAULT_BUDGET) -> List[Verdict]:
    """Decide, per endpoint of a sequence of length at most ``seq_depth`` from ``source``,
    whether it is also reachable by essential steps followed by inessential steps.

    HOLDS carries the factorized witness, REFUTED means the whole essential-then-inessential
    reachable set was exhausted without meeting the endpoint, UNKNOWN that ``budget`` ran out first.
    """
    assert seq_depth >= 1, 'seq_depth must be positive'
    sequences = bounded_sequences(view, source, seq_depth, budget)
    if not sequences:
        return []
    res = search(source, set(sequences), factorized_shape(view), view.key, budget)
    verdicts = []
    for k, seq in sequences.items():
        target = seq[-1].target
        path = res.path(k)
        if path is not None:
            verdicts.append(Verdict(Outcome.HOLDS, source, target, seq,
                                    tuple(s for _, s in path), tuple(lbl for lbl, _ in path),
                                    res.explored, res.depth))
        elif res.closed:
            verdicts.append(Verdict(Outcome.REFUTED, source, target, seq, explored=res.explored, depth=res.depth,
                                    transcript=f'essential-then-inessential reachable set closed after '
                                               f'{res.explored} states without the target'))
        else:
            verdicts.append(Verdict(Outcome.UNKNOWN, source, target, seq, explored=res.explored, depth=res.depth,
                                    transcript=f'budget of {budget} states exhausted'))
    return verdicts


def oracle_report(view: ARSView, corpus: Iterable[Any], seq_depth: int = 4, budget: int = DEFAULT_BUDGET,
                  tolerance: float = 0.0, max_witnesses: int = 10, name: str = 'factorization',
                  corpus_name: str = '') -> Report:
    report = Report(check=name, calculus=view.name, corpus=corpus_name, tolerance=tolerance,
                    max_witnesses=max_witnesses)
    start = time.perf_counter()
    for t in corpus:
        for v in factorization_oracle(view, t, seq_depth, budget):
            report.states += v.explored
            if v.outcome is Outcome.HOLDS:
                report.add_closed(v.to_dict())
            elif v.outcome is Outcome.REFUTED:
                report.add_failure(v.to_dict())
            else:
                report.add_unknown(v.to_dict())
    report.seconds = time.perf_counter() - start
    logging.info(f'{name} [{view.name}]: {report.summary()}')
    return report


def _check_chain(view: ARSView, seq: Sequence[Any]):
    for a, b in zip(seq, seq[1:]):
        if view.key(a.target) != view.key(b.source):
            raise ValueError(f'Steps do not chain: {a} then {b}')


def reorder_sequence(view: ARSView, seq: Sequence[Any], budget: int = DEFAULT_BUDGET,
                     path_bound: int = 6) -> Verdict:
    """Rewrite ``seq`` into essential steps followed by inessential steps.

    The first inessential step followed by an essential one is repeatedly replaced by a shortest
    essential-then-inessential path between the same endpoints.
    """
    _check_chain(view, seq)
    if not seq:
        return Verdict(Outcome.HOLDS, None, None, (), (), ())
    chain = list(seq)
    flags = [view.is_essential(s) for s in chain]
    explored = rounds = 0
    segments = [Segment('e', view.essential, 0, path_bound), Segment('i', view.inessential, 0, path_bound)]
    while True:
        idx = next((j for j in range(len(chain) - 1) if not flags[j] and flags[j + 1]), None)
        if idx is None:
            return Verdict(Outcome.HOLDS, seq[0].source, seq[-1].target, tuple(seq), tuple(chain),
                           tuple('e' if f else 'i' for f in flags), explored, rounds)
        a, b = chain[idx], chain[idx + 1]
        path, res = find_path(a.source, b.target, segments, view.key, max(budget - explored, 1))
        explored += res.explored
        if path is None or explored > budget:
            return Verdict(Outcome.UNKNOWN, seq[0].source, seq[-1].target, tuple(seq), explored=explored,
                           depth=rounds, transcript=f'no local reordering of {a} then {b} within bounds')
        chain[idx:idx + 2] = [s for _, s in path]
        flags[idx:idx + 2] = [lbl == 'e' for lbl, _ in path]
        rounds += 1


def replay_chain(view: ARSView, chain: Sequence[Any]) -> bool:
    """Every step of ``chain`` is a step of ``view`` and consecutive steps agree on their states."""
    try:
        _check_chain(view, chain)
    except ValueError:
        return False
    return all(view.is_step(s) for s in chain)

