""" Local swap conditions checked over a corpus of source states.

Every check enumerates peaks ``t -> u -> s`` of a given pair of relations and searches for a closing
path of the required shape from ``t`` to ``s``.
"""
import logging
import time
from enum import Enum
from typing import Any, Callable, Iterable, List, Optional, Tuple

from factorlab.kernel.ars import ARSView
from factorlab.kernel.search import DEFAULT_BUDGET, Segment, find_path, shape
from factorlab.report import Report


class SwapKind(Enum):
    STRONG_POSTPONEMENT = 'strong-postponement'
    LINEAR_SWAP = 'linear-swap'
    ROOT_LINEAR_SWAP = 'root-linear-swap'
    LINEAR_POSTPONEMENT_1 = 'linear-postponement-1'
    LINEAR_POSTPONEMENT_2 = 'linear-postponement-2'

    @classmethod
    def parse(cls, value) -> 'SwapKind':
        if isinstance(value, cls):
            return value
        return cls(str(value).lower().replace('_', '-'))


def swap_shape(kind: SwapKind, left: ARSView, right: ARSView, path_bound: int,
               tail: Optional[int] = None, close_root: bool = False
               ) -> Tuple[Callable, Callable, List[Segment]]:
    """Peak relations and closing shape for a swap kind.

    Returns ``(first, second, segments)``: peaks are ``first`` followed by ``second``.
    ``tail`` bounds the trailing segment (``None`` means ``path_bound``).
    """
    tail = path_bound if tail is None else tail
    if kind is SwapKind.STRONG_POSTPONEMENT:
        return left.inessential, left.essential, [
            Segment('e', left.essential, 0, path_bound), Segment('i', left.inessential, 0, 1)]
    if kind is SwapKind.LINEAR_SWAP:
        return left.inessential, right.essential, [
            Segment('e', right.essential, 1, 1), Segment('any', left.steps, 0, tail)]
    if kind is SwapKind.ROOT_LINEAR_SWAP:
        first = right.root_steps if close_root else right.essential
        return left.inessential, right.root_steps, [
            Segment('e', first, 1, 1), Segment('any', left.steps, 0, tail)]
    if kind is SwapKind.LINEAR_POSTPONEMENT_1:
        return left.inessential, left.essential, [
            Segment('e', left.essential, 1, 1), Segment('i', left.inessential, 0, tail)]
    if kind is SwapKind.LINEAR_POSTPONEMENT_2:
        return left.inessential, left.essential, [
            Segment('e', left.essential, 1, 1), Segment('any', left.steps, 0, 1)]
    raise ValueError(f'Unknown swap kind {kind}')


def peaks(first: Callable, second: Callable, corpus: Iterable[Any]):
    for t in corpus:
        for s1 in first(t):
            for s2 in second(s1.target):
                yield t, s1, s2


def _close_peaks(name: str, peak_iter, segments: List[Segment], key, budget: int,
                 max_witnesses: int, calculus: str = '', corpus: str = '') -> Report:
    report = Report(check=name, calculus=calculus, corpus=corpus, max_witnesses=max_witnesses, min_peaks=1)
    start = time.perf_counter()
    for t, steps in peak_iter:
        s = steps[-1].target
        path, res = find_path(t, s, segments, key, budget)
        report.states += res.explored
        peak = [x.to_dict() for x in steps]
        if path is not None:
            report.add_closed(dict(peak=peak, closing=[dict(label=lbl, **x.to_dict()) for lbl, x in path]))
        elif res.exhausted:
            report.add_unknown(dict(peak=peak, explored=res.explored, depth=res.depth))
        else:
            report.add_failure(dict(peak=peak, explored=res.explored, depth=res.depth,
                                    reason=f'no closing path of shape {shape(segments)}'))
    report.seconds = time.perf_counter() - start
    logging.info(f'{name} [{calculus}]: {report.summary()}')
    return report


def check_swap(kind, left: ARSView, right: Optional[ARSView], corpus: Iterable[Any], path_bound: int = 6,
               tail: Optional[int] = None, close_root: bool = False, budget: int = DEFAULT_BUDGET,
               name: Optional[str] = None, max_witnesses: int = 10, corpus_name: str = '') -> Report:
    """Check a swap condition between ``left`` and ``right`` on every peak whose source is in ``corpus``.

    Linear swap and root linear swap peaks are a ``left`` inessential step followed by a ``right``
    (root) step; the postponement kinds look at ``left`` alone.
    """
    kind = SwapKind.parse(kind)
    right = left if right is None else right
    first, second, segments = swap_shape(kind, left, right, path_bound, tail, close_root)
    name = name or kind.value
    peak_iter = ((t, (s1, s2)) for t, s1, s2 in peaks(first, second, corpus))
    return _close_peaks(name, peak_iter, segments, left.key, budget, max_witnesses,
                        calculus=f'{left.name}|{right.name}' if right is not left else left.name,
                        corpus=corpus_name)


def check_strong_postponement(view: ARSView, corpus: Iterable[Any], path_bound: int = 6,
                              budget: int = DEFAULT_BUDGET, max_witnesses: int = 10) -> Report:
    return check_swap(SwapKind.STRONG_POSTPONEMENT, view, view, corpus, path_bound, budget=budget,
                      max_witnesses=max_witnesses)


def _star_peaks(a: Callable, b: Callable, corpus: Iterable[Any], depth: int, key):
    for t in corpus:
        layer = [(t, ())]
        for _ in range(depth):
            nxt, seen = [], set()
            for state, chain in layer:
                for step in a(state):
                    k = key(step.target)
                    if k in seen:
                        continue
                    seen.add(k)
                    nxt.append((step.target, chain + (step,)))
            for state, chain in nxt:
                for step in b(state):
                    yield t, chain + (step,)
            layer = nxt


def check_star_swap(a: Callable, b: Callable, c: Callable, corpus: Iterable[Any], key: Callable,
                    depth: int = 2, path_bound: int = 6, budget: int = DEFAULT_BUDGET,
                    name: str = 'star-swap', max_witnesses: int = 10) -> Report:
    """``a^k · b ⊆ b · c*`` for ``1 <= k <= depth``, with ``c*`` bounded by ``path_bound``."""
    segments = [Segment('b', b, 1, 1), Segment('c', c, 0, path_bound)]
    return _close_peaks(name, _star_peaks(a, b, corpus, depth, key), segments, key, budget, max_witnesses)

