""" Bounded path search through a sequence of step segments.

A path shape is a list of ``Segment`` s, each one a step relation taken between ``lo`` and ``hi`` times.
The search is a layered breadth-first search over ``(segment, count, state)`` nodes, so the first
path found is a shortest one and ties are broken by step enumeration order.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Set, Tuple

DEFAULT_BUDGET = 100000


@dataclass(frozen=True)
class Segment:
    label: str
    steps: Callable[[Any], Sequence[Any]]
    lo: int = 0
    hi: Optional[int] = None

    def __post_init__(self):
        assert self.lo >= 0 and (self.hi is None or self.hi >= self.lo), \
            f'Bad segment bounds for {self.label}: {self.lo}..{self.hi}'


# a path is a list of (segment label, step)
Path = List[Tuple[str, Any]]


@dataclass
class SearchResult:
    found: Dict[Hashable, Path] = field(default_factory=dict)
    explored: int = 0
    depth: int = 0
    closed: bool = False
    exhausted: bool = False

    def path(self, target: Hashable) -> Optional[Path]:
        return self.found.get(target)


def search(source, targets: Set[Hashable], segments: Sequence[Segment], key: Callable[[Any], Hashable],
           budget: int = DEFAULT_BUDGET, stop: str = 'all') -> SearchResult:
    """Find paths from ``source`` to every state whose key is in ``targets``.

    ``stop`` is ``'all'`` (run until every target is found) or ``'any'`` (stop at the first one).
    ``closed`` is set when the frontier empties, ie the whole bounded space was explored;
    ``exhausted`` when more than ``budget`` nodes were visited.
    """
    assert segments, 'empty path shape'
    assert stop in ('all', 'any')
    last = len(segments) - 1
    targets = set(targets)
    result = SearchResult()
    parents: Dict[Tuple, Tuple[Optional[Tuple], Optional[Tuple[str, Any]]]] = {}

    def node_id(i, c, state):
        seg = segments[i]
        if seg.hi is None:
            c = min(c, seg.lo)
        return (i, c, key(state))

    def push(node, parent, edge, bucket):
        nid = node_id(*node)
        if nid in parents:
            return
        parents[nid] = (parent, edge)
        bucket.append((nid, node))
        i, c, state = node
        if i < last and c >= segments[i].lo:
            push((i + 1, 0, state), nid, None, bucket)

    def unwind(nid) -> Path:
        path = []
        while nid is not None:
            nid, edge = parents[nid]
            if edge is not None:
                path.append(edge)
        return path[::-1]

    frontier: List[Tuple[Tuple, Tuple]] = []
    push((0, 0, source), None, None, frontier)
    while frontier:
        for nid, (i, c, state) in frontier:
            k = nid[2]
            if i == last and c >= segments[i].lo and k in targets and k not in result.found:
                result.found[k] = unwind(nid)
        if result.found and (stop == 'any' or len(result.found) == len(targets)):
            break
        nxt = []
        for nid, (i, c, state) in frontier:
            seg = segments[i]
            if seg.hi is not None and c >= seg.hi:
                continue
            for step in seg.steps(state):
                push((i, c + 1, step.target), nid, (seg.label, step), nxt)
            if len(parents) > budget:
                result.exhausted = True
                break
        result.explored = len(parents)
        if result.exhausted:
            break
        frontier = nxt
        if frontier:
            result.depth += 1
    else:
        result.closed = True
    result.explored = len(parents)
    logging.debug(f'search: found {len(result.found)}/{len(targets)} explored={result.explored} '
                  f'depth={result.depth} closed={result.closed} exhausted={result.exhausted}')
    return result


def find_path(source, target, segments: Sequence[Segment], key: Callable[[Any], Hashable],
              budget: int = DEFAULT_BUDGET) -> Tuple[Optional[Path], SearchResult]:
    target_key = key(target)
    res = search(source, {target_key}, segments, key, budget, stop='any')
    return res.path(target_key), res


def shape(segments: Sequence[Segment]) -> str:
    def bound(s: Segment) -> str:
        if s.hi is None:
            return f'{s.label}^{s.lo}+' if s.lo else f'{s.label}*'
        if s.lo == s.hi:
            return f'{s.label}^{s.lo}'
        return f'{s.label}^{s.lo}..{s.hi}'
    return '·'.join(bound(s) for s in segments)
