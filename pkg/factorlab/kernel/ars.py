""" Abstract rewriting systems seen as a pair of step relations, essential and inessential.

Everything in the kernel only talks to ``ARSView``: term calculi, the probabilistic lifting and
hand-written finite systems all plug in here.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Hashable, Iterable, Optional, Sequence, Tuple, Union

from factorlab.engine import Calculus, enumerate_steps, root_steps
from factorlab.terms import ContextClass, alpha_key

StepFn = Callable[[Any], Sequence[Any]]


@dataclass
class Bounds:
    path_bound: int = 6
    seq_depth: int = 4
    budget: int = 100000
    unknown_tolerance: float = 0.0
    max_witnesses: int = 10

    def __post_init__(self):
        assert self.path_bound >= 1, 'path_bound must be positive'
        assert self.seq_depth >= 1, 'seq_depth must be positive'
        assert self.budget >= 1, 'budget must be positive'
        assert 0.0 <= self.unknown_tolerance <= 1.0, 'unknown_tolerance must be within [0, 1]'

    def replace(self, **kwargs) -> 'Bounds':
        d = dict(self.__dict__)
        d.update({k: v for k, v in kwargs.items() if v is not None})
        return Bounds(**d)


@dataclass
class ARSView:
    """Step relations over some state type.

    Steps are objects with at least ``source``, ``target`` and ``rule`` attributes and a ``to_dict``
    method. ``key`` maps a state to a hashable identity (alpha key for terms).
    """
    name: str
    essential: StepFn
    inessential: StepFn
    key: Callable[[Any], Hashable] = alpha_key
    root: Optional[StepFn] = None

    def steps(self, state) -> Sequence[Any]:
        return (*self.essential(state), *self.inessential(state))

    def root_steps(self, state) -> Sequence[Any]:
        if self.root is not None:
            return self.root(state)
        return tuple(s for s in self.essential(state) if not getattr(s, 'pos', None))

    def _signature(self, step) -> Tuple:
        return (step.rule, getattr(step, 'pos', None), self.key(step.target))

    def is_essential(self, step) -> bool:
        sig = self._signature(step)
        return any(self._signature(s) == sig for s in self.essential(step.source))

    def is_step(self, step) -> bool:
        sig = self._signature(step)
        return any(self._signature(s) == sig for s in self.steps(step.source))


def _cached(fn: StepFn, maxsize: int = 2 ** 14) -> StepFn:
    return lru_cache(maxsize=maxsize)(lambda state: tuple(fn(state)))


def calculus_view(cal: Calculus, essential: Union[None, str, ContextClass] = None) -> ARSView:
    """View of a calculus, split at ``essential`` (the calculus' own class by default)."""
    if essential is not None:
        cal = cal.with_essential(essential)
    return ARSView(
        name=cal.name,
        essential=_cached(lambda t: enumerate_steps(cal, t, cal.essential)),
        inessential=_cached(lambda t: enumerate_steps(cal, t, cal.essential, negate=True)),
        key=alpha_key,
        root=_cached(lambda t: root_steps(cal, t)),
    )


@dataclass(frozen=True)
class FiniteStep:
    source: Hashable
    target: Hashable
    rule: str = 'e'

    def to_dict(self) -> Dict[str, Any]:
        return dict(source=repr(self.source), rule=self.rule, target=repr(self.target))


@dataclass
class FiniteARS:
    """Finite rewriting system given by its essential and inessential edge lists."""
    essential_edges: Iterable[Tuple[Hashable, Hashable]] = ()
    inessential_edges: Iterable[Tuple[Hashable, Hashable]] = ()
    _succ: Dict[Tuple[str, Hashable], list] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        for rule, edges in (('e', self.essential_edges), ('i', self.inessential_edges)):
            for a, b in edges:
                self._succ.setdefault((rule, a), []).append(FiniteStep(a, b, rule))

    def steps_of(self, rule: str, state) -> Tuple[FiniteStep, ...]:
        return tuple(self._succ.get((rule, state), ()))


def finite_view(essential_edges: Iterable[Tuple[Hashable, Hashable]],
                inessential_edges: Iterable[Tuple[Hashable, Hashable]], name: str = 'finite') -> ARSView:
    ars = FiniteARS(list(essential_edges), list(inessential_edges))
    return ARSView(
        name=name,
        essential=lambda s: ars.steps_of('e', s),
        inessential=lambda s: ars.steps_of('i', s),
        key=lambda s: s,
        root=lambda s: ars.steps_of('e', s),
    )
