from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Hashable, Iterable, Tuple, Union

from factorlab.syntax import from_json, parse, show, to_json
from factorlab.terms import Term, alpha_key

Prob = Union[Fraction, int, str]


def _prob(p: Prob) -> Fraction:
    return p if isinstance(p, Fraction) else Fraction(p)


@dataclass(frozen=True)
class MultiDist:
    """Finite multiset of weighted terms ``⟦p1·M1, ..., pn·Mn⟧``.

    Weights are exact fractions in ``(0, 1]`` with total mass at most one. Equality of entries is
    as multisets up to alpha-equivalence, which is what ``key`` captures.
    """
    entries: Tuple[Tuple[Fraction, Term], ...]

    def __post_init__(self):
        entries = tuple((_prob(p), t) for p, t in self.entries)
        for p, t in entries:
            if not 0 < p <= 1:
                raise ValueError(f'Weight {p} of {show(t)} is outside (0, 1]')
        mass = sum((p for p, _ in entries), Fraction(0))
        if mass > 1:
            raise ValueError(f'Total mass {mass} exceeds 1')
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def of(cls, *pairs: Tuple[Prob, Term]) -> 'MultiDist':
        return cls(tuple(pairs))

    @classmethod
    def point(cls, t: Term) -> 'MultiDist':
        return cls(((Fraction(1), t),))

    @property
    def mass(self) -> Fraction:
        return sum((p for p, _ in self.entries), Fraction(0))

    def key(self) -> Hashable:
        return tuple(sorted(((p, alpha_key(t)) for p, t in self.entries), key=repr))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return '⟦' + ', '.join(f'{p}·{show(t)}' for p, t in self.entries) + '⟧'

    def to_json(self) -> Dict[str, Any]:
        return dict(entries=[dict(p=str(p), term=to_json(t), text=show(t)) for p, t in self.entries])

    @classmethod
    def from_json(cls, d: Dict[str, Any]) -> 'MultiDist':
        return cls(tuple((Fraction(e['p']), from_json(e['term'])) for e in d['entries']))

    @classmethod
    def parse(cls, pairs: Iterable[Tuple[Prob, str]], constants: Iterable[str] = ()) -> 'MultiDist':
        return cls(tuple((_prob(p), parse(t, constants)) for p, t in pairs))


def mdist_key(m: MultiDist) -> Hashable:
    return m.key()


def mdist_sum(a: MultiDist, b: MultiDist) -> MultiDist:
    """Multiset union; fails when the combined mass exceeds one."""
    return MultiDist(a.entries + b.entries)


def mdist_scale(q: Prob, m: MultiDist) -> MultiDist:
    q = _prob(q)
    if not 0 < q <= 1:
        raise ValueError(f'Scale factor {q} is outside (0, 1]')
    return MultiDist(tuple((q * p, t) for p, t in m.entries))
