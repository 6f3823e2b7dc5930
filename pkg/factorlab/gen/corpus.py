""" Term corpora: exhaustive enumeration by size, seeded random sampling and substitution triples.

Exhaustive mode lists every term up to alpha-equivalence exactly once: binder names are fixed by
binding depth, so two generated terms are alpha-equivalent only if they are equal.
"""
import logging
import os
from collections import Counter
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from factorlab.rules import OPLUS, RootRule, get_rule
from factorlab.syntax import parse, show
from factorlab.terms import Abs, App, Choice, Const, Term, Var, contexts, is_value

_BINDERS = ('x', 'y', 'z', 'w', 'u', 'v', 's', 'r')


@dataclass
class CorpusSpec:
    max_size: int = 7
    min_size: int = 1
    free_vars: Sequence[str] = ('p', 'q')
    constants: Sequence[str] = ()
    choice: bool = False
    # generate the ``oplus`` constant only fully applied
    full_oplus: bool = True
    mode: str = 'exhaustive'
    seed: int = 0
    count: int = 1000
    value_bias: float = 0.0
    pool: Sequence[str] = ()
    # hand-picked terms appended to the generated ones
    extra: Sequence[str] = ()
    name: str = ''

    def __post_init__(self):
        self.free_vars = tuple(self.free_vars)
        self.constants = tuple(self.constants)
        self.pool = tuple(self.pool)
        self.extra = tuple(self.extra)
        assert 1 <= self.min_size <= self.max_size, f'Bad size range {self.min_size}..{self.max_size}'
        assert self.mode in ('exhaustive', 'random'), f'Unknown corpus mode {self.mode}'
        assert 0.0 <= self.value_bias <= 1.0, 'value_bias must be within [0, 1]'
        clash = set(self.free_vars) & set(self.constants)
        assert not clash, f'Names used both as free variables and constants: {sorted(clash)}'

    @classmethod
    def parse(cls, value: Union['CorpusSpec', Dict, None]) -> 'CorpusSpec':
        if value is None:
            return cls()
        if isinstance(value, cls):
            return value
        return cls(**dict(value))

    def describe(self) -> str:
        if self.name:
            return self.name
        parts = [f'{self.mode} size {self.min_size}..{self.max_size}', f'free {",".join(self.free_vars) or "-"}']
        if self.constants:
            parts.append(f'constants {",".join(self.constants)}')
        if self.choice:
            parts.append('choice')
        if self.extra:
            parts.append(f'{len(self.extra)} extra')
        if self.mode == 'random':
            parts.append(f'seed {self.seed} count {self.count}')
        return ', '.join(parts)

    def to_dict(self) -> Dict:
        d = asdict(self)
        for k in ('free_vars', 'constants', 'pool', 'extra'):
            d[k] = list(d[k])
        return d


@dataclass(frozen=True)
class _Grammar:
    free_vars: Tuple[str, ...]
    constants: Tuple[str, ...]
    choice: bool
    full_oplus: bool
    binders: Tuple[str, ...] = field(init=False)

    def __post_init__(self):
        taken = set(self.free_vars) | set(self.constants)
        object.__setattr__(self, 'binders', tuple(b for b in _BINDERS if b not in taken))

    @property
    def oplus(self) -> bool:
        return self.full_oplus and OPLUS in self.constants

    @property
    def atom_constants(self) -> Tuple[Const, ...]:
        return tuple(Const(c) for c in self.constants if not (self.oplus and c == OPLUS))

    def binder(self, depth: int) -> str:
        if depth < len(self.binders):
            return self.binders[depth]
        return f'x{depth}'

    def atoms(self, depth: int) -> Tuple[Term, ...]:
        bound = tuple(Var(self.binder(d)) for d in reversed(range(depth)))
        return bound + tuple(Var(v) for v in self.free_vars) + self.atom_constants

    def splits(self, n: int) -> List[Tuple[str, int]]:
        """Productions for size ``n > 1`` as (kind, size of the first component)."""
        out = [('abs', n - 1)]
        out += [('app', i) for i in range(1, n - 1)]
        if self.oplus:
            out += [('oplus', i) for i in range(1, n - 3)]
        if self.choice:
            out += [('choice', i) for i in range(1, n - 1)]
        return out

    @staticmethod
    def rest(kind: str, n: int, i: int) -> int:
        return n - 3 - i if kind == 'oplus' else n - 1 - i

    @lru_cache(maxsize=None)
    def count(self, n: int, depth: int = 0) -> int:
        if n < 1:
            return 0
        if n == 1:
            return len(self.atoms(depth))
        total = 0
        for kind, i in self.splits(n):
            if kind == 'abs':
                total += self.count(n - 1, depth + 1)
            else:
                total += self.count(i, depth) * self.count(self.rest(kind, n, i), depth)
        return total

    @lru_cache(maxsize=None)
    def terms(self, n: int, depth: int = 0) -> Tuple[Term, ...]:
        return tuple(self.generate(n, depth))

    def generate(self, n: int, depth: int = 0) -> Iterator[Term]:
        if n == 1:
            yield from self.atoms(depth)
            return
        for kind, i in self.splits(n):
            if kind == 'abs':
                b = self.binder(depth)
                for body in self.terms(n - 1, depth + 1):
                    yield Abs(b, body)
                continue
            for first in self.terms(i, depth):
                for second in self.terms(self.rest(kind, n, i), depth):
                    yield self.build(kind, first, second)

    @staticmethod
    def build(kind: str, first: Term, second: Term) -> Term:
        if kind == 'app':
            return App(first, second)
        if kind == 'oplus':
            return App(App(Const(OPLUS), first), second)
        return Choice(first, second)

    def sample(self, n: int, depth: int, rng: np.random.Generator, value_bias: float = 0.0) -> Term:
        if n == 1:
            atoms = self.atoms(depth)
            return atoms[int(rng.integers(len(atoms)))]
        weights = []
        for kind, i in self.splits(n):
            if kind == 'abs':
                weights.append(self.count(n - 1, depth + 1))
            else:
                weights.append(self.count(i, depth) * self.count(self.rest(kind, n, i), depth))
        total = sum(weights)
        r = int(rng.integers(total)) if total < 2 ** 62 else int(rng.random() * total)
        for (kind, i), w in zip(self.splits(n), weights):
            if r < w:
                break
            r -= w
        if kind == 'abs':
            return Abs(self.binder(depth), self.sample(n - 1, depth + 1, rng, value_bias))
        first = self.sample(i, depth, rng, value_bias)
        m = self.rest(kind, n, i)
        second = self.sample(m, depth, rng, value_bias)
        if kind == 'app' and value_bias and rng.random() < value_bias:
            for _ in range(20):
                if is_value(second):
                    break
                second = self.sample(m, depth, rng, value_bias)
        return self.build(kind, first, second)


def grammar(spec: CorpusSpec) -> _Grammar:
    return _Grammar(tuple(spec.free_vars), tuple(spec.constants), spec.choice, spec.full_oplus)


def count(spec: CorpusSpec, size: Optional[int] = None) -> int:
    """Number of terms of exactly ``size``, or of all sizes within the corpus size range."""
    g = grammar(spec)
    if size is not None:
        return g.count(size)
    return sum(g.count(n) for n in range(spec.min_size, spec.max_size + 1))


def enumerate_terms(spec: Union[CorpusSpec, Dict]) -> Iterator[Term]:
    """Terms of the corpus in a deterministic order: by size, then by production, then ``extra``.

    Random mode draws ``spec.count`` terms with sizes uniform over the range and terms uniform
    within a size, from a PCG64 stream seeded with ``spec.seed``.
    """
    spec = CorpusSpec.parse(spec)
    g = grammar(spec)
    if spec.mode == 'exhaustive':
        for n in range(spec.min_size, spec.max_size + 1):
            if n == spec.max_size:
                yield from g.generate(n)
            else:
                yield from g.terms(n)
    else:
        rng = np.random.Generator(np.random.PCG64(spec.seed))
        sizes = [n for n in range(spec.min_size, spec.max_size + 1) if g.count(n)]
        for _ in range(spec.count if sizes else 0):
            n = sizes[int(rng.integers(len(sizes)))]
            yield g.sample(n, 0, rng, spec.value_bias)
    for text in spec.extra:
        yield parse(text, spec.constants)


def substitution_pool(spec: CorpusSpec) -> Tuple[Term, ...]:
    """Substituends: the configured pool, or the free variables plus the identity."""
    if spec.pool:
        return tuple(parse(p, spec.constants) for p in spec.pool)
    return tuple(Var(v) for v in spec.free_vars) + (Abs('z', Var('z')),)


def substitution_triples(spec: Union[CorpusSpec, Dict], terms: Optional[Iterable[Term]] = None
                         ) -> Iterator[Tuple[Term, str, Term]]:
    spec = CorpusSpec.parse(spec)
    pool = substitution_pool(spec)
    for t in (enumerate_terms(spec) if terms is None else terms):
        for x in spec.free_vars:
            for q in pool:
                yield t, x, q


def redex_coverage(terms: Iterable[Term], rules: Iterable[Union[str, RootRule]]) -> Dict[str, int]:
    """How many corpus terms contain at least one redex of each rule."""
    rules = [get_rule(r) for r in rules]
    counter = Counter({r.name: 0 for r in rules})
    for t in terms:
        subterms = [sub for _, sub, _ in contexts(t)]
        for r in rules:
            if any(r.contract(sub) for sub in subterms):
                counter[r.name] += 1
    return dict(counter)


def dump(path: str, terms: Iterable[Term]):
    tmp = f'{path}.tmp'
    with open(tmp, 'w') as f:
        for t in terms:
            f.write(show(t) + '\n')
    os.replace(tmp, path)


def load(path: str, constants: Iterable[str] = ()) -> List[Term]:
    with open(path) as f:
        terms = [parse(line, constants) for line in f if line.strip() and not line.startswith('#')]
    logging.info(f'Loaded {len(terms)} terms from {path}')
    return terms
