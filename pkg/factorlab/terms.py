from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import count
from typing import FrozenSet, Hashable, Iterator, Set, Tuple, Union


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Abs:
    binder: str
    body: 'Term'

    def __str__(self):
        from factorlab.syntax import show
        return show(self)


@dataclass(frozen=True)
class App:
    fun: 'Term'
    arg: 'Term'

    def __str__(self):
        from factorlab.syntax import show
        return show(self)


@dataclass(frozen=True)
class Choice:
    """Probabilistic choice ``left (+) right``, kept as term syntax."""
    left: 'Term'
    right: 'Term'

    def __str__(self):
        from factorlab.syntax import show
        return show(self)


Term = Union[Var, Const, Abs, App, Choice]


class Dir(Enum):
    BODY = 'body'
    FUN = 'fun'
    ARG = 'arg'
    LEFT = 'left'
    RIGHT = 'right'


Position = Tuple[Dir, ...]


class ContextClass(Enum):
    HEAD = 'head'
    LEFT = 'left'
    WEAK = 'weak'
    FULL = 'full'

    @classmethod
    def parse(cls, value: Union[str, 'ContextClass']) -> 'ContextClass':
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f'Unknown context class {value!r}, expected one of {[c.value for c in cls]}') from None


def is_value(t: Term) -> bool:
    return isinstance(t, (Var, Const, Abs))


@lru_cache(maxsize=2 ** 16)
def free_vars(t: Term) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.binder}
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, Choice):
        return free_vars(t.left) | free_vars(t.right)
    raise TypeError(f'Not a term: {t!r}')


def size(t: Term) -> int:
    if isinstance(t, (Var, Const)):
        return 1
    if isinstance(t, Abs):
        return 1 + size(t.body)
    if isinstance(t, App):
        return 1 + size(t.fun) + size(t.arg)
    if isinstance(t, Choice):
        return 1 + size(t.left) + size(t.right)
    raise TypeError(f'Not a term: {t!r}')


def _key(t: Term, env: Tuple[str, ...]) -> Hashable:
    if isinstance(t, Var):
        for i in range(len(env) - 1, -1, -1):
            if env[i] == t.name:
                return ('b', len(env) - 1 - i)
        return ('v', t.name)
    if isinstance(t, Const):
        return ('c', t.name)
    if isinstance(t, Abs):
        return ('l', _key(t.body, env + (t.binder,)))
    if isinstance(t, App):
        return ('a', _key(t.fun, env), _key(t.arg, env))
    if isinstance(t, Choice):
        return ('o', _key(t.left, env), _key(t.right, env))
    raise TypeError(f'Not a term: {t!r}')


@lru_cache(maxsize=2 ** 16)
def alpha_key(t: Term) -> Hashable:
    """Canonical hashable key; two terms have equal keys iff they are alpha-equivalent.
    Bound variables are replaced by their binder distance, free variables keep their names.
    """
    return _key(t, ())


def alpha_eq(t: Term, u: Term) -> bool:
    return alpha_key(t) == alpha_key(u)


def fresh(base: str, avoid: Union[Set[str], FrozenSet[str]]) -> str:
    """Deterministic fresh name: strip trailing digits and primes of ``base``, then append 1, 2, ...
    """
    root = base.rstrip("0123456789'") or 'x'
    for i in count(1):
        name = f'{root}{i}'
        if name not in avoid:
            return name


def rename_binder(t: Abs, avoid: Union[Set[str], FrozenSet[str]]) -> Abs:
    """Alpha-rename the binder of ``t`` away from ``avoid``."""
    y = fresh(t.binder, set(avoid) | free_vars(t.body) | {t.binder})
    return Abs(y, subst(t.body, t.binder, Var(y)))


def subst(t: Term, x: str, u: Term) -> Term:
    """Capture-avoiding substitution ``t{x := u}``."""
    if isinstance(t, Var):
        return u if t.name == x else t
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        return App(subst(t.fun, x, u), subst(t.arg, x, u))
    if isinstance(t, Choice):
        return Choice(subst(t.left, x, u), subst(t.right, x, u))
    if isinstance(t, Abs):
        if t.binder == x or x not in free_vars(t.body):
            return t
        if t.binder in free_vars(u):
            t = rename_binder(t, free_vars(u) | {x})
        return Abs(t.binder, subst(t.body, x, u))
    raise TypeError(f'Not a term: {t!r}')


def children(t: Term) -> Tuple[Tuple[Dir, Term], ...]:
    if isinstance(t, Abs):
        return ((Dir.BODY, t.body),)
    if isinstance(t, App):
        return ((Dir.FUN, t.fun), (Dir.ARG, t.arg))
    if isinstance(t, Choice):
        return ((Dir.LEFT, t.left), (Dir.RIGHT, t.right))
    return ()


def _child(t: Term, d: Dir) -> Term:
    if d is Dir.BODY and isinstance(t, Abs):
        return t.body
    if d is Dir.FUN and isinstance(t, App):
        return t.fun
    if d is Dir.ARG and isinstance(t, App):
        return t.arg
    if d is Dir.LEFT and isinstance(t, Choice):
        return t.left
    if d is Dir.RIGHT and isinstance(t, Choice):
        return t.right
    raise ValueError(f'Cannot descend {d.value} into {type(t).__name__}')


def positions(t: Term) -> Iterator[Tuple[Position, Term]]:
    """All positions of ``t`` in pre-order, leftmost-outermost first."""
    for pos, sub, _ in contexts(t):
        yield pos, sub


def resolve(t: Term, pos: Position) -> Term:
    for d in pos:
        t = _child(t, d)
    return t


def replace(t: Term, pos: Position, u: Term) -> Term:
    if not pos:
        return u
    d, rest = pos[0], pos[1:]
    child = replace(_child(t, d), rest, u)
    if d is Dir.BODY:
        return Abs(t.binder, child)
    if d is Dir.FUN:
        return App(child, t.arg)
    if d is Dir.ARG:
        return App(t.fun, child)
    if d is Dir.LEFT:
        return Choice(child, t.right)
    return Choice(t.left, child)


# (head, left, weak, below_app): flags of the context above the current node
_ROOT_FLAGS = (True, True, True, False)


def _descend(flags, node: Term, d: Dir):
    head, left, weak, below_app = flags
    child = _child(node, d)
    if d is Dir.BODY:
        head = head and not below_app
        left = weak = False
    elif d is Dir.FUN:
        below_app = True
    elif d is Dir.ARG:
        head = False
        left = left and is_value(node.fun)
    else:
        head = left = weak = False
    return (head, left, weak, below_app), child


def _classes(flags) -> FrozenSet[ContextClass]:
    head, left, weak, _ = flags
    out = {ContextClass.FULL}
    if head:
        out.add(ContextClass.HEAD)
    if left:
        out.add(ContextClass.LEFT)
    if weak:
        out.add(ContextClass.WEAK)
    return frozenset(out)


def classify(t: Term, pos: Position) -> FrozenSet[ContextClass]:
    """Context classes the hole at ``pos`` belongs to. FULL is always included."""
    flags = _ROOT_FLAGS
    node = t
    for d in pos:
        flags, node = _descend(flags, node, d)
    return _classes(flags)


def contexts(t: Term) -> Iterator[Tuple[Position, Term, FrozenSet[ContextClass]]]:
    """Pre-order walk yielding ``(position, subterm, context classes)``."""
    stack = [((), t, _ROOT_FLAGS)]
    while stack:
        pos, node, flags = stack.pop()
        yield pos, node, _classes(flags)
        for d, _ in reversed(children(node)):
            child_flags, child = _descend(flags, node, d)
            stack.append((pos + (d,), child, child_flags))


def has_choice(t: Term) -> bool:
    return any(isinstance(sub, Choice) for _, sub, _ in contexts(t))


def constants_of(t: Term) -> FrozenSet[str]:
    return frozenset(sub.name for _, sub, _ in contexts(t) if isinstance(sub, Const))


# common fixtures
I = Abs('x', Var('x'))
DELTA = Abs('x', App(Var('x'), Var('x')))
OMEGA = App(DELTA, DELTA)
