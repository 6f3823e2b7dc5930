""" Text and JSON codecs for terms.

Concrete syntax::

    t ::= x | K | \\x y. t | t t | t (+) t | ( t )

``λ`` may be used instead of ``\\``. Application is left-associative, an abstraction extends as far
right as possible and ``(+)`` binds weakest (right-associative). Names listed in ``constants`` parse
as ``Const`` unless bound by an enclosing abstraction.
"""
import re
from typing import Dict, Iterable, List, Tuple

from factorlab.terms import Abs, App, Choice, Const, Term, Var


class TermSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"""\s*(?:
    (?P<lam>\\|λ)
    |(?P<choice>\(\+\)|⊕)
    |(?P<lpar>\()
    |(?P<rpar>\))
    |(?P<dot>\.)
    |(?P<name>[A-Za-z_][A-Za-z0-9_']*)
    )""", re.VERBOSE)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise TermSyntaxError(f'Unexpected character {text[pos:pos + 1]!r} at offset {pos} in {text!r}')
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(('end', '', len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, constants: Iterable[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.constants = frozenset(constants)
        self.scope: List[str] = []

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str) -> str:
        k, value, offset = self.tokens[self.i]
        if k != kind:
            expected = 'end of input' if kind == 'end' else kind
            raise TermSyntaxError(f'Expected {expected} at offset {offset} in {self.text!r}, got {value!r}')
        self.i += 1
        return value

    def parse(self) -> Term:
        t = self.expr()
        self.take('end')
        return t

    def expr(self) -> Term:
        t = self.body()
        if self.peek() == 'choice':
            self.take('choice')
            t = Choice(t, self.expr())
        return t

    def body(self) -> Term:
        if self.peek() == 'lam':
            return self.lam()
        t = self.atom()
        while self.peek() in ('name', 'lpar'):
            t = App(t, self.atom())
        if self.peek() == 'lam':
            t = App(t, self.lam())
        return t

    def lam(self) -> Term:
        self.take('lam')
        binders = [self.take('name')]
        while self.peek() == 'name':
            binders.append(self.take('name'))
        self.take('dot')
        self.scope.extend(binders)
        t = self.expr()
        del self.scope[-len(binders):]
        for x in reversed(binders):
            t = Abs(x, t)
        return t

    def atom(self) -> Term:
        if self.peek() == 'lpar':
            self.take('lpar')
            t = self.expr()
            self.take('rpar')
            return t
        name = self.take('name')
        if name in self.constants and name not in self.scope:
            return Const(name)
        return Var(name)


def parse(text: str, constants: Iterable[str] = ()) -> Term:
    return _Parser(text, constants).parse()


def show(t: Term) -> str:
    """Canonical text form; ``parse(show(t), constants)`` gives back ``t``."""
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, Abs):
        return f'λ{t.binder}.{show(t.body)}'
    if isinstance(t, App):
        fun = show(t.fun)
        if isinstance(t.fun, (Abs, Choice)):
            fun = f'({fun})'
        arg = show(t.arg)
        if isinstance(t.arg, (Abs, App, Choice)):
            arg = f'({arg})'
        return f'{fun} {arg}'
    if isinstance(t, Choice):
        left = show(t.left)
        if isinstance(t.left, (Abs, Choice)):
            left = f'({left})'
        right = show(t.right)
        if isinstance(t.right, Abs):
            right = f'({right})'
        return f'{left} (+) {right}'
    raise TypeError(f'Not a term: {t!r}')


def to_json(t: Term) -> Dict:
    if isinstance(t, Var):
        return {'var': t.name}
    if isinstance(t, Const):
        return {'const': t.name}
    if isinstance(t, Abs):
        return {'abs': t.binder, 'body': to_json(t.body)}
    if isinstance(t, App):
        return {'app': [to_json(t.fun), to_json(t.arg)]}
    if isinstance(t, Choice):
        return {'choice': [to_json(t.left), to_json(t.right)]}
    raise TypeError(f'Not a term: {t!r}')


def from_json(d: Dict) -> Term:
    if 'var' in d:
        return Var(d['var'])
    if 'const' in d:
        return Const(d['const'])
    if 'abs' in d:
        return Abs(d['abs'], from_json(d['body']))
    if 'app' in d:
        fun, arg = d['app']
        return App(from_json(fun), from_json(arg))
    if 'choice' in d:
        left, right = d['choice']
        return Choice(from_json(left), from_json(right))
    raise TermSyntaxError(f'Not a term encoding: {d!r}')
