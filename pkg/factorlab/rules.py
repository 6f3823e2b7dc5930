""" Root rules.

A root rule maps a term to the (possibly empty) tuple of its root contracta. Rules are registered
by name and looked up from calculus definitions.
"""
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Tuple

from factorlab.terms import (Abs, App, Const, Term, Var, alpha_key, free_vars, fresh, is_value,
                             rename_binder, subst)

OPLUS = 'oplus'
FIX_Y = 'Y'
FIX_Z = 'Z'


@dataclass(frozen=True)
class RootRule:
    name: str
    contract: Callable[[Term], Tuple[Term, ...]]
    doc: str = ''

    def __call__(self, t: Term) -> Tuple[Term, ...]:
        return root_apply(self, t)


RULES: Dict[str, RootRule] = {}


def register(name: str):
    def wrap(fn):
        RULES[name] = RootRule(name, fn, (fn.__doc__ or '').strip())
        return fn
    return wrap


def get_rule(name: str) -> RootRule:
    if isinstance(name, RootRule):
        return name
    try:
        return RULES[name]
    except KeyError:
        raise KeyError(f'Unknown rule {name!r}, expected one of {sorted(RULES)}') from None


def get_rules(names: Iterable[str]) -> Tuple[RootRule, ...]:
    return tuple(sorted((get_rule(n) for n in names), key=lambda r: r.name))


def root_apply(rule: RootRule, t: Term) -> Tuple[Term, ...]:
    """Contracta of ``rule`` at the root of ``t``, alpha-deduplicated in rule order."""
    out, seen = [], set()
    for r in rule.contract(t):
        k = alpha_key(r)
        if k not in seen:
            seen.add(k)
            out.append(r)
    return tuple(out)


@register('beta')
def beta(t: Term):
    """(λx.t)u -> t{x:=u}"""
    if isinstance(t, App) and isinstance(t.fun, Abs):
        return (subst(t.fun.body, t.fun.binder, t.arg),)
    return ()


@register('betav')
def betav(t: Term):
    """(λx.t)v -> t{x:=v} for a value v"""
    if isinstance(t, App) and isinstance(t.fun, Abs) and is_value(t.arg):
        return (subst(t.fun.body, t.fun.binder, t.arg),)
    return ()


def _is_oplus_pair(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fun, App) and t.fun.fun == Const(OPLUS)


@register('oplus')
def oplus(t: Term):
    """oplus p q -> p and oplus p q -> q"""
    if _is_oplus_pair(t):
        return (t.fun.arg, t.arg)
    return ()


@register('sigma1')
def sigma1(t: Term):
    """(λx.t)u s -> (λx.t s)u, x not free in s"""
    if isinstance(t, App) and isinstance(t.fun, App) and isinstance(t.fun.fun, Abs):
        lam, u, s = t.fun.fun, t.fun.arg, t.arg
        if lam.binder in free_vars(s):
            lam = rename_binder(lam, free_vars(s))
        return (App(Abs(lam.binder, App(lam.body, s)), u),)
    return ()


@register('sigma3')
def sigma3(t: Term):
    """v((λx.t)u) -> (λx.v t)u, v a value and x not free in v"""
    if isinstance(t, App) and is_value(t.fun) and isinstance(t.arg, App) and isinstance(t.arg.fun, Abs):
        v, lam, u = t.fun, t.arg.fun, t.arg.arg
        if lam.binder in free_vars(v):
            lam = rename_binder(lam, free_vars(v))
        return (App(Abs(lam.binder, App(v, lam.body)), u),)
    return ()


@register('Y')
def fix_y(t: Term):
    """Y p -> p (Y p)"""
    if isinstance(t, App) and t.fun == Const(FIX_Y):
        return (App(t.arg, t),)
    return ()


@register('Z')
def fix_z(t: Term):
    """Z v -> λx.v (Z v) x, v a value and x fresh"""
    if isinstance(t, App) and t.fun == Const(FIX_Z) and is_value(t.arg):
        x = fresh('x', free_vars(t.arg))
        return (Abs(x, App(App(t.arg, t), Var(x))),)
    return ()


@register('eta')
def eta(t: Term):
    """λx.t x -> t, x not free in t"""
    if isinstance(t, Abs) and isinstance(t.body, App) and t.body.arg == Var(t.binder) \
            and t.binder not in free_vars(t.body.fun):
        return (t.body.fun,)
    return ()
