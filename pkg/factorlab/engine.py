""" Rewrite engine: contextual closure of root rules, with steps split by context class.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from factorlab.config import build_module, load_yaml
from factorlab.report import Report
from factorlab.rules import RootRule, get_rules
from factorlab.syntax import show
from factorlab.terms import (Abs, App, Const, ContextClass, Position, Term, alpha_eq, alpha_key, contexts,
                             has_choice, replace, subst)


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    source: Term
    rule: str
    pos: Position
    target: Term
    classes: FrozenSet[ContextClass] = frozenset()
    index: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return dict(
            source=show(self.source),
            rule=self.rule,
            pos=[d.value for d in self.pos],
            target=show(self.target),
        )

    def __str__(self):
        where = '.'.join(d.value for d in self.pos) or 'root'
        return f'{show(self.source)}  -{self.rule}@{where}->  {show(self.target)}'


@dataclass(frozen=True)
class Calculus:
    """A set of root rules with a designated essential context class.

    ``rules`` accepts rule names or ``RootRule`` objects, ``essential`` a ``ContextClass`` or its name,
    so a calculus can be built straight from a yaml ``class``/``kwargs`` block.
    """
    name: str
    rules: Tuple[RootRule, ...]
    essential: ContextClass = ContextClass.HEAD
    allows_choice: bool = False
    constants: Tuple[str, ...] = ()
    description: str = field(default='', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'rules', get_rules(self.rules))
        object.__setattr__(self, 'essential', ContextClass.parse(self.essential))
        object.__setattr__(self, 'constants', tuple(self.constants))
        if not self.rules:
            raise ValueError(f'Calculus {self.name} has no rules')

    @property
    def rule_names(self) -> Tuple[str, ...]:
        return tuple(r.name for r in self.rules)

    def restrict(self, rules: Iterable[str], name: Optional[str] = None) -> 'Calculus':
        rules = list(rules)
        unknown = set(rules) - set(self.rule_names)
        if unknown:
            raise ValueError(f'Calculus {self.name} has no rules {sorted(unknown)}')
        return Calculus(name or '+'.join(rules), rules, self.essential, self.allows_choice, self.constants)

    def with_essential(self, essential: Union[str, ContextClass]) -> 'Calculus':
        essential = ContextClass.parse(essential)
        if essential is self.essential:
            return self
        return Calculus(f'{self.name}/{essential.value}', self.rules, essential, self.allows_choice,
                        self.constants, self.description)

    @classmethod
    def from_config(cls, config: Union[str, Dict[str, Any]]) -> 'Calculus':
        """Calculus from a yaml file or dict: a ``class``/``kwargs`` block, optionally under a
        ``calculus`` key as in catalog definition files, or the bare keyword arguments.
        """
        cfg = load_yaml(config) if isinstance(config, str) else dict(config)
        cfg = cfg.get('calculus', cfg)
        if 'class' in cfg:
            return build_module(cfg)
        return cls(**cfg)


def check_grammar(cal: Calculus, t: Term):
    if not cal.allows_choice and has_choice(t):
        raise GrammarError(f'Choice is not part of the grammar of {cal.name}: {show(t)}')


def enumerate_steps(cal: Calculus, t: Term, filter: Union[None, str, ContextClass] = None,
                    negate: bool = False) -> List[Step]:
    """All one-step reducts of ``t``.

    Steps are ordered by position (pre-order, leftmost-outermost), then by rule name, then by
    contractum index, and deduplicated per position and rule up to alpha-equivalence.
    With ``filter`` only steps whose position belongs to that context class are kept,
    or only those outside it when ``negate`` is set.
    """
    check_grammar(cal, t)
    if filter is not None:
        filter = ContextClass.parse(filter)
    steps = []
    for pos, sub, classes in contexts(t):
        if filter is not None and (filter in classes) == negate:
            continue
        for rule in cal.rules:
            for i, r in enumerate(rule(sub)):
                steps.append(Step(t, rule.name, pos, replace(t, pos, r), classes, i))
    return steps


def essential_steps(cal: Calculus, t: Term) -> List[Step]:
    return enumerate_steps(cal, t, cal.essential)


def inessential_steps(cal: Calculus, t: Term) -> List[Step]:
    return enumerate_steps(cal, t, cal.essential, negate=True)


def root_steps(cal: Calculus, t: Term) -> List[Step]:
    check_grammar(cal, t)
    return [Step(t, rule.name, (), r, frozenset(ContextClass), i)
            for rule in cal.rules for i, r in enumerate(rule(t))]


def is_normal(cal: Calculus, t: Term) -> bool:
    return not enumerate_steps(cal, t)


def reachable(cal: Calculus, t: Term, budget: int = 10000,
              filter: Union[None, str, ContextClass] = None, negate: bool = False) -> Tuple[Dict[Any, Term], bool]:
    """Breadth-first reachable set as ``{alpha_key: term}``; the flag tells whether it is complete."""
    seen = {alpha_key(t): t}
    queue = deque([t])
    while queue:
        s = queue.popleft()
        for step in enumerate_steps(cal, s, filter, negate):
            k = alpha_key(step.target)
            if k in seen:
                continue
            if len(seen) >= budget:
                return seen, False
            seen[k] = step.target
            queue.append(step.target)
    return seen, True


def replay(cal: Calculus, chain: Sequence[Step]) -> bool:
    """Check that ``chain`` is a valid reduction sequence of ``cal``: each step is one of the
    enumerated steps of its source and consecutive steps agree up to alpha-equivalence.
    """
    for i, step in enumerate(chain):
        if i and not alpha_eq(chain[i - 1].target, step.source):
            return False
        if not any(s.rule == step.rule and s.pos == step.pos and alpha_eq(s.target, step.target)
                   for s in enumerate_steps(cal, step.source)):
            return False
    return True


def check_substitutive(rule: RootRule, triples: Iterable[Tuple[Term, str, Term]],
                       max_witnesses: int = 10) -> Report:
    """For every triple ``(t, x, q)`` and root contractum ``r`` of ``t``, ``r{x:=q}`` must be a root
    contractum of ``t{x:=q}``. Only triples whose ``t`` is a redex are counted.
    """
    report = Report(check=f'substitutivity/{rule.name}', max_witnesses=max_witnesses)
    for t, x, q in triples:
        contracta = rule(t)
        if not contracta:
            continue
        image = subst(t, x, q)
        image_contracta = {alpha_key(r) for r in rule(image)}
        for r in contracta:
            expected = subst(r, x, q)
            record = dict(term=show(t), var=x, value=show(q), contractum=show(r), expected=show(expected))
            if alpha_key(expected) in image_contracta:
                report.add_closed(record)
            else:
                record['image_contracta'] = [show(u) for u in rule(image)]
                report.add_failure(record)
    logging.debug(f'substitutivity of {rule.name}: {report.summary()}')
    return report


def _spine(t: Term) -> Tuple[Term, int]:
    k = 0
    while isinstance(t, App):
        t, k = t.fun, k + 1
    return t, k


def _shape_violation(cal: Calculus, step: Step) -> Optional[str]:
    s, u = step.source, step.target
    if not isinstance(u, (Abs, App)):
        return 'inessential step to an atom'
    if type(s) is not type(u):
        return f'{type(s).__name__} reduced to {type(u).__name__}'
    if isinstance(s, Abs):
        if s.binder != u.binder:
            return 'binder changed'
    elif not alpha_eq(s.fun, u.fun) and not alpha_eq(s.arg, u.arg):
        return 'step is not confined to one component'
    for rule in cal.rules:
        if rule(u) and not rule(s):
            return f'{rule.name}-redex created'
    head, k = _spine(u)
    if isinstance(head, Const):
        head_s, k_s = _spine(s)
        if head_s != head or k_s != k:
            return f'{head.name}-spine created'
    return None


def check_shape_preservation(cal: Calculus, corpus: Iterable[Term], max_witnesses: int = 10) -> Report:
    """Inessential steps keep the outer shape of their target: they never reach an atom, abstractions and
    applications reduce in exactly one component, and a redex or constant-headed spine at the top of the
    target was already there in the source.
    """
    report = Report(check='shape-preservation', calculus=cal.name, max_witnesses=max_witnesses)
    for t in corpus:
        for step in inessential_steps(cal, t):
            reason = _shape_violation(cal, step)
            if reason is None:
                report.add_closed()
            else:
                report.add_failure(dict(step=step.to_dict(), reason=reason))
    return report
