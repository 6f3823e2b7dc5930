""" Replayable worked examples. Each demo returns a ``Transcript`` whose checks must all hold.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from factorlab.engine import Calculus, enumerate_steps, is_normal, reachable, replay
from factorlab.kernel.ars import calculus_view
from factorlab.kernel.oracle import Outcome, factorization_oracle, reorder_sequence
from factorlab.kernel.swaps import check_strong_postponement
from factorlab.prob.calculus import lift
from factorlab.prob.mdist import MultiDist
from factorlab.syntax import parse, show
from factorlab.terms import DELTA, I, App, ContextClass, Var, alpha_eq, alpha_key

LAMBDA_OPLUS = Calculus('lambda-oplus', ['beta', 'oplus'], 'head', constants=['oplus'])
SHUFFLING = Calculus('shuffling', ['betav', 'sigma1', 'sigma3'], 'full')
BETA = Calculus('beta-head', ['beta'], 'head')
BETA_ETA = Calculus('beta-eta', ['beta', 'eta'], 'head')


@dataclass
class Transcript:
    name: str
    lines: List[str] = field(default_factory=list)
    checks: List[Tuple[str, bool]] = field(default_factory=list)

    def say(self, line: str):
        self.lines.append(line)

    def expect(self, what: str, ok: bool):
        self.checks.append((what, bool(ok)))
        self.lines.append(f'[{"ok" if ok else "MISMATCH"}] {what}')

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def to_dict(self) -> Dict:
        return dict(name=self.name, ok=self.ok, lines=self.lines,
                    checks=[dict(what=w, ok=ok) for w, ok in self.checks])


DEMOS: Dict[str, Callable[[], Transcript]] = {}


def demo(name: str):
    def wrap(fn):
        DEMOS[name] = fn
        return fn
    return wrap


def _step_to(cal: Calculus, t, target, rule: str):
    return next(s for s in enumerate_steps(cal, t) if s.rule == rule and alpha_eq(s.target, target))


def _reorder_transcript(tr: Transcript, cal: Calculus, chain, expected_rules, expected_end):
    view = calculus_view(cal)
    tr.say('input:')
    for s in chain:
        tr.say(f'  {s}')
    v = reorder_sequence(view, chain)
    tr.expect('the sequence factorizes', v.outcome is Outcome.HOLDS)
    if v.witness is None:
        return
    tr.say('factorized:')
    for lbl, s in zip(v.labels, v.witness):
        tr.say(f'  {lbl}  {s}')
    tr.expect(f'factorized shape is {" ".join(expected_rules)}',
              [f'{lbl}:{s.rule}' for lbl, s in zip(v.labels, v.witness)] == list(expected_rules))
    tr.expect(f'ends in {show(expected_end)}', alpha_eq(v.witness[-1].target, expected_end))
    tr.expect('witness replays through the step enumeration', replay(cal, v.witness))


@demo('nd-duplication')
def nd_duplication_demo() -> Transcript:
    """Flipping a coin and duplicating the result differs from duplicating the coin."""
    tr = Transcript('nd-duplication')
    cal = LAMBDA_OPLUS.with_essential('full')
    t = parse('(\\x. x x) (oplus p q)', ['oplus'])
    qp = parse('q p')
    tr.say(f't = {show(t)}')
    dup_first, _ = reachable(cal, _step_to(cal, t, parse('(oplus p q) (oplus p q)', ['oplus']), 'beta').target)
    tr.expect('duplicate first reaches q p', alpha_key(qp) in dup_first)
    flips = [s for s in enumerate_steps(cal, t) if s.rule == 'oplus']
    flip_first = {}
    for s in flips:
        flip_first.update(reachable(cal, s.target)[0])
    normal = sorted(show(u) for u in flip_first.values() if is_normal(cal, u))
    tr.say(f'flip first normal forms: {", ".join(normal)}')
    tr.expect('flip first reaches only p p and q q', normal == ['p p', 'q q'])
    tr.expect('flip first never reaches q p', alpha_key(qp) not in flip_first)
    tr.expect('q p and p p are distinct normal forms', is_normal(cal, qp) and is_normal(cal, parse('p p')))
    u = parse('oplus (\\x. x) y z', ['oplus'])
    s1 = _step_to(cal, u, App(I, Var('z')), 'oplus')
    s2 = _step_to(cal, s1.target, Var('z'), 'beta')
    tr.say(f'{s1}\n{s2}')
    tr.expect('a choice step creates a beta-redex', replay(cal, [s1, s2]))
    # (λx.xxx)(oplus p q): all 8 normal forms by unrestricted reduction, 2 head normal forms by head reduction
    w = parse('(\\x. x x x) (oplus p q)', ['oplus'])
    full, _ = reachable(cal, w)
    head, _ = reachable(LAMBDA_OPLUS, w, filter='head')
    n_full = sum(is_normal(cal, v) for v in full.values())
    n_head = sum(not enumerate_steps(LAMBDA_OPLUS, v, 'head') for v in head.values())
    tr.say(f'{show(w)}: {n_full} normal forms, {n_head} head normal forms by head steps')
    tr.expect('8 normal forms and 2 head normal forms', (n_full, n_head) == (8, 2))
    return tr


@demo('sigma-overlap')
def sigma_overlap_demo() -> Transcript:
    """Nested sigma and betav redexes found by step enumeration."""
    tr = Transcript('sigma-overlap')

    def rules_at(t):
        return {(s.pos, s.rule) for s in enumerate_steps(SHUFFLING, t)}

    t = App(App(DELTA, I), DELTA)
    found = rules_at(t)
    tr.say(f'{show(t)}: ' + ', '.join(sorted(f'{r}@{".".join(d.value for d in p) or "root"}' for p, r in found)))
    tr.expect('δIδ is a sigma1-redex', ((), 'sigma1') in found)
    tr.expect('δIδ contains the betav-redex δI', any(r == 'betav' and p for p, r in found))
    u = App(App(DELTA, App(I, DELTA)), App(Var('x'), I))
    found = rules_at(u)
    tr.say(f'{show(u)}: ' + ', '.join(sorted(f'{r}@{".".join(d.value for d in p) or "root"}' for p, r in found)))
    tr.expect('δ(Iδ)(xI) is a sigma1-redex', ((), 'sigma1') in found)
    tr.expect('it contains the sigma3-redex δ(Iδ)', any(r == 'sigma3' and len(p) == 1 for p, r in found))
    tr.expect('which contains the betav-redex Iδ', any(r == 'betav' and len(p) == 2 for p, r in found))
    found = rules_at(App(I, Var('z')))
    tr.expect('I z has a betav step and no sigma step', {r for _, r in found} == {'betav'})
    return tr


@demo('beta-eta-counterexample')
def beta_eta_counterexample() -> Transcript:
    """λx.(II)(Ix) reaches II only through a non-head step followed by a head eta step."""
    tr = Transcript('beta-eta-counterexample')
    t = parse('\\x. (\\z. z) (\\z. z) ((\\z. z) x)')
    ii = App(I, I)
    s1 = _step_to(BETA_ETA, t, parse('\\x. (\\z. z) (\\z. z) x'), 'beta')
    s2 = _step_to(BETA_ETA, s1.target, ii, 'eta')
    tr.say(f'{s1}\n{s2}')
    tr.expect('first step is not a head step', ContextClass.HEAD not in s1.classes)
    tr.expect('second step is a root eta step', s2.pos == ())
    space, closed = reachable(BETA_ETA.with_essential('full'), t)
    tr.say(f'{len(space)} reducts in all')
    tr.expect('the reduction space is finite', closed)
    verdicts = factorization_oracle(calculus_view(BETA_ETA), t, seq_depth=2)
    v = next(v for v in verdicts if alpha_eq(v.target, ii))
    tr.say(f'oracle on {show(ii)}: {v.outcome.value}, {v.transcript}')
    tr.expect('factorization is refuted by exhausting the head-then-non-head space', v.outcome is Outcome.REFUTED)
    return tr


@demo('head-factorize-example')
def head_factorize_example() -> Transcript:
    """(λx.xxx)(Iz): a non-head step then a head step, factorized into two head and two non-head steps."""
    tr = Transcript('head-factorize-example')
    t = parse('(\\x. x x x) ((\\z. z) z)')
    s1 = _step_to(BETA, t, parse('(\\x. x x x) z'), 'beta')
    s2 = _step_to(BETA, s1.target, parse('z z z'), 'beta')
    _reorder_transcript(tr, BETA, [s1, s2], ['e:beta', 'e:beta', 'i:beta', 'i:beta'], parse('z z z'))
    return tr


@demo('oplus-factorize-example')
def oplus_factorize_example() -> Transcript:
    tr = Transcript('oplus-factorize-example')
    t = parse('(\\x. x x x) (oplus p q)', ['oplus'])
    s1 = _step_to(LAMBDA_OPLUS, t, parse('(\\x. x x x) p'), 'oplus')
    s2 = _step_to(LAMBDA_OPLUS, s1.target, parse('p p p'), 'beta')
    _reorder_transcript(tr, LAMBDA_OPLUS, [s1, s2], ['e:beta', 'e:oplus', 'i:oplus', 'i:oplus'], parse('p p p'))
    return tr


@demo('strong-postponement-failure')
def strong_postponement_failure() -> Transcript:
    """Single non-head steps do not postpone one by one after head steps."""
    tr = Transcript('strong-postponement-failure')
    t = parse('(\\x. x x x) ((\\z. z) z)')
    report = check_strong_postponement(calculus_view(BETA), [t])
    for f in report.failures:
        tr.say(' then '.join(f'{s["source"]} -{s["rule"]}-> {s["target"]}' for s in f['peak']))
    tr.expect('the peak does not close as head steps then at most one non-head step', report.failed == 1)
    return tr


@demo('prob-lift')
def prob_lift_demo() -> Transcript:
    """⟦½(λx.x)z, ½(M⊕N)⟧ reduces both entries at once to ⟦½z, ¼M, ¼N⟧."""
    tr = Transcript('prob-lift')
    half = Fraction(1, 2)
    m = MultiDist.parse([(half, '(\\x. x) z'), (half, 'M (+) N')])
    expected = MultiDist.parse([(half, 'z'), (Fraction(1, 4), 'M'), (Fraction(1, 4), 'N')])
    results = lift('surface', m)
    tr.say(f'{m} reduces to:')
    for n in results:
        tr.say(f'  {n}')
    tr.expect(f'{expected} is among the reducts', any(n.key() == expected.key() for n in results))
    tr.expect('every reduct keeps mass 1', all(n.mass == 1 for n in results))
    tr.expect('three reducts: either entry alone or both', len(results) == 3)
    return tr


def run_demo(name: str) -> Transcript:
    if name not in DEMOS:
        raise KeyError(f'Unknown demo {name!r}, expected one of {sorted(DEMOS)}')
    return DEMOS[name]()
