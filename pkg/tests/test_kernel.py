from collections import deque

import pytest

from factorlab.engine import Calculus, enumerate_steps, replay
from factorlab.gen.corpus import CorpusSpec, enumerate_terms
from factorlab.kernel.ars import Bounds, calculus_view, finite_view
from factorlab.kernel.modular import ESTABLISHED, Component, head_test, leftweak_test, modular_test
from factorlab.kernel.oracle import Outcome, bounded_sequences, factorization_oracle, reorder_sequence, replay_chain
from factorlab.kernel.search import Segment, find_path, shape
from factorlab.kernel.swaps import SwapKind, check_star_swap, check_strong_postponement, check_swap
from factorlab.report import FAIL, PASS, UNKNOWN, Report
from factorlab.syntax import parse, show
from factorlab.terms import alpha_eq

# 0 -i-> 1 -e-> 2 closes as 0 -e-> 3 -i-> 2
SQUARE = dict(essential_edges=[(1, 2), (0, 3)], inessential_edges=[(0, 1), (3, 2)])
# 0 -i-> 1 -e-> 2 and nothing else
BROKEN = dict(essential_edges=[(1, 2)], inessential_edges=[(0, 1)])


def test_bounds():
    assert Bounds().replace(budget=10, seq_depth=None).budget == 10
    with pytest.raises(AssertionError):
        Bounds(path_bound=0)
    with pytest.raises(AssertionError):
        Bounds(unknown_tolerance=2.0)


def test_segments():
    with pytest.raises(AssertionError):
        Segment('e', lambda s: (), 2, 1)
    view = finite_view(**SQUARE)
    segments = [Segment('e', view.essential), Segment('i', view.inessential, 0, 1)]
    assert shape(segments) == 'e*·i^0..1'
    path, res = find_path(0, 2, segments, view.key)
    assert [(lbl, s.source, s.target) for lbl, s in path] == [('e', 0, 3), ('i', 3, 2)]
    assert res.explored > 0
    path, res = find_path(0, 1, [Segment('e', view.essential, 1, 1)], view.key)
    assert path is None and res.closed


def test_bounded_sequences():
    view = finite_view(**SQUARE)
    found = bounded_sequences(view, 0, 2)
    assert set(found) == {1, 2, 3}
    # shortest, enumeration-ordered sequence first
    assert [(s.source, s.target) for s in found[2]] == [(0, 3), (3, 2)]


def test_oracle_finite():
    verdicts = factorization_oracle(finite_view(**SQUARE), 0, seq_depth=3)
    assert {v.target: v.outcome for v in verdicts} == {1: Outcome.HOLDS, 2: Outcome.HOLDS, 3: Outcome.HOLDS}
    verdicts = factorization_oracle(finite_view(**BROKEN), 0, seq_depth=3)
    assert {v.target: v.outcome for v in verdicts} == {1: Outcome.HOLDS, 2: Outcome.REFUTED}
    assert factorization_oracle(finite_view(**BROKEN), 2) == []


def test_oracle_budget_gives_unknown():
    verdicts = factorization_oracle(finite_view(**SQUARE), 0, seq_depth=3, budget=1)
    assert verdicts and all(v.outcome is Outcome.UNKNOWN for v in verdicts)


def test_oracle_budget_is_monotone():
    # a larger budget only settles verdicts that were unknown
    beta_y = Calculus('beta-Y', ['beta', 'Y'], 'head', constants=['Y'])
    beta_eta = Calculus('beta-eta', ['beta', 'eta'], 'head')
    for cal, spec in ((beta_y, CorpusSpec(max_size=4, constants=['Y'])),
                      (beta_eta, CorpusSpec(max_size=3, extra=['\\x. p ((\\y. y) x)']))):
        view = calculus_view(cal)
        for t in enumerate_terms(spec):
            small = factorization_oracle(view, t, seq_depth=2, budget=20)
            large = factorization_oracle(view, t, seq_depth=2, budget=2000)
            assert [v.target for v in small] == [v.target for v in large]
            for a, b in zip(small, large):
                if a.outcome is not Outcome.UNKNOWN:
                    assert b.outcome is a.outcome, show(t)


def test_strong_postponement_finite():
    assert check_strong_postponement(finite_view(**SQUARE), [0]).outcome == PASS
    report = check_strong_postponement(finite_view(**BROKEN), [0])
    assert report.outcome == FAIL and report.failed == 1
    assert report.failures[0]['peak'][0]['rule'] == 'i'


def test_reorder_finite():
    view = finite_view(**SQUARE)
    chain = [view.inessential(0)[0], view.essential(1)[0]]
    v = reorder_sequence(view, chain)
    assert v.holds
    assert v.labels == ('e', 'i')
    assert [(s.source, s.target) for s in v.witness] == [(0, 3), (3, 2)]
    assert replay_chain(view, v.witness)
    with pytest.raises(ValueError):
        reorder_sequence(view, [chain[1], chain[0]])
    broken = finite_view(**BROKEN)
    chain = [broken.inessential(0)[0], broken.essential(1)[0]]
    assert reorder_sequence(broken, chain).outcome is Outcome.UNKNOWN
    empty = reorder_sequence(view, [])
    assert empty.holds and empty.witness == () and empty.labels == ()


def test_oracle_witnesses_replay(beta_head):
    view = calculus_view(beta_head)
    for t in enumerate_terms(CorpusSpec(max_size=6)):
        for v in factorization_oracle(view, t, seq_depth=2):
            assert v.outcome is Outcome.HOLDS, (show(t), v.to_dict())
            assert replay(beta_head, v.witness)
            assert alpha_eq(v.witness[-1].target, v.target)
            assert v.labels == tuple(sorted(v.labels))


def test_head_factorization_example(beta_head):
    t = parse('(\\x. x x x) ((\\z. z) z)')
    s1 = enumerate_steps(beta_head, t, 'head', negate=True)[0]
    s2 = enumerate_steps(beta_head, s1.target, 'head')[0]
    v = reorder_sequence(calculus_view(beta_head), [s1, s2])
    assert v.holds and v.labels == ('e', 'e', 'i', 'i')
    assert alpha_eq(v.witness[-1].target, parse('z z z'))


def test_beta_eta_refutation():
    view = calculus_view(Calculus('beta-eta', ['beta', 'eta'], 'head'))
    t = parse('\\x. (\\y. y) (\\y. y) ((\\y. y) x)')
    verdicts = factorization_oracle(view, t, seq_depth=2)
    refuted = [v for v in verdicts if v.outcome is Outcome.REFUTED]
    assert [show(v.target) for v in refuted] == ['(λy.y) (λy.y)']
    assert all(v.outcome is not Outcome.UNKNOWN for v in verdicts)


def test_root_swap_beta_eta_fails():
    b = calculus_view(Calculus('beta', ['beta'], 'head'))
    g = calculus_view(Calculus('eta', ['eta'], 'head'))
    report = check_swap(SwapKind.ROOT_LINEAR_SWAP, b, g, [parse('\\x. p ((\\y. y) x)')])
    assert report.failed == 1
    assert report.failures[0]['peak'][1]['rule'] == 'eta'


def test_linear_swap_beta_oplus():
    constants = ['oplus']
    b = calculus_view(Calculus('beta', ['beta'], 'head', constants=constants))
    g = calculus_view(Calculus('oplus', ['oplus'], 'head', constants=constants))
    # a head choice next to a non-head beta-redex needs size 8, so the peaks come from hand-picked terms
    corpus = [parse(t, constants) for t in ('oplus ((\\x. x) p) q', 'oplus p ((\\x. x x) (\\y. y))',
                                             '\\z. oplus ((\\x. x) z) q', 'oplus ((\\x. x) p) q ((\\y. y) q)')]
    report = check_swap(SwapKind.LINEAR_SWAP, b, g, corpus, path_bound=4, tail=1)
    assert report.peaks > 0 and report.outcome == PASS
    report = check_swap(SwapKind.ROOT_LINEAR_SWAP, b, g, corpus, path_bound=4, tail=1)
    assert report.peaks > 0 and report.outcome == PASS


def test_star_swap():
    constants = ['oplus']
    b = calculus_view(Calculus('beta', ['beta'], 'head', constants=constants))
    g = calculus_view(Calculus('oplus', ['oplus'], 'head', constants=constants))
    corpus = [parse('oplus ((\\x. x) p) ((\\y. y) q)', constants), parse('oplus ((\\x. x x) (\\y. y)) q', constants)]
    report = check_star_swap(b.inessential, g.root_steps, b.steps, corpus, b.key, depth=2)
    assert report.peaks >= 4
    assert report.outcome == PASS


def _closure(step_fn, key, t):
    seen = {key(t): t}
    todo = deque([t])
    while todo:
        for s in step_fn(todo.popleft()):
            k = key(s.target)
            if k not in seen:
                seen[k] = s.target
                todo.append(s.target)
    return seen


def test_oracle_matches_naive_closure():
    # sigma rules terminate, so every essential-then-inessential closure is finite
    cal = Calculus('sigma', ['sigma1', 'sigma3'], 'left')
    view = calculus_view(cal)
    spec = CorpusSpec(max_size=7, min_size=5, mode='random', seed=7, count=200)
    for t in enumerate_terms(spec):
        reachable = set()
        for u in _closure(view.essential, view.key, t).values():
            reachable |= set(_closure(view.inessential, view.key, u))
        for v in factorization_oracle(view, t, seq_depth=3):
            assert v.holds == (view.key(v.target) in reachable)
            assert v.outcome is not Outcome.UNKNOWN


def test_modular_verdict():
    ok = Report(check='root-swap', peaks=1, closed=1)
    bad = Report(check='root-swap', peaks=1, failed=1, failures=[dict(peak=[])])
    verdict = modular_test([Component('beta', assumed=True), Component('oplus', evidence=ok)], [ok])
    assert verdict.established and verdict.conclusion == ESTABLISHED
    verdict = modular_test([Component('beta', assumed=True), Component('eta')], [bad])
    assert not verdict.established
    assert verdict.missing == ['no factorization evidence for eta', 'root-swap: fail']
    assert verdict.counterexample == dict(check='root-swap', peak=[])
    verdict = modular_test([Component('beta', assumed=True)], [Report(check='self-swap')])
    assert not verdict.established and verdict.missing == ['self-swap: no peaks checked']


def test_swap_without_peaks_is_unknown(beta_head):
    view = calculus_view(beta_head)
    report = check_swap(SwapKind.LINEAR_SWAP, view, view, [parse('p q')])
    assert report.peaks == 0 and report.vacuous
    assert report.outcome == UNKNOWN and report.to_dict()['vacuous']
    assert Report(check='shape-preservation').outcome == PASS


def test_head_test_oplus(small_bounds):
    corpus = CorpusSpec(max_size=5, constants=['oplus'], pool=['p', 'q', '\\z. z', 'oplus p q'],
                        extra=['oplus ((\\x. x) p) q', '(\\x. x x) (oplus p q)', 'oplus (oplus p q) q'])
    suite = head_test('oplus', corpus, small_bounds, self_tail=1, root_tail=1, lifted=True)
    assert set(suite.parts) == {'factorization', 'self-swap', 'root-swap', 'substitutivity', 'lifted-swap',
                                'reverse-swap'}
    assert {k: r.outcome for k, r in suite.parts.items()} == {k: PASS for k in suite.parts}
    assert all(r.peaks > 0 for r in suite.parts.values())
    assert suite.conclusion == ESTABLISHED


def test_head_test_eta(small_bounds):
    # eta alone already fails: λx.p (λy.x y) reaches p only through a non-head step first
    suite = head_test('eta', CorpusSpec(max_size=7), small_bounds.replace(seq_depth=Bounds().seq_depth))
    assert suite.parts['factorization'].outcome == FAIL
    assert suite.parts['root-swap'].outcome == FAIL
    assert suite.parts['substitutivity'].outcome == PASS
    assert suite.conclusion.startswith('not established')
    assert 'factorization of eta: fail' in suite.conclusion
    view = calculus_view(Calculus('eta', ['eta'], 'head'))
    refuted = [v for v in factorization_oracle(view, parse('\\x. p (\\y. x y)'))
               if v.outcome is Outcome.REFUTED]
    assert [show(v.target) for v in refuted] == ['p']


def test_head_test_y(small_bounds):
    corpus = CorpusSpec(max_size=4, constants=['Y'], extra=['Y ((\\y. y) p)', 'Y (Y p)'])
    suite = head_test('Y', corpus, small_bounds, oracle_budget=2000)
    assert suite.parts['factorization'].failed == 0
    for part in ('self-swap', 'root-swap', 'substitutivity'):
        assert suite.parts[part].peaks > 0 and suite.parts[part].outcome == PASS, part


def test_weak_test_z(small_bounds):
    corpus = CorpusSpec(max_size=4, constants=['Z'], pool=['p', 'q', 'Z', '\\z. z'],
                        extra=['Z (\\y. (\\z. z) y)', 'Z (\\y. Z y)'])
    suite = leftweak_test('Z', 'weak', corpus, small_bounds, oracle_budget=2000)
    assert suite.parts['factorization'].failed == 0
    for part in ('self-swap', 'root-swap', 'substitutivity'):
        assert suite.parts[part].peaks > 0 and suite.parts[part].outcome == PASS, part


@pytest.mark.parametrize('essential', ['left', 'weak'])
def test_sigma_tests(small_bounds, essential):
    corpus = CorpusSpec(max_size=4, pool=['p', 'q', '\\z. z', '\\z. p'],
                        extra=['(\\x. (\\y. y) x) p q', '(\\x. (\\y. y) p q) p q'])
    suite = leftweak_test(['sigma1', 'sigma3'], essential, corpus, small_bounds, self_tail=1, root_tail=1,
                          close_root=True)
    assert suite.check == f'{essential}-test'
    assert all(r.peaks > 0 for r in suite.parts.values())
    assert {k: r.outcome for k, r in suite.parts.items()} == {k: PASS for k in suite.parts}
    assert suite.conclusion == ESTABLISHED
