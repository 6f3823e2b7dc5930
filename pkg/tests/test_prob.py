from fractions import Fraction

import pytest

from factorlab.gen.corpus import CorpusSpec, enumerate_terms
from factorlab.kernel.ars import Bounds
from factorlab.kernel.modular import ESTABLISHED
from factorlab.kernel.oracle import Outcome
from factorlab.prob.calculus import (BETAV_DEEP, BETAV_SURFACE, OPLUS, check_embedding, check_mass_conservation,
                                     check_surface_swap, lift, prob_factorization_oracle, prob_suite,
                                     term_prob_steps)
from factorlab.prob.mdist import MultiDist, mdist_scale, mdist_sum
from factorlab.report import PASS
from factorlab.syntax import parse
from factorlab.terms import Var

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def test_mdist_validation():
    p, q = Var('p'), Var('q')
    assert MultiDist.of((HALF, p), (QUARTER, q)).mass == Fraction(3, 4)
    with pytest.raises(ValueError):
        MultiDist.of((0, p))
    with pytest.raises(ValueError):
        MultiDist.of((Fraction(3, 2), p))
    with pytest.raises(ValueError):
        MultiDist.of((Fraction(3, 4), p), (HALF, q))
    with pytest.raises(ValueError):
        mdist_sum(MultiDist.point(p), MultiDist.of((HALF, q)))


def test_mdist_multiset_key():
    a = MultiDist.parse([(HALF, 'p'), (HALF, '\\x. x')])
    b = MultiDist.parse([(HALF, '\\y. y'), (HALF, 'p')])
    assert a.key() == b.key()
    # entries are not merged
    assert MultiDist.parse([(HALF, 'p'), (HALF, 'p')]).key() != MultiDist.parse([(1, 'p')]).key()
    assert len(MultiDist.parse([(HALF, 'p'), (HALF, 'p')])) == 2


def test_mdist_scale():
    m = MultiDist.parse([(HALF, 'p'), (HALF, 'q')])
    assert mdist_scale(HALF, m).key() == MultiDist.parse([(QUARTER, 'p'), (QUARTER, 'q')]).key()
    assert mdist_scale(1, m).key() == m.key()
    with pytest.raises(ValueError):
        mdist_scale(0, m)
    with pytest.raises(ValueError):
        mdist_scale('3/2', m)


def test_mdist_json():
    m = MultiDist.parse([(HALF, '\\x. x'), (QUARTER, 'p q')])
    assert MultiDist.from_json(m.to_json()).key() == m.key()
    assert m.to_json()['entries'][1]['p'] == '1/4'


@pytest.mark.parametrize('text, kinds', [
    ('(\\x. x) z', [BETAV_SURFACE]),
    ('\\y. (\\x. x) y', [BETAV_DEEP]),
    ('(\\x. x) (p q)', []),
    ('p (a (+) b)', [OPLUS]),
    ('\\y. a (+) b', []),
    ('(a (+) b) ((\\x. x) z)', [OPLUS, BETAV_SURFACE]),
    ('((\\x. x) z) (+) b', [OPLUS, BETAV_DEEP]),
])
def test_term_prob_steps(text, kinds):
    assert [s.kind for s in term_prob_steps(parse(text))] == kinds


def test_choice_step_splits_mass():
    step, = term_prob_steps(parse('p (a (+) b)'))
    assert step.surface
    assert step.target.key() == MultiDist.parse([(HALF, 'p a'), (HALF, 'p b')]).key()


def test_lift():
    m = MultiDist.parse([(HALF, '(\\x. x) z'), (HALF, 'M (+) N')])
    results = lift('surface', m)
    assert len(results) == 3
    assert all(n.mass == 1 for n in results)
    both = MultiDist.parse([(HALF, 'z'), (QUARTER, 'M'), (QUARTER, 'N')])
    assert any(n.key() == both.key() for n in results)
    # betav lifts leave the choice entry alone
    only, = lift('betav', m)
    assert only.key() == MultiDist.parse([(HALF, 'z'), (HALF, 'M (+) N')]).key()
    assert lift('betav-deep', m) == []
    with pytest.raises(ValueError):
        lift('eta', m)


def test_lift_of_point_matches_term_steps():
    t = parse('(\\x. x) ((\\y. y) (\\z. z))')
    lifted = lift('any', MultiDist.point(t))
    assert len(lifted) == len(term_prob_steps(t)) == 1


def test_surface_swap_closes():
    t = parse('(\\y. (\\x. x) y) (p (+) q)')
    report = check_surface_swap([t])
    assert (report.peaks, report.closed, report.failed) == (1, 1, 0)
    closing = report.witnesses[0]['closing']
    assert [s['rule'] for s in closing] == [OPLUS, 'betav']


def test_surface_swap_on_corpus():
    terms = list(enumerate_terms(CorpusSpec(max_size=6, choice=True)))
    report = check_surface_swap(terms)
    assert report.peaks > 0 and report.outcome == PASS


def test_mass_and_embedding():
    terms = list(enumerate_terms(CorpusSpec(max_size=5, choice=True)))
    mass = check_mass_conservation(terms, depth=2)
    assert mass.peaks > 0 and mass.outcome == PASS
    embedding = check_embedding(terms)
    assert 0 < embedding.peaks < len(terms)
    assert embedding.outcome == PASS


def test_prob_oracle():
    m = MultiDist.point(parse('(\\y. (\\x. x) y) (p (+) q)'))
    verdicts = prob_factorization_oracle(m, seq_depth=2)
    assert verdicts
    assert all(v.outcome is Outcome.HOLDS for v in verdicts)


def test_prob_suite():
    bounds = Bounds(path_bound=4, seq_depth=2, budget=20000)
    suite = prob_suite(dict(max_size=4, choice=True), bounds, oracle_size=4)
    assert set(suite.parts) == {'surface-swap', 'mass', 'embedding', 'factorization'}
    assert {k: r.outcome for k, r in suite.parts.items()} == {k: PASS for k in suite.parts}
    assert suite.conclusion == ESTABLISHED
    assert suite.calculus == 'prob-cbv'
