import pytest

from factorlab.gen.corpus import CorpusSpec, enumerate_terms
from factorlab.syntax import parse
from factorlab.terms import (DELTA, I, OMEGA, Abs, App, Choice, ContextClass, Dir, Var, alpha_eq, alpha_key,
                             classify, constants_of, contexts, fresh, free_vars, has_choice, is_value, positions,
                             replace, resolve, size, subst)

B, F, A = Dir.BODY, Dir.FUN, Dir.ARG


def test_free_vars_and_size():
    t = parse('\\x. x y (\\y. y z)')
    assert free_vars(t) == {'y', 'z'}
    assert size(t) == 9
    assert size(OMEGA) == 9


def test_alpha_equivalence():
    assert alpha_eq(parse('\\x. \\y. x y'), parse('\\a. \\b. a b'))
    assert not alpha_eq(parse('\\x. \\y. x y'), parse('\\x. \\y. y x'))
    # free names are kept
    assert not alpha_eq(parse('\\x. y'), parse('\\x. z'))
    assert alpha_key(I) == alpha_key(parse('\\z. z'))
    assert alpha_key(parse('\\x. \\x. x')) == alpha_key(parse('\\a. \\b. b'))


def test_fresh():
    assert fresh('x', {'x', 'x1'}) == 'x2'
    assert fresh("y3'", set()) == 'y1'
    assert fresh('', {'x1'}) == 'x2'


def test_subst_avoids_capture():
    t = parse('\\y. x y')
    u = subst(t, 'x', Var('y'))
    assert isinstance(u, Abs) and u.binder != 'y'
    assert alpha_eq(u, parse('\\z. y z'))
    # bound occurrences are left alone
    assert subst(parse('\\x. x'), 'x', Var('q')) == parse('\\x. x')
    assert subst(parse('x (\\x. x)'), 'x', I) == App(I, parse('\\x. x'))


def test_subst_respects_alpha():
    variants = [('\\y. x y', '\\z. x z'), ('\\x. \\y. x y z', '\\a. \\b. a b z'),
                ('(\\y. y x) (\\w. x)', '(\\v. v x) (\\y. x)')]
    for a, b in variants:
        for x in ('x', 'z'):
            for u in (Var('y'), parse('\\y. y z'), parse('x y')):
                assert alpha_eq(subst(parse(a), x, u), subst(parse(b), x, u)), (a, b, x, u)
            assert alpha_eq(subst(parse(a), x, parse('\\y. y')), subst(parse(a), x, parse('\\w. w')))


def test_positions_preorder():
    t = parse('(\\x. x) (y z)')
    assert [p for p, _ in positions(t)] == [(), (F,), (F, B), (A,), (A, F), (A, A)]
    assert resolve(t, (A, F)) == Var('y')
    assert replace(t, (A, F), I) == App(Abs('x', Var('x')), App(I, Var('z')))
    with pytest.raises(ValueError):
        resolve(t, (B,))


def test_head_contexts():
    # λx.(□ t) is head, arguments and positions below a λ under an application are not
    t = parse('\\x. (\\y. y) x ((\\z. z) x)')
    assert ContextClass.HEAD in classify(t, (B, F))
    assert ContextClass.HEAD not in classify(t, (B, A))
    assert ContextClass.HEAD not in classify(t, (B, F, F, B))
    assert ContextClass.WEAK not in classify(t, (B, F))


def test_left_and_weak_contexts():
    t = parse('(\\x. x) (y z) (p q)')
    # the argument of a value is a left context
    assert ContextClass.LEFT in classify(t, (F, A))
    # the argument of a non-value application is not
    assert ContextClass.LEFT not in classify(t, (A,))
    assert ContextClass.WEAK in classify(t, (A,))
    assert classify(t, ()) == frozenset(ContextClass)


def test_contexts_match_classify():
    t = parse('(\\x. x x) ((\\y. y) (z (\\w. w)))')
    for pos, sub, classes in contexts(t):
        assert resolve(t, pos) == sub
        assert classify(t, pos) == classes


def test_classes_shrink_along_a_path():
    for t in enumerate_terms(CorpusSpec(max_size=6)):
        for pos, _, classes in contexts(t):
            for k in range(len(pos)):
                assert classes <= classify(t, pos[:k]), (t, pos)


def test_choice_contexts_are_not_weak():
    t = Choice(App(I, Var('p')), Var('q'))
    assert has_choice(t)
    assert ContextClass.WEAK not in classify(t, (Dir.LEFT,))
    assert ContextClass.FULL in classify(t, (Dir.LEFT,))


def test_values_and_constants():
    assert is_value(I) and is_value(Var('x'))
    assert not is_value(OMEGA)
    assert constants_of(parse('oplus p (\\x. Y x)', ['oplus', 'Y'])) == {'oplus', 'Y'}
    assert alpha_eq(DELTA, parse('\\y. y y'))
