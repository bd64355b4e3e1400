import random

import pytest
from hypothesis import given, settings, strategies as st

from splinterlab.errors import BudgetExceeded, DegreeMismatch, DimensionMismatch, NotMonicInVariable
from splinterlab.gfcore import gf
from splinterlab.polyring import (
    GradedPoly,
    Grading,
    ideal_piece_in_subalgebra,
    membership,
    normal_form_hypersurface,
    parse_poly,
    subalgebra_piece_basis,
    weighted_degree,
)

F2 = gf(2)
def W(*w):
    return Grading(len(w), tuple(w))


G2 = Grading.standard(2)
G3 = Grading.standard(3)


def P(text, ctx=F2, gr=G2, names=("u", "v")):
    return parse_poly(ctx, gr, text, list(names))


HOCHSTER = [P("u^2"), P("v^2"), P("u^3+v^3")]


def test_weighted_degree():
    assert weighted_degree((2, 0, 1), W(1, 1, 1)) == 3
    assert weighted_degree((3, 0), W(2, 3)) == 6
    with pytest.raises(DimensionMismatch):
        weighted_degree((1, 1), W(2,))


def test_subalgebra_pieces():
    assert subalgebra_piece_basis(HOCHSTER, 3).basis == [P("u^3+v^3")]
    assert subalgebra_piece_basis(HOCHSTER, 1).dim == 0
    x = GradedPoly.var(F2, Grading.standard(1), 0)
    assert subalgebra_piece_basis([x], 2).basis == [x * x]


def test_ideal_pieces():
    ideal = HOCHSTER[:2]
    assert ideal_piece_in_subalgebra(ideal, HOCHSTER, 3).dim == 0
    four = ideal_piece_in_subalgebra(ideal, HOCHSTER, 4)
    assert four.dim == 3
    for m in ("u^4", "u^2*v^2", "v^4"):
        assert membership(P(m), four)[0]
    five = ideal_piece_in_subalgebra(ideal, HOCHSTER, 5)
    assert five.dim == 2
    assert membership(P("u^5+u^2*v^3"), five)[0]
    assert membership(P("v^5+u^3*v^2"), five)[0]


def test_hochster_membership_false():
    member, coords = membership(P("u^3+v^3"), ideal_piece_in_subalgebra(HOCHSTER[:2], HOCHSTER, 3))
    assert member is False and coords is None


def test_membership_with_coordinates():
    space = ideal_piece_in_subalgebra(HOCHSTER[:2], HOCHSTER, 4)
    ok, coords = membership(P("u^4"), space)
    assert ok
    rebuilt = GradedPoly(F2, G2)
    for c, b in zip(coords, space.basis):
        rebuilt = rebuilt + b.scale(c)
    assert rebuilt == P("u^4")


def test_family_instance_p3():
    F3 = gf(3)
    gens = [P(s, F3) for s in ("u^3", "v^3", "u^4+v^4")]
    space = ideal_piece_in_subalgebra(gens[:2], gens, 4)
    assert membership(P("u^4+v^4", F3), space)[0] is False


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        membership(P("u^2"), subalgebra_piece_basis(HOCHSTER, 3))


def test_budget():
    with pytest.raises(BudgetExceeded):
        subalgebra_piece_basis([P("u"), P("v")], 40, budget=10)


def test_normal_forms():
    names = ("x", "y", "z")
    h = P("z^2+x^3+y^3", F2, W(2, 2, 3), names)
    f = P("z^4", F2, W(2, 2, 3), names)
    expected = P("x^3+y^3", F2, W(2, 2, 3), names) ** 2
    assert normal_form_hypersurface(f, h, 2) == expected
    x = P("x", F2, W(2, 2, 3), names)
    assert normal_form_hypersurface(x, h, 2) == x
    bad = P("x*z+1", F2, W(1, 1, 1), names)
    with pytest.raises(NotMonicInVariable):
        normal_form_hypersurface(P("z", F2, W(1, 1, 1), names), bad, 2)


def _random_form(rng, ctx, gr, d, nterms):
    from splinterlab.polyring import monomials_of_degree

    monos = monomials_of_degree(d, gr)
    return GradedPoly(ctx, gr, {rng.choice(monos): rng.randrange(1, ctx.p) for _ in range(nterms)})


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_normal_form_idempotent_and_congruent(seed, p):
    rng = random.Random(seed)
    ctx = gf(p)
    h = GradedPoly.monomial(ctx, G3, (3, 0, 0)) + _random_form(rng, ctx, G3, 3, 3)
    if h.var_degree(0) != 3 or h.terms.get((3, 0, 0)) != 1:
        return
    f = _random_form(rng, ctx, G3, rng.randint(0, 7), 4)
    nf = normal_form_hypersurface(f, h, 0)
    assert normal_form_hypersurface(nf, h, 0) == nf
    assert all(e[0] < 3 for e in nf.terms)


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(3)), st.integers(2, 7), st.sampled_from([2, 3]))
def test_piece_dims_independent_of_generator_order(perm, d, p):
    ctx = gf(p)
    gens = [P("u^2", ctx), P("v^2", ctx), P("u^3+v^3", ctx)]
    shuffled = [gens[i] for i in perm]
    assert subalgebra_piece_basis(gens, d).dim == subalgebra_piece_basis(shuffled, d).dim
    a = ideal_piece_in_subalgebra(gens[:2], gens, d)
    b = ideal_piece_in_subalgebra([shuffled[i] for i in range(3) if perm[i] < 2], shuffled, d)
    assert a.dim == b.dim
    for mono in (f"u^{d}", f"v^{d}", f"u^{d}+v^{d}"):
        assert membership(P(mono, ctx), a)[0] == membership(P(mono, ctx), b)[0]


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10**6))
def test_span_coordinates_reconstruct(d, seed):
    rng = random.Random(seed)
    space = subalgebra_piece_basis(HOCHSTER, d)
    if space.dim == 0:
        return
    f = GradedPoly(F2, G2)
    for b in space.basis:
        f = f + b.scale(rng.randrange(2))
    if f.is_zero():
        return
    ok, coords = membership(f, space)
    assert ok
    g = GradedPoly(F2, G2)
    for c, b in zip(coords, space.basis):
        g = g + b.scale(c)
    assert g == f
