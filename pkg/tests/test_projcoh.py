import random

import pytest
from hypothesis import given, settings, strategies as st

from splinterlab import linalg
from splinterlab.errors import BudgetExceeded, DegenerateMap, NonNormalCone, UnsupportedDimension
from splinterlab.gfcore import gf
from splinterlab.polyring import GradedPoly, Grading, monomials_of_degree, parse_poly
from splinterlab.projcoh import (
    apply_semilinear,
    cone_local_coh_table,
    hyp_coh,
    hyp_dim,
    hyp_frobenius,
    p1_pullback,
    pn_coh,
    restriction_euler_sum,
)

import oracles as O

XYZ = ["x", "y", "z"]


def plane(text, p):
    return parse_poly(gf(p), Grading.standard(3), text, XYZ)


def binary(text, p):
    return parse_poly(gf(p), Grading.standard(2), text, ["s", "t"])


SUPERSINGULAR = plane("y^2*z+y*z^2+x^3", 2)
ORDINARY = plane("y^2*z+x*y*z+x^3+z^3", 2)
QUARTIC = plane("x^4+y^3*z+z^3*x", 2)


def random_form(rng, p, nvars, d):
    """Monic in x_0 of degree d, with a few random further terms."""
    ctx, gr = gf(p), Grading.standard(nvars)
    lead = (d,) + (0,) * (nvars - 1)
    monos = [m for m in monomials_of_degree(d, gr) if m != lead]
    terms = {lead: 1}
    for _ in range(rng.randint(1, 4)):
        terms[rng.choice(monos)] = rng.randrange(1, p)
    return GradedPoly(ctx, gr, terms)


def test_pn_examples():
    assert pn_coh(1, 1, -2).basis == [(-1, -1)]
    assert pn_coh(2, 2, -3).basis == [(-1, -1, -1)]
    assert pn_coh(1, 1, 0).dim == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pn_dims_match_oracle_and_duality(n):
    for t in range(-10, 11):
        for i in range(n + 1):
            d = pn_coh(n, i, t).dim
            assert d == O.pn_dim_oracle(n, i, t)
            assert d == pn_coh(n, n - i, -t - n - 1).dim


def test_pn_top_basis_exponents():
    for mono in pn_coh(2, 2, -6).basis:
        assert all(e <= -1 for e in mono) and sum(mono) == -6


def test_hypersurface_examples():
    assert hyp_coh(2, plane("x^2+y^2+z^2", 5), 1, -1).dim == 1
    assert hyp_coh(2, SUPERSINGULAR, 1, 0).dim == 1
    assert hyp_coh(2, QUARTIC, 1, 1).dim == 1


def test_hypersurface_dimension_caps():
    with pytest.raises(UnsupportedDimension):
        hyp_coh(2, SUPERSINGULAR, 2, 0)
    with pytest.raises(BudgetExceeded):
        hyp_coh(2, SUPERSINGULAR, 1, -65)


def test_hasse_matrices():
    assert hyp_frobenius(2, SUPERSINGULAR, 1, 0, 1) == [[0]]
    assert hyp_frobenius(2, ORDINARY, 1, 0, 1) != [[0]]
    m = hyp_frobenius(2, QUARTIC, 1, 1, 1)
    assert len(m) == 0 and linalg.is_zero(m)


@pytest.mark.parametrize("text,p", [("y^2*z+y*z^2+x^3", 2), ("y^2*z+x*y*z+x^3+z^3", 2),
                                    ("y^2*z+x^3+x*z^2", 3), ("y^2*z+x^3+2*x*z^2+z^3", 5)])
def test_hasse_matches_coefficient_extraction(text, p):
    h = plane(text, p)
    oracle_h = {e: c for e, c in h.terms.items()}
    value = hyp_frobenius(2, h, 1, 0, 1)[0][0]
    assert (value == 0) == (O.hasse_invariant(oracle_h, p) == 0)


def test_p1_pullbacks():
    m = p1_pullback((binary("s^2", 2), binary("t^2", 2)), 1, -2)
    assert len(m) == 3 and linalg.rank(gf(2), m, 1) == 1
    for t in (-2, -3, -5):
        assert p1_pullback((binary("s", 3), binary("t", 3)), 1, t) == linalg.identity(pn_coh(1, 1, t).dim)
    frob = p1_pullback((binary("s^2", 2), binary("t^2", 2)), 1, -2)
    assert linalg.rank(gf(2), frob, 1) == 1
    with pytest.raises(DegenerateMap):
        p1_pullback((binary("s^2", 3), binary("s*t", 3)), 1, -2)


def _compose(f, g):
    """Forms of f o g: substitute g = (g0, g1) into f."""
    out = []
    for fi in f:
        acc = GradedPoly(g[0].ctx, g[0].grading)
        for (a, b), c in fi.terms.items():
            acc = acc + ((g[0] ** a) * (g[1] ** b)).scale(c)
        out.append(acc)
    return tuple(out)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 10**6))
def test_pullback_of_composite(p, seed):
    rng = random.Random(seed)
    ctx, gr = gf(p), Grading.standard(2)

    def rand_map(m):
        while True:
            f0 = GradedPoly.monomial(ctx, gr, (m, 0)) + GradedPoly.monomial(ctx, gr, (0, m), rng.randrange(p))
            f1 = GradedPoly.monomial(ctx, gr, (0, m)) + GradedPoly.monomial(ctx, gr, (1, m - 1), rng.randrange(p))
            if f1.is_zero():
                continue
            if O.resultant_nonzero(dict(f0.terms), dict(f1.terms), p):
                return (f0, f1)

    f, g = rand_map(rng.randint(1, 3)), rand_map(rng.randint(1, 3))
    t = -rng.randint(2, 3)
    mf, mg = f[0].degree(), g[0].degree()
    lhs = p1_pullback(_compose(f, g), 1, t)
    rhs = linalg.matmul(ctx, p1_pullback(g, 1, mf * t), p1_pullback(f, 1, t))
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 4), st.integers(0, 10**6), st.sampled_from([1, 2, 3]))
def test_euler_sums_vanish(p, d, seed, n):
    h = random_form(random.Random(seed), p, n + 1, d)
    for t in range(-10, 11):
        assert restriction_euler_sum(n, h, t) == 0


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 4), st.integers(0, 10**6))
def test_top_dims_match_dense_kernel(p, d, seed):
    h = random_form(random.Random(seed), p, 3, d)
    o = O.HypersurfaceOracle(dict(h.terms), p)
    for t in range(-4, d):
        assert hyp_coh(2, h, 1, t).dim - (len([b for b in hyp_coh(2, h, 1, t).basis if b[0] == "coker"])) == o.dim(t)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(2, 3), st.integers(0, 10**6))
def test_frobenius_rank_matches_dense_oracle(p, d, seed):
    h = random_form(random.Random(seed), p, 3, d)
    o = O.HypersurfaceOracle(dict(h.terms), p)
    for t in range(-3, 0):
        if abs(p * t) > 8:
            continue
        m = hyp_frobenius(2, h, 1, t, 1)
        imgs = [o.frob(v) for v in o.kernel(t)]
        assert linalg.rank(gf(p), m, len(o.kernel(t))) == O.rank_mod_p(o.vectors(imgs, p * t), p)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(2, 3), st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 2))
def test_frobenius_semigroup_law(p, d, seed, e1, e2):
    h = random_form(random.Random(seed), p, 3, d)
    t = -1
    if p ** (e1 + e2) > 64:
        return
    ctx = gf(p)
    whole = hyp_frobenius(2, h, 1, t, e1 + e2)
    first = hyp_frobenius(2, h, 1, t, e1)
    second = hyp_frobenius(2, h, 1, p**e1 * t, e2)
    n = hyp_coh(2, h, 1, t).dim
    for k in range(n):
        v = [int(i == k) for i in range(n)]
        assert apply_semilinear(ctx, whole, v, e1 + e2) == apply_semilinear(
            ctx, second, apply_semilinear(ctx, first, v, e1), e2)


def test_cone_tables():
    q = cone_local_coh_table(plane("x^2+y^2+z^2", 5), (-6, -1))
    assert [q.dims[2][t] for t in range(-1, -7, -1)] == [1, 3, 5, 7, 9, 11]
    e = cone_local_coh_table(SUPERSINGULAR, (0, 0))
    assert e.dims[2][0] == 1
    e2 = cone_local_coh_table(SUPERSINGULAR, (1, 2))
    assert e2.dims[2] == {1: 0, 2: 0}
    for t, mat in q.frob_maps.items():
        assert len(mat) == q.dim(5 * t) and all(len(r) == q.dim(t) for r in mat)
    for (k, t), mat in q.mult_maps.items():
        assert len(mat) == q.dim(t + 1)


def test_non_normal_cone_refused():
    with pytest.raises(NonNormalCone):
        cone_local_coh_table(plane("x^2+y^2+z^2", 2), (-2, -1))
    with pytest.raises(NonNormalCone):
        cone_local_coh_table(binary("s^2+t^2", 3), (-2, -1))
