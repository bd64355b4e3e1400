import pytest

from splinterlab import covers
from splinterlab.errors import IdentityFailure
from splinterlab.frobmod import GradedRFModule, NoneWithinBound, graded_min_p_poly
from splinterlab.gfcore import PPolynomial, find_irreducible, gf
from splinterlab.polyring import Grading, parse_poly
from splinterlab.projcoh import cone_local_coh_table, hyp_coh, pn_coh

BIG = gf(2, find_irreducible(2, 8))


def plane(text, p=2):
    return parse_poly(gf(p), Grading.standard(3), text, ["x", "y", "z"])


def pipeline(h):
    ctx = h.ctx
    setup = covers.CechSetup(ctx, 3, h)
    grp = hyp_coh(2, h, 1, 0)
    m = covers.cocycle_lift(setup, grp, [1])
    mod = GradedRFModule(cone_local_coh_table(h, (-1, 0)))
    g = graded_min_p_poly(mod, [1], 0, 2)
    gm = {pr: setup.apply_g(g, f) for pr, f in m.items()}
    n = covers.solve_coboundary(setup, gm, 0)
    tower = covers.build_cover_tower(setup, m, g, n)
    return setup, m, g, n, tower


def _eval(fn, pt):
    """Value of a degree-0 chart function at a point with all coordinates nonzero."""
    num = 0
    for mono, c in fn.num:
        term = BIG.embed(c)
        for x, e in zip(pt, mono):
            term = BIG.mul(term, BIG.pow(x, e))
        num = BIG.add(num, term)
    den = 1
    for j in fn.charts:
        den = BIG.mul(den, BIG.pow(pt[j], fn.N))
    return BIG.mul(num, BIG.inv(den))


def _g(g, x):
    out = BIG.pow(x, 2**g.height)
    for i, a in enumerate(g.lower_coeffs):
        out = BIG.add(out, BIG.mul(BIG.embed(a), BIG.pow(x, 2**i)))
    return out


def _curve_points(h, limit=40):
    pts = []
    for x in range(1, BIG.q):
        for y in range(1, BIG.q):
            pt = (x, y, 1)
            val = 0
            for mono, c in h.terms.items():
                term = BIG.embed(c)
                for v, e in zip(pt, mono):
                    term = BIG.mul(term, BIG.pow(v, e))
                val = BIG.add(val, term)
            if val == 0:
                pts.append(pt)
                if len(pts) >= limit:
                    return pts
    return pts


@pytest.mark.parametrize("text", ["y^2*z+y*z^2+x^3", "y^2*z+x*y*z+x^3+z^3"])
def test_witness_holds_pointwise(text):
    h = plane(text)
    setup, m, g, n, tower = pipeline(h)
    w = covers.verify_class_killed(tower)
    assert isinstance(w, covers.CoboundaryWitness) and w.verified
    assert tower.root_field.p == 2
    if tower.root_field.e > 1:
        # witness coefficients must live in the prime field for this embedding-free check
        assert all(c < 2 for b in w.b.values() for f in b.values() for _, c in f.num)
    checked = 0
    for pt in _curve_points(h):
        m01, m02, m12 = (_eval(m[pr], pt) for pr in [(0, 1), (0, 2), (1, 2)])
        n0, n1, n2 = (_eval(n[j], pt) for j in range(3))
        # g(m) = d(n) pointwise
        assert _g(g, m01) == BIG.sub(n1, n0)
        assert _g(g, m12) == BIG.sub(n2, n1)
        roots = [T for T in BIG.elements() if _g(g, T) == n0]
        if not roots:
            continue
        T0 = roots[0]
        Ts = [T0, BIG.add(T0, m01), BIG.add(T0, m02)]
        assert _g(g, Ts[1]) == n1 and _g(g, Ts[2]) == n2

        def b_at(j):
            out = 0
            for (l,), coeff in w.b[j].items():
                out = BIG.add(out, BIG.mul(_eval(coeff, pt), BIG.pow(Ts[j], l)))
            return out

        for (a, b), mab in [((0, 1), m01), ((0, 2), m02), ((1, 2), m12)]:
            assert BIG.sub(b_at(b), b_at(a)) == mab
        checked += 1
    assert checked >= 5


def test_supersingular_tower_shape():
    setup, m, g, n, tower = pipeline(plane("y^2*z+y*z^2+x^3"))
    assert g.describe() == "X^2"
    assert len(tower.steps) == 3
    assert all(v for k, v in tower.checks.items() if k.startswith("g_kills"))
    assert any(k.startswith("g_kills") for k in tower.checks)
    assert covers.cochain_is_zero(covers.d1(setup, m))


def test_ordinary_uses_artin_schreier_step():
    setup, m, g, n, tower = pipeline(plane("y^2*z+x*y*z+x^3+z^3"))
    assert g.lower_coeffs == (1,)
    assert len(tower.roots) == 2


def test_presentations_deterministic():
    a = pipeline(plane("y^2*z+y*z^2+x^3"))[-1].presentation()
    b = pipeline(plane("y^2*z+y*z^2+x^3"))[-1].presentation()
    assert a == b


def test_zero_class():
    h = plane("y^2*z+y*z^2+x^3")
    setup = covers.CechSetup(h.ctx, 3, h)
    m = covers.cocycle_lift(setup, hyp_coh(2, h, 1, 0), [0])
    assert covers.cochain_is_zero(m)
    g = PPolynomial.frobenius_power(h.ctx, 1)
    tower = covers.build_cover_tower(setup, m, g, {j: setup.zero() for j in setup.charts})
    assert tower.steps == []
    w = covers.verify_class_killed(tower)
    assert w.verified and all(not b for b in w.b.values())


def test_identity_precondition_checked():
    setup, m, g, n, _ = pipeline(plane("y^2*z+y*z^2+x^3"))
    with pytest.raises(IdentityFailure):
        covers.build_cover_tower(setup, m, g, {j: setup.zero() for j in setup.charts})


def test_punctured_plane_cocycle_and_no_annihilator():
    ctx = gf(2)
    setup = covers.CechSetup(ctx, 2, None)
    m = covers.cocycle_lift(setup, pn_coh(1, 1, -2), [1])
    assert m[(0, 1)] == setup.from_laurent((0, 1), {(-1, -1): 1})
    mod = GradedRFModule(cone_local_coh_table(None, (-2, -2), ctx=ctx, nvars=2))
    assert isinstance(graded_min_p_poly(mod, [1], -2, 4), NoneWithinBound)
