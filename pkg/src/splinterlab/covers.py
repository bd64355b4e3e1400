"""Killing a cohomology class by adjoining roots of a monic additive polynomial.

Chart functions live in (S/h)[1/x_J] and are stored as a normal-form numerator over
(prod_{j in J} x_j)^N.  A 1-cochain is a map from chart pairs (j, k), j < k, to chart
functions; Cech differentials follow (d n)_jk = n_k - n_j and
(d m)_jkl = m_kl - m_jl + m_jk.

Pipeline: lift a class to a cocycle m, solve g(m) = d(n) for a 0-cochain n, adjoin T_j
with g(T_j) = n_j on each chart, check the corrected cochain m - (T_k - T_j) is killed
by g and is constant on the chosen component, then solve linearly for b with d(b) = m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from . import linalg
from .errors import DegreeMismatch, IdentityFailure, StabilizationFailure, UnsupportedDimension
from .gfcore import FieldCtx, PPolynomial, splitting_field_of
from .polyring import GradedPoly, Grading, monomials_of_degree
from .projcoh import CohGroup, _hyp

Exps = tuple[int, ...]
Pair = tuple[int, int]


@dataclass(frozen=True)
class ChartFn:
    charts: tuple[int, ...]
    N: int
    deg: int
    num: tuple[tuple[Exps, int], ...]

    def is_zero(self) -> bool:
        return not self.num

    def to_dict(self) -> dict:
        return {"charts": list(self.charts), "N": self.N, "deg": self.deg, "num": [list(m) + [c] for m, c in self.num]}


class CechSetup:
    """Standard affine charts D(x_j) on V(h) (or on the punctured affine space if h is None)."""

    def __init__(self, ctx: FieldCtx, nvars: int, h: Optional[GradedPoly] = None, n_max: int = 8):
        if nvars not in (2, 3):
            raise UnsupportedDimension("covers support 2 or 3 variables")
        if h is not None:
            if h.grading.nvars != nvars:
                raise UnsupportedDimension("h does not live in the ambient ring")
            if nvars != 3:
                raise UnsupportedDimension("hypersurface setups are plane curves")
            if h.ctx != ctx:
                # same codes when ctx extends the prime field of h
                if not h.ctx.is_prime or h.ctx.p != ctx.p:
                    raise UnsupportedDimension("cannot move h into this field")
                h = GradedPoly(ctx, h.grading, dict(h.terms))
            for j in range(nvars):
                if all(m[j] > 0 for m in h.terms):
                    raise UnsupportedDimension(f"x_{j} divides h; chart localisations would lose information")
        self.ctx = ctx
        self.nvars = nvars
        self.h = h
        self.hd = _hyp(h) if h is not None else None
        self.charts = list(range(nvars))
        self.n_max = n_max
        self.grading = Grading.standard(nvars)

    def over(self, ctx: FieldCtx) -> "CechSetup":
        return CechSetup(ctx, self.nvars, self.h, self.n_max)

    def describe(self) -> dict:
        return {
            "nvars": self.nvars,
            "p": self.ctx.p,
            "field_degree": self.ctx.e,
            "h": self.h.to_dict() if self.h is not None else None,
            "charts": [f"D(x{j})" for j in self.charts],
        }

    # normal forms
    def _nf_terms(self, terms: dict[Exps, int]) -> dict[Exps, int]:
        if self.hd is None:
            return {m: c for m, c in terms.items() if c}
        ctx = self.ctx
        out: dict[Exps, int] = {}
        for m, c in terms.items():
            if not c:
                continue
            for mu, v in self.hd.nf(m).items():
                val = ctx.add(out.get(mu, 0), ctx.mul(c, v))
                if val:
                    out[mu] = val
                else:
                    out.pop(mu, None)
        return out

    def nf_basis(self, deg: int) -> list[Exps]:
        if deg < 0:
            return []
        monos = monomials_of_degree(deg, self.grading)
        if self.hd is None:
            return monos
        return [m for m in monos if m[self.hd.var] < self.hd.d]

    # chart functions
    def fn(self, charts: Sequence[int], N: int, deg: int, num: dict[Exps, int]) -> ChartFn:
        charts = tuple(sorted(set(charts)))
        reduced = self._nf_terms(num)
        return ChartFn(charts, N, deg, tuple(sorted(reduced.items())))

    def const(self, c: int, deg: int = 0) -> ChartFn:
        if deg != 0:
            raise DegreeMismatch("constants have degree 0")
        return self.fn((), 0, 0, {(0,) * self.nvars: c})

    def zero(self, deg: int = 0) -> ChartFn:
        return ChartFn((), 0, deg, ())

    def from_laurent(self, charts: Sequence[int], terms: dict[Exps, int]) -> ChartFn:
        """Chart function from a Laurent polynomial whose negative exponents sit on ``charts``."""
        charts = tuple(sorted(set(charts)))
        if not terms:
            return self.zero()
        degs = {sum(m) for m in terms}
        if len(degs) != 1:
            raise DegreeMismatch("Laurent cochain component not homogeneous")
        deg = degs.pop()
        for m in terms:
            if any(m[i] < 0 for i in range(self.nvars) if i not in charts):
                raise DegreeMismatch("negative exponent outside the inverted variables")
        N = max([0] + [-m[i] for m in terms for i in charts])
        num = {}
        for m, c in terms.items():
            mm = tuple(a + (N if i in charts else 0) for i, a in enumerate(m))
            num[mm] = c
        return self.fn(charts, N, deg, num)

    def lift(self, f: ChartFn, charts: Sequence[int], N: int) -> ChartFn:
        charts = tuple(sorted(set(charts)))
        if not set(f.charts) <= set(charts) or N < f.N:
            raise ValueError("can only lift to more charts and larger denominators")
        if f.is_zero():
            return ChartFn(charts, N, f.deg, ())
        shift = [0] * self.nvars
        for j in charts:
            shift[j] = N - f.N if j in f.charts else N
        num = {tuple(a + b for a, b in zip(m, shift)): c for m, c in f.num}
        return self.fn(charts, N, f.deg, num)

    def _common(self, f: ChartFn, g: ChartFn) -> tuple[ChartFn, ChartFn]:
        charts = tuple(sorted(set(f.charts) | set(g.charts)))
        N = max(f.N, g.N)
        return self.lift(f, charts, N), self.lift(g, charts, N)

    def add(self, f: ChartFn, g: ChartFn) -> ChartFn:
        if f.is_zero() and not g.is_zero():
            f = ChartFn(f.charts, f.N, g.deg, ())
        if g.is_zero() and not f.is_zero():
            g = ChartFn(g.charts, g.N, f.deg, ())
        if f.deg != g.deg:
            raise DegreeMismatch(f"adding chart functions of degrees {f.deg} and {g.deg}")
        a, b = self._common(f, g)
        ctx = self.ctx
        out = dict(a.num)
        for m, c in b.num:
            v = ctx.add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ChartFn(a.charts, a.N, a.deg, tuple(sorted(out.items())))

    def neg(self, f: ChartFn) -> ChartFn:
        ctx = self.ctx
        return ChartFn(f.charts, f.N, f.deg, tuple((m, ctx.neg(c)) for m, c in f.num))

    def sub(self, f: ChartFn, g: ChartFn) -> ChartFn:
        return self.add(f, self.neg(g))

    def scale(self, c: int, f: ChartFn) -> ChartFn:
        if not c:
            return ChartFn(f.charts, f.N, f.deg, ())
        ctx = self.ctx
        return ChartFn(f.charts, f.N, f.deg, tuple((m, ctx.mul(c, v)) for m, v in f.num))

    def mul(self, f: ChartFn, g: ChartFn) -> ChartFn:
        if f.is_zero() or g.is_zero():
            charts = tuple(sorted(set(f.charts) | set(g.charts)))
            return ChartFn(charts, max(f.N, g.N), f.deg + g.deg, ())
        a, b = self._common(f, g)
        ctx = self.ctx
        out: dict[Exps, int] = {}
        for m1, c1 in a.num:
            for m2, c2 in b.num:
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = ctx.add(out.get(m, 0), ctx.mul(c1, c2))
        return self.fn(a.charts, 2 * a.N, f.deg + g.deg, out)

    def power(self, f: ChartFn, k: int) -> ChartFn:
        result = self.const(1)
        base = f
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def frob(self, f: ChartFn) -> ChartFn:
        return self.power(f, self.ctx.p)

    def equal(self, f: ChartFn, g: ChartFn) -> bool:
        if f.is_zero() or g.is_zero():
            return f.is_zero() and g.is_zero()
        return self.sub(f, g).is_zero()

    def apply_g(self, g: PPolynomial, f: ChartFn) -> ChartFn:
        if f.deg != 0 and any(g.lower_coeffs):
            raise DegreeMismatch("additive polynomials with lower terms act only on degree-0 functions")
        return g.act(f, self.frob, self.add, self.scale)


Cochain = dict  # pair -> ChartFn (degree 1) or chart -> ChartFn (degree 0)


def pairs(setup: CechSetup) -> list[Pair]:
    return list(combinations(setup.charts, 2))


def d0(setup: CechSetup, n: dict[int, ChartFn]) -> dict[Pair, ChartFn]:
    return {(j, k): setup.sub(n[k], n[j]) for j, k in pairs(setup)}


def d1(setup: CechSetup, m: dict[Pair, ChartFn]) -> dict[tuple[int, int, int], ChartFn]:
    out = {}
    for j, k, l in combinations(setup.charts, 3):
        out[(j, k, l)] = setup.add(setup.sub(m[(k, l)], m[(j, l)]), m[(j, k)])
    return out


def cochain_is_zero(c: dict) -> bool:
    return all(f.is_zero() for f in c.values())


def cochain_to_dict(c: dict) -> list:
    return [[list(key), f.to_dict()] for key, f in sorted(c.items())]


def cocycle_lift(setup: CechSetup, group: CohGroup, coords: Sequence[int]) -> dict[Pair, ChartFn]:
    """Chart-wise cocycle representing the class with ``coords`` in ``group``."""
    ctx = setup.ctx
    if len(coords) != group.dim:
        raise ValueError("coordinates do not match the group")
    t = group.t
    if setup.h is None:
        if setup.nvars != 2 or group.h is not None or group.i != 1 or group.n != 1:
            raise UnsupportedDimension("punctured-plane setups lift classes of H^1(P^1, O(t))")
        terms = {m: c for m, c in zip(group.basis, coords) if c}
        m = {(0, 1): setup.from_laurent((0, 1), terms) if terms else setup.zero(t)}
    else:
        if group.h is None or group.n != 2 or group.i != 1:
            raise UnsupportedDimension("plane-curve setups lift classes of H^1(X, O_X(t))")
        W: dict[Exps, int] = {}
        for k, c in enumerate(coords):
            if c:
                for mono, v in group.connecting_image(k).items():
                    W[mono] = ctx.add(W.get(mono, 0), ctx.mul(c, v))
        hW = setup.h * GradedPoly(ctx, setup.grading, W)
        pieces: dict[Pair, dict[Exps, int]] = {pr: {} for pr in pairs(setup)}
        for gamma, c in hW.terms.items():
            k = next((i for i in range(3) if gamma[i] >= 0), None)
            if k is None:
                raise IdentityFailure("h times the connecting image is not a coboundary; class not in the kernel")
            pr = tuple(i for i in range(3) if i != k)
            pieces[pr][gamma] = c if k % 2 == 0 else ctx.neg(c)
        m = {pr: (setup.from_laurent(pr, terms) if terms else setup.zero(t)) for pr, terms in pieces.items()}
    if not cochain_is_zero(d1(setup, m)):
        raise IdentityFailure("lifted cochain is not a cocycle")
    return m


def solve_coboundary(setup: CechSetup, target: dict[Pair, ChartFn], deg: int) -> dict[int, ChartFn]:
    """0-cochain n with d(n) = target, searching denominators x_j^N for N = 0..n_max."""
    for N in range(setup.n_max + 1):
        unknowns: list[tuple[int, Exps]] = [(j, mu) for j in setup.charts for mu in setup.nf_basis(deg + N)]
        effects = []
        for j, mu in unknowns:
            f = setup.fn((j,), N, deg, {mu: 1})
            eff = {}
            for a, b in pairs(setup):
                if j == b:
                    eff[(a, b)] = f
                elif j == a:
                    eff[(a, b)] = setup.neg(f)
            effects.append(eff)
        sol = _solve_linear(setup, effects, target)
        if sol is not None:
            n = {}
            for j in setup.charts:
                num = {mu: c for (jj, mu), c in zip(unknowns, sol) if jj == j and c}
                n[j] = setup.fn((j,), N, deg, num) if num else setup.zero(deg)
            if not all(setup.equal(d0(setup, n)[pr], target[pr]) for pr in pairs(setup)):
                raise IdentityFailure("coboundary solve returned an inconsistent cochain")
            return n
    raise StabilizationFailure(f"no bounding cochain with denominators up to x_j^{setup.n_max}")


def _solve_linear(setup: CechSetup, effects: list[dict], rhs: dict) -> Optional[list[int]]:
    """Solve sum_u c_u effects[u] = rhs, slot by slot, over normal-form coordinates."""
    slots = sorted(set(rhs) | {s for e in effects for s in e})
    rows: list[list[int]] = []
    b: list[int] = []
    ncols = len(effects)
    for slot in slots:
        fns = [e.get(slot) for e in effects] + [rhs.get(slot)]
        present = [f for f in fns if f is not None]
        charts = tuple(sorted(set().union(*[set(f.charts) for f in present])))
        N = max(f.N for f in present)
        lifted = [self_lift(setup, f, charts, N) for f in fns]
        monos = sorted({m for f in lifted if f is not None for m, _ in f.num})
        index = {m: r for r, m in enumerate(monos)}
        block = [[0] * ncols for _ in monos]
        rb = [0] * len(monos)
        for c, f in enumerate(lifted[:-1]):
            if f is not None:
                for m, v in f.num:
                    block[index[m]][c] = v
        if lifted[-1] is not None:
            for m, v in lifted[-1].num:
                rb[index[m]] = v
        rows += block
        b += rb
    if not rows:
        return [0] * ncols
    return linalg.solve(setup.ctx, rows, b, ncols)


def self_lift(setup: CechSetup, f: Optional[ChartFn], charts, N) -> Optional[ChartFn]:
    if f is None:
        return None
    return setup.lift(f, charts, N)


# ---------------------------------------------------------------------------
# polynomials in adjoined roots, coefficients chart functions


TPoly = dict  # exponent tuple in the adjoined variables -> ChartFn


def _tp_add(setup: CechSetup, a: TPoly, b: TPoly) -> TPoly:
    out = dict(a)
    for k, v in b.items():
        out[k] = setup.add(out[k], v) if k in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _tp_scale(setup: CechSetup, c: int, a: TPoly) -> TPoly:
    return {k: setup.scale(c, v) for k, v in a.items() if c}


def _tp_mul(setup: CechSetup, a: TPoly, b: TPoly) -> TPoly:
    out: TPoly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            prod = setup.mul(va, vb)
            out[k] = setup.add(out[k], prod) if k in out else prod
    return {k: v for k, v in out.items() if not v.is_zero()}


def _tp_pow(setup: CechSetup, a: TPoly, k: int, nv: int) -> TPoly:
    result: TPoly = {(0,) * nv: setup.const(1)}
    base = a
    while k:
        if k & 1:
            result = _tp_mul(setup, result, base)
        k >>= 1
        if k:
            base = _tp_mul(setup, base, base)
    return result


def _tp_eval_g(setup: CechSetup, g: PPolynomial, a: TPoly, nv: int) -> TPoly:
    """g(a) expanded as an ordinary polynomial (no additivity shortcut)."""
    p = setup.ctx.p
    out = _tp_pow(setup, a, p**g.height, nv)
    for i, c in enumerate(g.lower_coeffs):
        if c:
            out = _tp_add(setup, out, _tp_scale(setup, c, _tp_pow(setup, a, p**i, nv)))
    return out


def _tp_reduce(setup: CechSetup, a: TPoly, var: int, g: PPolynomial, rhs: ChartFn) -> TPoly:
    """Reduce modulo g(T_var) - rhs (monic of degree q in T_var)."""
    p = setup.ctx.p
    q = p**g.height
    a = dict(a)
    while True:
        high = [k for k in a if k[var] >= q]
        if not high:
            return a
        k = max(high, key=lambda e: e[var])
        c = a.pop(k)
        base = list(k)
        base[var] -= q
        # T^q = rhs - sum_i a_i T^(p^i)
        repl: TPoly = {tuple(base): setup.mul(c, rhs)}
        for i, ai in enumerate(g.lower_coeffs):
            if ai:
                kk = list(base)
                kk[var] += p**i
                repl = _tp_add(setup, repl, {tuple(kk): setup.scale(setup.ctx.neg(ai), c)})
        a = _tp_add(setup, a, repl)


def _tp_is_zero(a: TPoly) -> bool:
    return all(v.is_zero() for v in a.values())


@dataclass
class AdjunctionStep:
    chart: int
    relation: str
    n_j: ChartFn


@dataclass
class CoverTower:
    setup: CechSetup
    cocycle: dict[Pair, ChartFn]
    g: PPolynomial
    n: dict[int, ChartFn]
    steps: list[AdjunctionStep]
    root_field: FieldCtx
    roots: list[int]
    checks: dict[str, bool] = field(default_factory=dict)

    def presentation(self) -> dict:
        return {
            "setup": self.setup.describe(),
            "g": self.g.to_dict(),
            "cocycle": cochain_to_dict(self.cocycle),
            "bounding_cochain": [[j, f.to_dict()] for j, f in sorted(self.n.items())],
            "steps": [{"chart": s.chart, "relation": s.relation} for s in self.steps],
            "root_field": {"p": self.root_field.p, "e": self.root_field.e,
                           "modulus": list(self.root_field.modulus or ())},
            "roots": list(self.roots),
            "checks": dict(sorted(self.checks.items())),
        }


@dataclass
class CoboundaryWitness:
    b: dict[int, TPoly]
    component_root: int
    verified: bool

    def to_dict(self) -> list:
        return [
            [j, [[list(k), f.to_dict()] for k, f in sorted(tp.items())]]
            for j, tp in sorted(self.b.items())
        ]


@dataclass(frozen=True)
class NotFoundWithinBound:
    reason: str
    n_max: int


def build_cover_tower(setup: CechSetup, m: dict[Pair, ChartFn], g: PPolynomial,
                      n: dict[int, ChartFn]) -> CoverTower:
    """Adjoin T_j with g(T_j) = n_j on every chart; requires g(m) = d(n) exactly."""
    gm = {pr: setup.apply_g(g, f) for pr, f in m.items()}
    dn = d0(setup, n)
    if not all(setup.equal(gm[pr], dn[pr]) for pr in pairs(setup)):
        raise IdentityFailure("g(m) != d(n) on some overlap")
    if cochain_is_zero(m) and all(f.is_zero() for f in n.values()):
        return CoverTower(setup, m, g, n, [], setup.ctx, [0], {"empty": True})
    root_ctx, _, roots = splitting_field_of(g)
    steps = [AdjunctionStep(j, f"g(T{j}) - n{j}", n[j]) for j in setup.charts]
    tower = CoverTower(setup, m, g, n, steps, root_ctx, sorted(roots))
    _check_corrected_cochain(tower)
    return tower


def _check_corrected_cochain(tower: CoverTower) -> None:
    """g(m_jk - (T_k - T_j)) = 0 in O(U_jk)[T_j, T_k]/(g(T_j) - n_j, g(T_k) - n_k)."""
    setup, g, m, n = tower.setup, tower.g, tower.cocycle, tower.n
    for j, k in pairs(setup):
        c: TPoly = {(0, 0): m[(j, k)], (0, 1): setup.const(setup.ctx.neg(1)), (1, 0): setup.const(1)}
        c = {key: v for key, v in c.items() if not v.is_zero()}
        gc = _tp_eval_g(setup, g, c, 2)
        gc = _tp_reduce(setup, gc, 0, g, n[j])
        gc = _tp_reduce(setup, gc, 1, g, n[k])
        ok = _tp_is_zero(gc)
        tower.checks[f"g_kills_corrected_{j}{k}"] = ok
        if not ok:
            raise IdentityFailure(f"g does not kill the corrected cochain on U_{j}{k}")


def _component_map_ok(setup: CechSetup, g: PPolynomial, m_jk: ChartFn, n_j: ChartFn, n_k: ChartFn, r: int) -> bool:
    """T_k -> T + m_jk - r respects g(T_k) = n_k modulo g(T) = n_j."""
    shift = setup.sub(m_jk, setup.const(r)) if r else m_jk
    a: TPoly = {(1,): setup.const(1)}
    if not shift.is_zero():
        a[(0,)] = shift
    lhs = _tp_add(setup, _tp_eval_g(setup, g, a, 1), {(0,): setup.neg(n_k)})
    return _tp_is_zero(_tp_reduce(setup, lhs, 0, g, n_j))


def verify_class_killed(tower: CoverTower) -> CoboundaryWitness | NotFoundWithinBound:
    """Solve d(b) = m over the tower (component with constant root 0) and re-verify."""
    setup, g, m, n = tower.setup, tower.g, tower.cocycle, tower.n
    if not tower.steps:
        zero = {j: {} for j in setup.charts}
        return CoboundaryWitness(zero, 0, True)
    ctx = setup.ctx
    root_setup = setup.over(tower.root_field) if tower.root_field != ctx else setup
    for r in tower.roots:
        for j, k in pairs(setup):
            ok = _component_map_ok(root_setup, g_over(g, root_setup.ctx), relift(root_setup, m[(j, k)]),
                                   relift(root_setup, n[j]), relift(root_setup, n[k]), r)
            tower.checks[f"component_root{r}_{j}{k}"] = ok
            if not ok:
                return NotFoundWithinBound(f"root {r} does not give a component over U_{j}{k}", setup.n_max)
    p = ctx.p
    q = p**g.height
    t = next((f.deg for f in m.values() if not f.is_zero()), 0)
    for N in range(setup.n_max + 1):
        unknowns = []
        for j in setup.charts:
            for l in range(q):
                deg = t * (1 - l)
                for mu in setup.nf_basis(deg + N):
                    unknowns.append((j, l, deg, mu))
        effects = []
        for j, l, deg, mu in unknowns:
            f = setup.fn((j,), N, deg, {mu: 1})
            eff = {}
            for a, b in pairs(setup):
                if j == a:
                    # -b_a(T) with T = T_a
                    eff[((a, b), l)] = setup.neg(f)
                elif j == b:
                    # b_b(T + m_ab), reduced modulo g(T) - n_a
                    tp = _tp_pow(setup, _shift_poly(setup, m[(a, b)]), l, 1)
                    tp = _tp_reduce(setup, {k_: setup.mul(f, v) for k_, v in tp.items()}, 0, g, n[a])
                    for (e,), v in tp.items():
                        key = ((a, b), e)
                        eff[key] = setup.add(eff[key], v) if key in eff else v
            effects.append(eff)
        rhs = {((a, b), 0): m[(a, b)] for a, b in pairs(setup)}
        sol = _solve_linear(setup, effects, rhs)
        if sol is None:
            continue
        b: dict[int, TPoly] = {j: {} for j in setup.charts}
        for (j, l, deg, mu), c in zip(unknowns, sol):
            if c:
                term = setup.fn((j,), N, deg, {mu: c})
                b[j][(l,)] = setup.add(b[j][(l,)], term) if (l,) in b[j] else term
        witness = CoboundaryWitness(b, 0, False)
        witness.verified = recheck_witness(tower, witness)
        if not witness.verified:
            raise IdentityFailure("witness failed its re-verification")
        return witness
    return NotFoundWithinBound("no witness with denominators up to the bound", setup.n_max)


def g_over(g: PPolynomial, ctx: FieldCtx) -> PPolynomial:
    return g if g.ctx == ctx else PPolynomial(ctx, g.lower_coeffs)


def relift(setup: CechSetup, f: ChartFn) -> ChartFn:
    return setup.fn(f.charts, f.N, f.deg, dict(f.num))


def _shift_poly(setup: CechSetup, m_ab: ChartFn) -> TPoly:
    a: TPoly = {(1,): setup.const(1)}
    if not m_ab.is_zero():
        a[(0,)] = m_ab
    return a


def recheck_witness(tower: CoverTower, w: CoboundaryWitness) -> bool:
    """Independent pass: b_k(T + m_jk) - b_j(T) - m_jk = 0 modulo g(T) - n_j on every overlap."""
    setup, g, m, n = tower.setup, tower.g, tower.cocycle, tower.n
    for a, b in pairs(setup):
        shifted: TPoly = {}
        sub = _shift_poly(setup, m[(a, b)])
        for (l,), coeff in w.b[b].items():
            term = {k: setup.mul(coeff, v) for k, v in _tp_pow(setup, sub, l, 1).items()}
            shifted = _tp_add(setup, shifted, term)
        diff = _tp_add(setup, shifted, {k: setup.neg(v) for k, v in w.b[a].items()})
        diff = _tp_add(setup, diff, {(0,): setup.neg(m[(a, b)])} if not m[(a, b)].is_zero() else {})
        if not _tp_is_zero(_tp_reduce(setup, diff, 0, g, n[a])):
            return False
    return True


__all__ = [
    "ChartFn",
    "CechSetup",
    "CoverTower",
    "CoboundaryWitness",
    "NotFoundWithinBound",
    "AdjunctionStep",
    "cocycle_lift",
    "solve_coboundary",
    "build_cover_tower",
    "verify_class_killed",
    "recheck_witness",
    "d0",
    "d1",
    "pairs",
    "cochain_is_zero",
    "cochain_to_dict",
]
