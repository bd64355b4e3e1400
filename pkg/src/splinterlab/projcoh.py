"""Line-bundle cohomology on P^n and on hypersurfaces, with explicit bases.

Top cohomology H^n(P^n, O(m)) is stored as an inverse system: a class is a map
alpha -> coefficient on nonnegative exponent vectors with |alpha| = -m - n - 1, where
alpha stands for the Laurent monomial x^(-alpha-1).  Multiplication by x^beta is then
contraction, (x^beta . w)_gamma = w_(gamma+beta), and the p^e-power map sends alpha to
q*alpha + (q-1)*(1,...,1).

For X = V(h) of degree d, the top group H^(n-1)(X, O(t)) is the kernel of
multiplication by h on H^n(P^n, O(t-d)), i.e. the dual of (S/h)_j with j = d - t - n - 1.
Its basis is dual to the normal-form monomials of degree j (exponent of the monic
variable below d), so coordinates of a kernel element are its values at those monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg
from .errors import (
    BudgetExceeded,
    DegenerateMap,
    NonNormalCone,
    UnsupportedDimension,
    WindowError,
)
from .gfcore import FieldCtx
from .polyring import GradedPoly, Grading, monic_leading, monic_variable, monomials_of_degree

Exps = tuple[int, ...]

MAX_N = 3
MAX_TWIST = 64
MAX_HDEG = 6


def _check_twist(t: int) -> None:
    if abs(t) > MAX_TWIST:
        raise BudgetExceeded(f"twist {t} outside |t| <= {MAX_TWIST}")


def _exps(nv: int, k: int) -> list[Exps]:
    return monomials_of_degree(k, Grading.standard(nv)) if k >= 0 else []


def _to_laurent(alpha: Exps) -> Exps:
    return tuple(-a - 1 for a in alpha)


def _from_laurent(m: Exps) -> Exps:
    return tuple(-a - 1 for a in m)


@dataclass
class CohGroup:
    """A cohomology group with an explicit basis.

    For P^n: ``basis`` holds Laurent exponent vectors.  For a hypersurface: entries are
    ("coker", mu) for the image of H^i(P^n, O(t)) and ("ker", mu) for classes whose
    connecting image in H^(i+1)(P^n, O(t-d)) is the dual basis vector of the normal-form
    monomial mu.
    """

    n: int
    h: Optional[GradedPoly]
    i: int
    t: int
    basis: list
    provenance: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def connecting_image(self, k: int) -> dict[Exps, int]:
        """Inverse-system element in H^n(P^n, O(t-d)) representing basis vector k (ker part)."""
        kind, mu = self.basis[k]
        if kind != "ker":
            raise ValueError("only kernel-part classes have a connecting image")
        hd = _hyp(self.h)
        j = sum(mu)
        out = {}
        for alpha in _exps(hd.nv, j):
            c = hd.nf(alpha).get(mu, 0)
            if c:
                out[_to_laurent(alpha)] = c
        return out


@dataclass
class CohClass:
    group: CohGroup
    coords: list[int]

    def __post_init__(self):
        if len(self.coords) != self.group.dim:
            raise ValueError("coordinate length differs from group dimension")

    def is_zero(self) -> bool:
        return not any(self.coords)


def pn_dim(n: int, i: int, t: int) -> int:
    """Closed-form dimension count, used as an oracle for pn_coh."""
    from math import comb

    if i == 0:
        return comb(t + n, n) if t >= 0 else 0
    if i == n:
        k = -t - n - 1
        return comb(k + n, n) if k >= 0 else 0
    return 0


def pn_coh(n: int, i: int, t: int) -> CohGroup:
    if n < 1 or not 0 <= i <= n:
        raise ValueError("need n >= 1 and 0 <= i <= n")
    if i == 0 and t >= 0:
        basis = _exps(n + 1, t)
    elif i == n and -t - n - 1 >= 0:
        basis = [_to_laurent(a) for a in _exps(n + 1, -t - n - 1)]
    else:
        basis = []
    return CohGroup(n, None, i, t, basis, {"space": f"P^{n}"})


class _Hyp:
    """Cached normal-form machinery for one hypersurface equation."""

    def __init__(self, h: GradedPoly):
        if not h.is_homogeneous() or h.is_zero():
            raise ValueError("h must be a nonzero homogeneous form")
        self.ctx: FieldCtx = h.ctx
        self.nv = h.grading.nvars
        self.n = self.nv - 1
        self.d = h.degree()
        if self.n < 1 or self.n > MAX_N:
            raise UnsupportedDimension(f"P^{self.n} outside 1..{MAX_N}")
        if self.d > MAX_HDEG:
            raise UnsupportedDimension(f"deg h = {self.d} exceeds {MAX_HDEG}")
        if h.grading != Grading.standard(self.nv):
            raise UnsupportedDimension("hypersurface cohomology needs the standard grading")
        self.var = monic_variable(h)
        _, lc = monic_leading(h, self.var)
        self.h = h.scale(self.ctx.inv(lc)) if lc != 1 else h
        self.tail = [(m, self.ctx.neg(c)) for m, c in self.h.terms.items() if m[self.var] != self.d]
        self._nf: dict[Exps, dict[Exps, int]] = {}
        self._hpow: dict[int, GradedPoly] = {}
        self._smooth: Optional[int] = None

    def nf(self, nu: Exps) -> dict[Exps, int]:
        """Normal form of x^nu modulo h, as {mu: coeff}."""
        got = self._nf.get(nu)
        if got is not None:
            return got
        v, d, ctx = self.var, self.d, self.ctx
        if nu[v] < d:
            res = {nu: 1}
        else:
            base = list(nu)
            base[v] -= d
            res: dict[Exps, int] = {}
            for m, c in self.tail:
                for mu, cc in self.nf(tuple(a + b for a, b in zip(base, m))).items():
                    val = ctx.add(res.get(mu, 0), ctx.mul(c, cc))
                    if val:
                        res[mu] = val
                    else:
                        res.pop(mu, None)
        self._nf[nu] = res
        return res

    def nf_monos(self, k: int) -> list[Exps]:
        return [m for m in _exps(self.nv, k) if m[self.var] < self.d]

    def hpow(self, k: int) -> GradedPoly:
        if k not in self._hpow:
            self._hpow[k] = self.h**k
        return self._hpow[k]

    def jdeg(self, t: int) -> int:
        return self.d - t - self.n - 1

    def top_basis(self, t: int) -> list[Exps]:
        return self.nf_monos(self.jdeg(t))

    def top_mult(self, k: int, t: int) -> list[list[int]]:
        """Matrix of x_k : ker-part(t) -> ker-part(t+1)."""
        src = self.top_basis(t)
        dst = self.top_basis(t + 1)
        col = {mu: c for c, mu in enumerate(src)}
        mat = linalg.zeros(len(dst), len(src))
        for r, mu2 in enumerate(dst):
            up = list(mu2)
            up[k] += 1
            for mu, c in self.nf(tuple(up)).items():
                mat[r][col[mu]] = c
        return mat

    def top_frob(self, t: int, e: int) -> list[list[int]]:
        """Matrix of c -> h^(q-1) c^[q] from ker-part(t) to ker-part(q t)."""
        ctx = self.ctx
        q = ctx.p**e
        _check_twist(q * t)
        src = self.top_basis(t)
        dst = self.top_basis(q * t)
        col = {mu: c for c, mu in enumerate(src)}
        mat = linalg.zeros(len(dst), len(src))
        if not src or not dst:
            return mat
        hq = list(self.hpow(q - 1).terms.items())
        for r, mu2 in enumerate(dst):
            row = mat[r]
            for beta, hb in hq:
                alpha = []
                for a, b in zip(mu2, beta):
                    s = a + b - (q - 1)
                    if s < 0 or s % q:
                        break
                    alpha.append(s // q)
                else:
                    for mu, c in self.nf(tuple(alpha)).items():
                        row[col[mu]] = ctx.add(row[col[mu]], ctx.mul(hb, ctx.frob(c, e)))
        return mat

    def coker_frob(self, t: int, e: int) -> list[list[int]]:
        q = self.ctx.p**e
        _check_twist(q * t)
        src = self.nf_monos(t)
        dst = self.nf_monos(q * t)
        row_of = {mu: r for r, mu in enumerate(dst)}
        mat = linalg.zeros(len(dst), len(src))
        for c, mu in enumerate(src):
            for mu2, v in self.nf(tuple(q * a for a in mu)).items():
                mat[row_of[mu2]][c] = v
        return mat

    def smoothness_degree(self) -> int:
        """Least D with S_D inside (h, dh/dx_i); raises NonNormalCone if none up to the Macaulay bound."""
        if self._smooth is not None:
            return self._smooth
        ctx, nv = self.ctx, self.nv
        gens = [self.h]
        for i in range(nv):
            terms = {}
            for m, c in self.h.terms.items():
                if m[i]:
                    mm = list(m)
                    mm[i] -= 1
                    terms[tuple(mm)] = ctx.mul(ctx.embed(m[i]), c)
            g = GradedPoly(ctx, self.h.grading, terms)
            if not g.is_zero():
                gens.append(g)
        bound = nv * (self.d - 2) + 1
        for D in range(max(self.d - 1, 0), bound + 1):
            monos = _exps(nv, D)
            index = {m: c for c, m in enumerate(monos)}
            rows = []
            for g in gens:
                gd = g.degree()
                for m in _exps(nv, D - gd):
                    row = [0] * len(monos)
                    for mt, c in g.terms.items():
                        row[index[tuple(a + b for a, b in zip(m, mt))]] = c
                    rows.append(row)
            if rows and linalg.rank(ctx, rows, len(monos)) == len(monos):
                self._smooth = D
                return D
        raise NonNormalCone("the Jacobian ideal does not contain a power of the maximal ideal; singular hypersurface")


_HYP_CACHE: dict = {}


def _hyp(h: GradedPoly) -> _Hyp:
    key = (h.ctx, h.grading, frozenset(h.terms.items()))
    got = _HYP_CACHE.get(key)
    if got is None:
        if len(_HYP_CACHE) > 64:
            _HYP_CACHE.clear()
        got = _HYP_CACHE[key] = _Hyp(h)
    return got


def hyp_coh(n: int, h: GradedPoly, i: int, t: int) -> CohGroup:
    """H^i(X, O(t)) for X = V(h) in P^n, from 0 -> O(t-d) -> O(t) -> O_X(t) -> 0."""
    if n < 1 or n > MAX_N:
        raise UnsupportedDimension(f"P^{n} outside 1..{MAX_N}")
    if h.grading.nvars != n + 1:
        raise UnsupportedDimension(f"h has {h.grading.nvars} variables, P^{n} needs {n + 1}")
    if not 0 <= i <= n - 1:
        raise UnsupportedDimension(f"i = {i} outside 0..{n - 1} for a hypersurface in P^{n}")
    _check_twist(t)
    hd = _hyp(h)
    basis: list = []
    if i == 0 and t >= 0:
        basis += [("coker", mu) for mu in hd.nf_monos(t)]
    if i + 1 == n:
        basis += [("ker", mu) for mu in hd.top_basis(t)]
    d = hd.d
    prov = {
        "sequence": f"0 -> O({t - d}) -> O({t}) -> O_X({t}) -> 0",
        "coker_of": f"H^{i}(P^{n},O({t - d})) -> H^{i}(P^{n},O({t}))",
        "ker_of": f"H^{i + 1}(P^{n},O({t - d})) -> H^{i + 1}(P^{n},O({t}))",
        "source_dim": pn_dim(n, i + 1, t - d) if i + 1 <= n else 0,
        "target_dim": pn_dim(n, i + 1, t) if i + 1 <= n else 0,
        "monic_variable": hd.var,
    }
    return CohGroup(n, h, i, t, basis, prov)


def hyp_dim(n: int, h: GradedPoly, i: int, t: int) -> int:
    if i == n:
        return 0
    return hyp_coh(n, h, i, t).dim


def restriction_euler_sum(n: int, h: GradedPoly, t: int) -> int:
    """sum_i (-1)^i [h^i(P,t-d) - h^i(P,t) + h^i(X,t)]; zero by exactness."""
    d = h.degree()
    total = 0
    for i in range(n + 1):
        total += (-1) ** i * (pn_dim(n, i, t - d) - pn_dim(n, i, t) + hyp_dim(n, h, i, t))
    return total


def hyp_frobenius(n: int, h: GradedPoly, i: int, t: int, e_pow: int) -> list[list[int]]:
    """Semilinear matrix M with F(c) = M c^[q] from hyp_coh(i, t) to hyp_coh(i, q t)."""
    if e_pow < 1:
        raise ValueError("e_pow >= 1")
    src = hyp_coh(n, h, i, t)
    hd = _hyp(h)
    q = hd.ctx.p**e_pow
    _check_twist(q * t)
    dst = hyp_coh(n, h, i, q * t)
    kinds = {k for k, _ in src.basis} | {k for k, _ in dst.basis}
    if len(kinds) > 1:
        raise UnsupportedDimension("Frobenius on groups mixing coker and ker parts (curves in P^1) is not supported")
    if "coker" in kinds:
        return hd.coker_frob(t, e_pow)
    if "ker" in kinds:
        return hd.top_frob(t, e_pow)
    return linalg.zeros(dst.dim, src.dim)


def apply_semilinear(ctx: FieldCtx, mat: list[list[int]], v: Sequence[int], e: int = 1) -> list[int]:
    return linalg.matvec(ctx, mat, [ctx.frob(x, e) for x in v])


# ---------------------------------------------------------------------------
# P^1 pullbacks


def _binary_form_coeffs(f: GradedPoly) -> list[int]:
    """Coefficients of s^m, s^(m-1) t, ..., t^m."""
    m = f.degree()
    return [f.terms.get((m - k, k), 0) for k in range(m + 1)]


def sylvester_resultant_is_zero(f0: GradedPoly, f1: GradedPoly) -> bool:
    a, b = _binary_form_coeffs(f0), _binary_form_coeffs(f1)
    m0, m1 = len(a) - 1, len(b) - 1
    size = m0 + m1
    rows = []
    for k in range(m1):
        rows.append([0] * k + a + [0] * (size - k - len(a)))
    for k in range(m0):
        rows.append([0] * k + b + [0] * (size - k - len(b)))
    return linalg.rank(f0.ctx, rows, size) < size


def _solve_combination(target: GradedPoly, f: GradedPoly, g: GradedPoly) -> tuple[GradedPoly, GradedPoly]:
    """Forms (A, B) with target = A f + B g (binary forms)."""
    ctx, gr = target.ctx, target.grading
    K = target.degree()
    da, db = K - f.degree(), K - g.degree()
    ma, mb = _exps(2, da), _exps(2, db)
    monos = _exps(2, K)
    idx = {m: r for r, m in enumerate(monos)}
    cols = []
    for mon in ma:
        cols.append(f.shift(mon))
    for mon in mb:
        cols.append(g.shift(mon))
    mat = linalg.zeros(len(monos), len(cols))
    for c, poly in enumerate(cols):
        for m, v in poly.terms.items():
            mat[idx[m]][c] = v
    rhs = [target.terms.get(m, 0) for m in monos]
    sol = linalg.solve(ctx, mat, rhs, len(cols))
    if sol is None:
        raise DegenerateMap("pure powers not reached by the pulled-back forms")
    A = GradedPoly(ctx, gr, {m: sol[k] for k, m in enumerate(ma)})
    B = GradedPoly(ctx, gr, {m: sol[len(ma) + k] for k, m in enumerate(mb)})
    return A, B


def p1_pullback_class(forms: tuple[GradedPoly, GradedPoly], a: int, b: int) -> dict[Exps, int]:
    """Pullback of X^-a Y^-b as a Laurent cochain s^u t^v (u, v <= -1)."""
    f0, f1 = forms
    m = f0.degree()
    ctx, gr = f0.ctx, f0.grading
    F0, F1 = f0**a, f1**b
    K = m * (a + b) - 1
    sK = GradedPoly.monomial(ctx, gr, (K, 0))
    tK = GradedPoly.monomial(ctx, gr, (0, K))
    c00, c01 = _solve_combination(sK, F0, F1)
    c10, c11 = _solve_combination(tK, F0, F1)
    det = c00 * c11 - c01 * c10
    out = {}
    for (u, v), c in det.terms.items():
        if u - K <= -1 and v - K <= -1:
            out[(u - K, v - K)] = c
    return out


def p1_pullback(forms: tuple[GradedPoly, GradedPoly], i: int, t: int) -> list[list[int]]:
    """Matrix of pullback H^1(P^1, O(t)) -> H^1(P^1, O(m t)) along s,t -> (f0 : f1)."""
    if i != 1 or t >= 0:
        raise ValueError("only H^1 with negative twist is supported")
    f0, f1 = forms
    if f0.grading.nvars != 2 or f1.grading != f0.grading or f0.ctx != f1.ctx:
        raise ValueError("forms must be binary forms over one field")
    if not (f0.is_homogeneous() and f1.is_homogeneous()) or f0.is_zero() or f1.is_zero():
        raise DegenerateMap("forms must be nonzero homogeneous")
    m = f0.degree()
    if f1.degree() != m or m < 1:
        raise DegenerateMap("forms must share a positive degree")
    _check_twist(m * t)
    if sylvester_resultant_is_zero(f0, f1):
        raise DegenerateMap("forms share a root (resultant vanishes)")
    src = pn_coh(1, 1, t).basis
    dst = pn_coh(1, 1, m * t).basis
    row = {mono: r for r, mono in enumerate(dst)}
    mat = linalg.zeros(len(dst), len(src))
    for c, (ea, eb) in enumerate(src):
        for mono, v in p1_pullback_class(forms, -ea, -eb).items():
            mat[row[mono]][c] = v
    return mat


# ---------------------------------------------------------------------------
# graded local cohomology of cones


class _TopModule:
    """Top local cohomology of S/h (or of S when h is None) with lazy pieces and maps."""

    def __init__(self, ctx: FieldCtx, nvars: int, h: Optional[GradedPoly]):
        self.ctx = ctx
        self.nvars = nvars
        self.h = h
        self.hd = _hyp(h) if h is not None else None
        self.n = nvars - 1
        self._mult: dict = {}
        self._frob: dict = {}

    def basis(self, t: int) -> list[Exps]:
        _check_twist(t)
        if self.hd is None:
            return _exps(self.nvars, -t - self.n - 1)
        return self.hd.top_basis(t)

    def dim(self, t: int) -> int:
        return len(self.basis(t))

    def top_degree(self) -> int:
        """Highest degree with a nonzero piece."""
        return -self.n - 1 if self.hd is None else self.hd.d - self.n - 1

    def mult(self, k: int, t: int) -> list[list[int]]:
        key = (k, t)
        if key not in self._mult:
            if self.hd is not None:
                self._mult[key] = self.hd.top_mult(k, t)
            else:
                src, dst = self.basis(t), self.basis(t + 1)
                row = {a: r for r, a in enumerate(dst)}
                mat = linalg.zeros(len(dst), len(src))
                for c, a in enumerate(src):
                    if a[k] >= 1:
                        down = list(a)
                        down[k] -= 1
                        mat[row[tuple(down)]][c] = 1
                self._mult[key] = mat
        return self._mult[key]

    def frob(self, t: int, e: int = 1) -> list[list[int]]:
        key = (t, e)
        if key not in self._frob:
            q = self.ctx.p**e
            _check_twist(q * t)
            if self.hd is not None:
                self._frob[key] = self.hd.top_frob(t, e)
            else:
                src, dst = self.basis(t), self.basis(q * t)
                row = {a: r for r, a in enumerate(dst)}
                mat = linalg.zeros(len(dst), len(src))
                for c, a in enumerate(src):
                    mat[row[tuple(q * x + q - 1 for x in a)]][c] = 1
                self._frob[key] = mat
        return self._frob[key]

    def apply_frob(self, v: Sequence[int], t: int, e: int = 1) -> list[int]:
        return apply_semilinear(self.ctx, self.frob(t, e), v, e)


@dataclass
class LocalCohTable:
    """Graded pieces H^i_m(R)_t, i >= 2, over a degree window, with maps on the top piece."""

    ctx: FieldCtx
    nvars: int
    h: Optional[GradedPoly]
    window: tuple[int, int]
    top_index: int
    dims: dict[int, dict[int, int]]
    bases: dict[int, list[Exps]]
    mult_maps: dict[tuple[int, int], list[list[int]]]
    frob_maps: dict[int, list[list[int]]]
    engine: _TopModule = field(repr=False)

    def dim(self, t: int) -> int:
        return self.engine.dim(t)


def cone_local_coh_table(h: Optional[GradedPoly], window: tuple[int, int], *, ctx: FieldCtx | None = None,
                         nvars: int | None = None) -> LocalCohTable:
    """Local cohomology table of the cone S/h (h None: the polynomial ring itself)."""
    lo, hi = window
    if lo > hi:
        raise WindowError("empty window")
    _check_twist(lo)
    _check_twist(hi)
    if h is not None:
        ctx, nvars = h.ctx, h.grading.nvars
        hd = _hyp(h)
        if hd.n < 2:
            raise NonNormalCone("cone over points is one-dimensional and not normal")
        hd.smoothness_degree()
        top = hd.n
    else:
        if ctx is None or nvars is None:
            raise ValueError("polynomial-ring table needs ctx and nvars")
        if nvars - 1 > MAX_N or nvars < 2:
            raise UnsupportedDimension("ambient dimension outside desk scale")
        top = nvars
    eng = _TopModule(ctx, nvars, h)
    dims: dict[int, dict[int, int]] = {}
    for i in range(2, top + 1):
        dims[i] = {}
        for t in range(lo, hi + 1):
            if h is None:
                dims[i][t] = pn_dim(nvars - 1, i - 1, t) if i - 1 == nvars - 1 else 0
            else:
                dims[i][t] = hyp_dim(nvars - 1, h, i - 1, t)
    bases = {t: eng.basis(t) for t in range(lo, hi + 1)}
    mult_maps = {(k, t): eng.mult(k, t) for t in range(lo, hi) for k in range(nvars)}
    frob_maps = {}
    for t in range(lo, hi + 1):
        if abs(ctx.p * t) <= MAX_TWIST:
            frob_maps[t] = eng.frob(t, 1)
    return LocalCohTable(ctx, nvars, h, (lo, hi), top, dims, bases, mult_maps, frob_maps, eng)


__all__ = [
    "CohGroup",
    "CohClass",
    "LocalCohTable",
    "pn_coh",
    "pn_dim",
    "hyp_coh",
    "hyp_dim",
    "hyp_frobenius",
    "restriction_euler_sum",
    "p1_pullback",
    "p1_pullback_class",
    "sylvester_resultant_is_zero",
    "cone_local_coh_table",
    "apply_semilinear",
]
