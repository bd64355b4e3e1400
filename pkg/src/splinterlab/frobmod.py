"""p-semilinear operators on finite-dimensional spaces and graded Frobenius modules.

A SemilinearOp acts by v -> M v^[p].  Orbit spans, minimal monic additive annihilators
and simplicity checks are all exact linear algebra over the coefficient field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg
from .errors import BudgetExceeded, DimensionMismatch, WindowError
from .gfcore import FieldCtx, PPolynomial
from .projcoh import MAX_TWIST, LocalCohTable

DEFAULT_ENUM_BUDGET = 2**20


@dataclass(frozen=True)
class SemilinearOp:
    ctx: FieldCtx
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, ctx: FieldCtx, m: Sequence[Sequence[int]]) -> "SemilinearOp":
        rows = tuple(tuple(r) for r in m)
        if any(len(r) != len(rows) for r in rows):
            raise DimensionMismatch("semilinear operators need a square matrix")
        return cls(ctx, rows)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.dim:
            raise DimensionMismatch("vector length differs from operator dimension")
        ctx = self.ctx
        return linalg.matvec(ctx, [list(r) for r in self.matrix], [ctx.frob(x) for x in v])

    def conjugate(self, q_mat: Sequence[Sequence[int]]) -> "SemilinearOp":
        """Same operator in the basis given by the columns of Q: Q^-1 M Q^[p]."""
        ctx = self.ctx
        qinv = linalg.inverse(ctx, [list(r) for r in q_mat])
        qp = [[ctx.frob(x) for x in r] for r in q_mat]
        m = linalg.matmul(ctx, linalg.matmul(ctx, qinv, [list(r) for r in self.matrix]), qp)
        return SemilinearOp.from_matrix(ctx, m)


def _iterates_until_dependent(ctx: FieldCtx, step, v: list[int], limit: int):
    """Iterates v, F v, ... up to the first one lying in the span of the previous ones.

    Returns (independent iterates, coordinates of the dependent one) or coords None when
    ``limit`` iterates stayed independent.
    """
    its: list[list[int]] = []
    cur = v
    for _ in range(limit + 1):
        coords = linalg.in_span(ctx, its, cur)
        if coords is not None:
            return its, coords
        its.append(cur)
        cur = step(cur)
    return its, None


def orbit_span(F: SemilinearOp, v: Sequence[int]) -> list[list[int]]:
    """Basis (the independent iterates) of span{v, F v, F^2 v, ...}."""
    its, _ = _iterates_until_dependent(F.ctx, F, list(v), F.dim + 1)
    return its


def min_p_poly(F: SemilinearOp, v: Sequence[int]) -> PPolynomial:
    """Monic additive g of least height with g(F)(v) = 0 (height >= 1)."""
    ctx = F.ctx
    v = list(v)
    if not any(v):
        return PPolynomial.frobenius_power(ctx, 1)
    its, coords = _iterates_until_dependent(ctx, F, v, F.dim + 1)
    assert coords is not None
    return PPolynomial(ctx, tuple(ctx.neg(c) for c in coords))


def apply_ppoly(g: PPolynomial, F: SemilinearOp, v: Sequence[int]) -> list[int]:
    ctx = F.ctx
    return g.act(
        list(v),
        F,
        lambda a, b: [ctx.add(x, y) for x, y in zip(a, b)],
        lambda c, a: [ctx.mul(c, x) for x in a],
    )


def _projective_vectors(ctx: FieldCtx, dim: int):
    """Nonzero vectors up to scalars: first nonzero coordinate equal to 1."""
    elems = list(ctx.elements())
    for lead in range(dim):
        for tail in itertools.product(elems, repeat=dim - lead - 1):
            yield [0] * lead + [1] + list(tail)


def brute_force_f_simple(F: SemilinearOp, budget: int = DEFAULT_ENUM_BUDGET) -> bool:
    """True iff every nonzero vector has full orbit span (exhaustive)."""
    ctx = F.ctx
    if ctx.q**F.dim > budget:
        raise BudgetExceeded(f"{ctx.q}^{F.dim} vectors exceed the budget {budget}")
    for v in _projective_vectors(ctx, F.dim):
        if len(orbit_span(F, v)) < F.dim:
            return False
    return True


# ---------------------------------------------------------------------------
# graded modules


@dataclass
class GradedRFModule:
    table: LocalCohTable

    @property
    def ctx(self) -> FieldCtx:
        return self.table.ctx

    @property
    def p(self) -> int:
        return self.table.ctx.p

    def dim(self, t: int) -> int:
        return self.table.engine.dim(t)

    def frob(self, v: Sequence[int], t: int, e: int = 1) -> list[int]:
        return self.table.engine.apply_frob(v, t, e)

    def mult(self, k: int, v: Sequence[int], t: int) -> list[int]:
        return linalg.matvec(self.ctx, self.table.engine.mult(k, t), v)

    def top_degree(self) -> int:
        return self.table.engine.top_degree()


@dataclass(frozen=True)
class NoneWithinBound:
    e_max: int
    degrees: tuple[int, ...]
    reason: str


@dataclass
class DegreeVerdict:
    degree: int
    status: str  # "Certified (window)" | "NotSimple" | "Inconclusive"
    witness: Optional[dict] = None
    detail: str = ""


@dataclass
class SimplicityReport:
    window: tuple[int, int]
    verdicts: dict[int, DegreeVerdict]
    socle: dict[int, list[list[int]]] = field(default_factory=dict)
    max_frobenius_power: dict[int, int] = field(default_factory=dict)

    @property
    def overall(self) -> str:
        kinds = {v.status for v in self.verdicts.values()}
        if "NotSimple" in kinds:
            return "NotSimple"
        if kinds == {CERTIFIED}:
            return CERTIFIED
        return "Inconclusive"


CERTIFIED = "Certified (window)"


def socle(mod: GradedRFModule, t: int) -> list[list[int]]:
    """Basis of {v in M_t : x_k v = 0 for all k}."""
    dim = mod.dim(t)
    if dim == 0:
        return []
    rows: list[list[int]] = []
    if mod.dim(t + 1):
        for k in range(mod.table.nvars):
            rows += mod.table.engine.mult(k, t)
    if not rows:
        return linalg.identity(dim)
    return linalg.nullspace(mod.ctx, rows, dim)


def _push_span(mod: GradedRFModule, basis: list[list[int]], t: int, target: int) -> list[list[int]]:
    """Span of R_(target - t) . span(basis) inside M_target."""
    ctx = mod.ctx
    cur = basis
    for s in range(t, target):
        if not cur:
            return []
        dnext = mod.dim(s + 1)
        if dnext == 0:
            return []
        vecs = []
        for k in range(mod.table.nvars):
            mat = mod.table.engine.mult(k, s)
            vecs += [linalg.matvec(ctx, mat, v) for v in cur]
        cur = linalg.row_basis(ctx, vecs, dnext)
    return cur


def _stable_span_at(mod: GradedRFModule, s: list[int], a: int, target: int):
    """Span at degree ``target`` of sum_e R F^e(s), for s in degree a.

    Returns (basis, exact, e_used): exact is False when Frobenius iterates that could
    still contribute fall outside the twist cap.
    """
    ctx, p = mod.ctx, mod.p
    dim_t = mod.dim(target)
    span: list[list[int]] = []
    seen_at_zero: list[list[int]] = []
    cur, deg, e = s, a, 0
    while True:
        if not any(cur):
            return span, True, e
        if deg <= target:
            span = linalg.row_basis(ctx, span + _push_span(mod, [cur], deg, target), dim_t)
            if len(span) == dim_t:
                return span, True, e
        if deg > 0 and p * deg > target:
            return span, True, e
        if deg == 0:
            # iterates stay in degree 0; once dependent, later ones add nothing
            if linalg.in_span(ctx, seen_at_zero, cur) is not None:
                return span, True, e
            seen_at_zero.append(cur)
        if abs(p * deg) > MAX_TWIST:
            return span, False, e
        cur = mod.frob(cur, deg, 1)
        deg = p * deg
        e += 1


def _enum_socle(ctx: FieldCtx, basis: list[list[int]], budget: int):
    k = len(basis)
    if ctx.q**k > budget:
        raise BudgetExceeded(f"socle of dimension {k} over F_{ctx.q} exceeds the enumeration budget")
    n = len(basis[0]) if basis else 0
    for coeffs in _projective_vectors(ctx, k):
        v = [0] * n
        for c, b in zip(coeffs, basis):
            if c:
                v = [ctx.add(x, ctx.mul(c, y)) for x, y in zip(v, b)]
        yield coeffs, v


def graded_simplicity_report(mod: GradedRFModule, window: tuple[int, int],
                             budget: int = DEFAULT_ENUM_BUDGET) -> SimplicityReport:
    """Per-degree check that every graded Frobenius-stable submodule fills the window pieces.

    Every nonzero graded submodule contains a homogeneous socle element s, and the
    smallest stable submodule containing s is sum_e R F^e(s).  So each window degree is
    Certified when these spans fill the piece for every socle element (enumerated
    exhaustively up to scalars), NotSimple when some span is provably proper, and
    Inconclusive when Frobenius iterates needed for a verdict leave the twist cap.
    """
    lo, hi = window
    tlo, thi = mod.table.window
    if lo > hi or lo < tlo or hi > thi:
        raise WindowError(f"window {window} not inside the table window {mod.table.window}")
    if hi - lo + 1 < 2:
        verdicts = {
            t: DegreeVerdict(t, "Inconclusive", detail="window of width 1 leaves no room to verify generation")
            for t in range(lo, hi + 1)
        }
        return SimplicityReport((lo, hi), verdicts)
    ctx = mod.ctx
    top = mod.top_degree()
    soc = {a: socle(mod, a) for a in range(lo, max(top, lo) + 1)}
    soc = {a: b for a, b in soc.items() if b}
    verdicts: dict[int, DegreeVerdict] = {}
    max_e: dict[int, int] = {}
    for t in range(lo, hi + 1):
        dim_t = mod.dim(t)
        verdict = DegreeVerdict(t, CERTIFIED, detail=f"piece of dimension {dim_t} reached from every socle element")
        for a, basis in sorted(soc.items()):
            for coeffs, s in _enum_socle(ctx, basis, budget):
                span, exact, e_used = _stable_span_at(mod, s, a, t)
                max_e[t] = max(max_e.get(t, 0), e_used)
                if len(span) == dim_t:
                    continue
                if exact:
                    verdict = DegreeVerdict(
                        t,
                        "NotSimple",
                        witness={"degree": a, "vector": s, "span_dim": len(span), "piece_dim": dim_t},
                        detail="stable submodule generated by a socle element misses part of this piece",
                    )
                    break
                verdict = DegreeVerdict(
                    t, "Inconclusive", detail=f"Frobenius iterates of the degree-{a} socle leave |t| <= {MAX_TWIST}"
                )
            if verdict.status == "NotSimple":
                break
        verdicts[t] = verdict
    return SimplicityReport((lo, hi), verdicts, soc, max_e)


def graded_min_p_poly(mod: GradedRFModule, v: Sequence[int], t: int, e_max: int) -> PPolynomial | NoneWithinBound:
    """Monic additive annihilator of a homogeneous class, with scalars acting degreewise.

    F^E(v) can only be cancelled by earlier iterates in the same degree, so for t != 0
    the only possibility is F^E(v) = 0.
    """
    ctx, p = mod.ctx, mod.p
    v = list(v)
    if len(v) != mod.dim(t):
        raise DimensionMismatch("class length differs from the piece dimension")
    if not any(v):
        return PPolynomial.frobenius_power(ctx, 1)
    if abs(p**e_max * t) > MAX_TWIST:
        raise WindowError(f"F^{e_max} of a degree-{t} class lands outside |t| <= {MAX_TWIST}")
    iterates = [(t, v)]
    cur, deg = v, t
    for E in range(1, e_max + 1):
        cur = mod.frob(cur, deg, 1)
        deg = p * deg
        same = [w for (dg, w) in iterates if dg == deg]
        idx = [i for i, (dg, _) in enumerate(iterates) if dg == deg]
        coords = linalg.in_span(ctx, same, cur) if any(cur) else [0] * len(same)
        if coords is not None:
            lower = [0] * E
            for i, c in zip(idx, coords):
                lower[i] = ctx.neg(c)
            return PPolynomial(ctx, tuple(lower))
        iterates.append((deg, cur))
    return NoneWithinBound(e_max, tuple(dg for dg, _ in iterates), "iterates stay nonzero in distinct degrees")


__all__ = [
    "SemilinearOp",
    "GradedRFModule",
    "NoneWithinBound",
    "DegreeVerdict",
    "SimplicityReport",
    "CERTIFIED",
    "orbit_span",
    "min_p_poly",
    "apply_ppoly",
    "brute_force_f_simple",
    "graded_simplicity_report",
    "graded_min_p_poly",
    "socle",
]
