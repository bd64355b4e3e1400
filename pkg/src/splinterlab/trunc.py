"""Bounded cochain complexes of finite-dimensional spaces, truncations, and null-homotopies.

Conventions: a complex has spaces K^i for lo <= i <= hi, differential d_i : K^i -> K^(i+1)
stored as a dim(K^(i+1)) x dim(K^i) matrix.  A chain map has one matrix per degree, and a
homotopy h_i : K^i -> L^(i-1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg
from .errors import ShapeMismatch
from .gfcore import FieldCtx

Matrix = list[list[int]]


def _zero(r: int, c: int) -> Matrix:
    return linalg.zeros(r, c)


def _mm(ctx: FieldCtx, a: Matrix, b: Matrix, rows: int, inner: int, cols: int) -> Matrix:
    if rows == 0 or cols == 0 or inner == 0:
        return _zero(rows, cols)
    return linalg.matmul(ctx, a, b, ncols=cols)


def _shape_ok(m: Matrix, rows: int, cols: int) -> bool:
    return len(m) == rows and all(len(r) == cols for r in m)


@dataclass
class CochainComplex:
    ctx: FieldCtx
    lo: int
    dims: dict[int, int]
    diffs: dict[int, Matrix]

    def __post_init__(self):
        for i, m in self.diffs.items():
            if not _shape_ok(m, self.dim(i + 1), self.dim(i)):
                raise ShapeMismatch(f"d_{i} has the wrong shape")
        for i in self.diffs:
            if i + 1 in self.diffs:
                comp = _mm(self.ctx, self.d(i + 1), self.d(i), self.dim(i + 2), self.dim(i + 1), self.dim(i))
                if not linalg.is_zero(comp):
                    raise ShapeMismatch(f"d_{i + 1} d_{i} != 0")

    @classmethod
    def build(cls, ctx: FieldCtx, lo: int, dims: Sequence[int], diffs: Sequence[Matrix]) -> "CochainComplex":
        """Complex with K^(lo + k) of dimension dims[k] and d_(lo + k) = diffs[k]."""
        if len(diffs) != max(len(dims) - 1, 0):
            raise ShapeMismatch("need one differential between consecutive spaces")
        return cls(ctx, lo, {lo + k: d for k, d in enumerate(dims)},
                   {lo + k: [list(r) for r in m] for k, m in enumerate(diffs)})

    @property
    def hi(self) -> int:
        return max(self.dims) if self.dims else self.lo

    def degrees(self) -> range:
        return range(min(self.dims, default=self.lo), max(self.dims, default=self.lo - 1) + 1)

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def d(self, i: int) -> Matrix:
        if i in self.diffs:
            return self.diffs[i]
        return _zero(self.dim(i + 1), self.dim(i))


def _kernel(ctx: FieldCtx, m: Matrix, ncols: int) -> Matrix:
    if ncols == 0:
        return []
    if not m:
        return linalg.identity(ncols)
    return linalg.nullspace(ctx, m, ncols)


def _image(ctx: FieldCtx, m: Matrix, nrows: int, ncols: int) -> Matrix:
    if nrows == 0 or ncols == 0:
        return []
    return linalg.row_basis(ctx, linalg.transpose(m), nrows)


@dataclass
class Cohomology:
    degree: int
    dim: int
    basis: Matrix  # representatives in ker d_i, as vectors
    boundaries: Matrix


def cohomology(K: CochainComplex, i: int) -> Cohomology:
    ctx = K.ctx
    n = K.dim(i)
    Z = _kernel(ctx, K.d(i), n)
    B = _image(ctx, K.d(i - 1), n, K.dim(i - 1))
    basis: Matrix = []
    span = [list(v) for v in B]
    r = len(linalg.row_basis(ctx, span, n)) if span else 0
    for z in Z:
        trial = span + [z]
        r2 = len(linalg.row_basis(ctx, trial, n))
        if r2 > r:
            basis.append(z)
            span, r = trial, r2
    return Cohomology(i, len(basis), basis, B)


def class_coords(K: CochainComplex, i: int, z: Sequence[int]) -> list[int]:
    """Coordinates of the cohomology class of a cocycle z in the basis of cohomology(K, i)."""
    H = cohomology(K, i)
    vecs = H.basis + H.boundaries
    coords = linalg.in_span(K.ctx, vecs, list(z))
    if coords is None:
        raise ShapeMismatch("vector is not a cocycle")
    return coords[: H.dim]


@dataclass
class ChainMap:
    source: CochainComplex
    target: CochainComplex
    mats: dict[int, Matrix]

    def __post_init__(self):
        ctx = self.source.ctx
        if self.target.ctx != ctx:
            raise ShapeMismatch("complexes over different fields")
        degs = set(self.source.degrees()) | set(self.target.degrees())
        for i in degs:
            if not _shape_ok(self.f(i), self.target.dim(i), self.source.dim(i)):
                raise ShapeMismatch(f"f_{i} has the wrong shape")
        for i in degs:
            a = _mm(ctx, self.target.d(i), self.f(i), self.target.dim(i + 1), self.target.dim(i), self.source.dim(i))
            b = _mm(ctx, self.f(i + 1), self.source.d(i), self.target.dim(i + 1), self.source.dim(i + 1),
                    self.source.dim(i))
            if not linalg.is_zero(linalg.mat_sub(ctx, a, b)):
                raise ShapeMismatch(f"chain map does not commute with differentials in degree {i}")

    def f(self, i: int) -> Matrix:
        if i in self.mats:
            return self.mats[i]
        return _zero(self.target.dim(i), self.source.dim(i))

    def compose(self, after: "ChainMap") -> "ChainMap":
        """after o self."""
        if after.source is not self.target and after.source.dims != self.target.dims:
            raise ShapeMismatch("maps are not composable")
        ctx = self.source.ctx
        degs = set(self.source.degrees()) | set(after.target.degrees())
        mats = {
            i: _mm(ctx, after.f(i), self.f(i), after.target.dim(i), self.target.dim(i), self.source.dim(i))
            for i in degs
        }
        return ChainMap(self.source, after.target, mats)


def induced_map(f: ChainMap, i: int) -> Matrix:
    """Matrix of H^i(f) in the bases chosen by ``cohomology``."""
    ctx = f.source.ctx
    Hs = cohomology(f.source, i)
    cols = []
    for z in Hs.basis:
        img = linalg.matvec(ctx, f.f(i), z) if f.target.dim(i) else []
        cols.append(class_coords(f.target, i, img) if f.target.dim(i) else [])
    ht = cohomology(f.target, i).dim
    return [[cols[c][r] for c in range(len(cols))] for r in range(ht)]


def truncate(K: CochainComplex, mode: str, n: int) -> CochainComplex:
    """Canonical truncation: mode "<=" keeps ... -> K^(n-1) -> ker d_n, mode ">=" keeps coker d_(n-1) -> K^(n+1) -> ..."""
    ctx = K.ctx
    if mode == "<=":
        dims, diffs = {}, {}
        for i in K.degrees():
            if i < n:
                dims[i] = K.dim(i)
        Z = _kernel(ctx, K.d(n), K.dim(n))
        dims[n] = len(Z)
        for i in range(K.lo, n - 1):
            if i in K.diffs:
                diffs[i] = K.d(i)
        if n - 1 in dims:
            # d_(n-1) lands in ker d_n; express in the basis Z
            img = K.d(n - 1)
            cols = []
            for c in range(K.dim(n - 1)):
                v = [row[c] for row in img]
                cols.append(linalg.in_span(ctx, Z, v) if Z else [])
            diffs[n - 1] = [[cols[c][r] for c in range(len(cols))] for r in range(len(Z))]
        return CochainComplex(ctx, min(dims), dims, diffs)
    if mode == ">=":
        dims, diffs = {}, {}
        for i in K.degrees():
            if i > n:
                dims[i] = K.dim(i)
        # coker d_(n-1): choose a complement basis C of the image in K^n
        B = _image(ctx, K.d(n - 1), K.dim(n), K.dim(n - 1))
        comp = _complement(ctx, B, K.dim(n))
        dims[n] = len(comp)
        for i in K.degrees():
            if i > n and i in K.diffs:
                diffs[i] = K.d(i)
        if n + 1 in dims:
            dn = K.d(n)
            diffs[n] = [[_dot(ctx, row, v) for v in comp] for row in dn]
        return CochainComplex(ctx, n, dims, diffs)
    raise ValueError("mode must be '<=' or '>='")


def _dot(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = ctx.add(acc, ctx.mul(x, y))
    return acc


def _complement(ctx: FieldCtx, span: Matrix, n: int) -> Matrix:
    """Standard basis vectors completing ``span`` to a basis of F^n."""
    cur = [list(v) for v in span]
    r = len(linalg.row_basis(ctx, cur, n)) if cur else 0
    out = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        trial = cur + [e]
        r2 = len(linalg.row_basis(ctx, trial, n))
        if r2 > r:
            out.append(e)
            cur, r = trial, r2
    return out


@dataclass
class Homotopy:
    mats: dict[int, Matrix]  # h_i : source^i -> target^(i-1)


@dataclass(frozen=True)
class HypothesisViolated:
    index: int  # i, naming f_i
    degree: int
    rank: int


def homotopy_identity_holds(f: ChainMap, h: Homotopy) -> bool:
    ctx = f.source.ctx
    S, T = f.source, f.target
    for i in set(S.degrees()) | set(T.degrees()):
        hi = h.mats.get(i, _zero(T.dim(i - 1), S.dim(i)))
        hi1 = h.mats.get(i + 1, _zero(T.dim(i), S.dim(i + 1)))
        dh = _mm(ctx, T.d(i - 1), hi, T.dim(i), T.dim(i - 1), S.dim(i))
        hd = _mm(ctx, hi1, S.d(i), T.dim(i), S.dim(i + 1), S.dim(i))
        if not linalg.is_zero(linalg.mat_sub(ctx, f.f(i), linalg.mat_add(ctx, dh, hd))):
            return False
    return True


def solve_homotopy(f: ChainMap) -> Optional[Homotopy]:
    """h with f = d h + h d, by one linear solve over all entries; None if f is not null-homotopic."""
    ctx = f.source.ctx
    S, T = f.source, f.target
    degs = sorted(set(S.degrees()) | set(T.degrees()))
    # unknown blocks h_i: S^i -> T^(i-1)
    blocks = {}
    offset = 0
    for i in degs:
        r, c = T.dim(i - 1), S.dim(i)
        if r and c:
            blocks[i] = (offset, r, c)
            offset += r * c
    nunk = offset
    rows: list[list[int]] = []
    rhs: list[int] = []
    for i in degs:
        nt, ns = T.dim(i), S.dim(i)
        for a in range(nt):
            for b in range(ns):
                row = [0] * nunk
                # (d_{i-1} h_i)[a][b] = sum_k d[a][k] h_i[k][b]
                if i in blocks:
                    off, r, c = blocks[i]
                    dmat = T.d(i - 1)
                    for k in range(r):
                        if dmat[a][k]:
                            row[off + k * c + b] = ctx.add(row[off + k * c + b], dmat[a][k])
                # (h_{i+1} d_i)[a][b] = sum_k h_{i+1}[a][k] d[k][b]
                if i + 1 in blocks:
                    off, r, c = blocks[i + 1]
                    dmat = S.d(i)
                    for k in range(c):
                        if dmat[k][b]:
                            row[off + a * c + k] = ctx.add(row[off + a * c + k], dmat[k][b])
                rows.append(row)
                rhs.append(f.f(i)[a][b])
    if nunk == 0:
        return Homotopy({}) if all(v == 0 for v in rhs) else None
    sol = linalg.solve(ctx, rows, rhs, nunk) if rows else [0] * nunk
    if sol is None:
        return None
    mats = {}
    for i, (off, r, c) in blocks.items():
        mats[i] = [sol[off + k * c: off + (k + 1) * c] for k in range(r)]
    return Homotopy(mats)


def compose_null_witness(maps: Sequence[ChainMap]) -> Homotopy | HypothesisViolated:
    """Null-homotopy of f_d o ... o f_1 : K_1 -> K_(d+1), given H^(d+1-i)(f_i) = 0 for all i."""
    dlen = len(maps)
    if dlen == 0:
        raise ShapeMismatch("need at least one map")
    for a, b in zip(maps, maps[1:]):
        if a.target.dims != b.source.dims or a.target.diffs != b.source.diffs:
            raise ShapeMismatch("consecutive maps are not composable")
    for f in maps:
        for K in (f.source, f.target):
            if any(K.dim(i) and not 1 <= i <= dlen for i in K.dims):
                raise ShapeMismatch(f"complexes must be supported in [1, {dlen}]")
    for idx, f in enumerate(maps, start=1):
        deg = dlen + 1 - idx
        ind = induced_map(f, deg)
        rk = linalg.rank(f.source.ctx, ind) if ind and ind[0] else 0
        if rk:
            return HypothesisViolated(idx, deg, rk)
    comp = maps[0]
    for f in maps[1:]:
        comp = comp.compose(f)
    h = solve_homotopy(comp)
    if h is None:
        raise ShapeMismatch("hypothesis holds but no homotopy was found")
    if not homotopy_identity_holds(comp, h):
        raise ShapeMismatch("homotopy failed re-verification")
    return h


# ---------------------------------------------------------------------------
# deterministic random instances


def _rand_matrix(rng: random.Random, ctx: FieldCtx, r: int, c: int) -> Matrix:
    return [[rng.randrange(ctx.q) for _ in range(c)] for _ in range(r)]


def random_complex(rng: random.Random, ctx: FieldCtx, lo: int, hi: int, max_dim: int = 4) -> CochainComplex:
    """Random complex on [lo, hi]: each d_i factors through the cokernel of d_(i-1)."""
    dims = {i: rng.randint(0, max_dim) for i in range(lo, hi + 1)}
    diffs: dict[int, Matrix] = {}
    for i in range(lo, hi):
        prev = diffs.get(i - 1)
        # rows y with y * d_(i-1) = 0 span the functionals vanishing on the image
        if prev is not None and dims[i] and dims[i - 1]:
            ann = linalg.left_nullspace(ctx, prev, dims[i])
        else:
            ann = linalg.identity(dims[i])
        A = _rand_matrix(rng, ctx, dims[i + 1], len(ann))
        diffs[i] = _mm(ctx, A, ann, dims[i + 1], len(ann), dims[i]) if ann else _zero(dims[i + 1], dims[i])
    return CochainComplex(ctx, lo, dims, diffs)


def random_chain_map(rng: random.Random, S: CochainComplex, T: CochainComplex) -> ChainMap:
    """Random element of the space of chain maps S -> T (solved as a nullspace)."""
    ctx = S.ctx
    degs = sorted(set(S.degrees()) | set(T.degrees()))
    blocks, off = {}, 0
    for i in degs:
        r, c = T.dim(i), S.dim(i)
        if r and c:
            blocks[i] = (off, r, c)
            off += r * c
    if off == 0:
        return ChainMap(S, T, {})
    rows = []
    for i in degs:
        for a in range(T.dim(i + 1)):
            for b in range(S.dim(i)):
                row = [0] * off
                if i in blocks:
                    o, r, c = blocks[i]
                    dt = T.d(i)
                    for k in range(r):
                        if dt[a][k]:
                            row[o + k * c + b] = ctx.add(row[o + k * c + b], dt[a][k])
                if i + 1 in blocks:
                    o, r, c = blocks[i + 1]
                    ds = S.d(i)
                    for k in range(c):
                        if ds[k][b]:
                            row[o + a * c + k] = ctx.sub(row[o + a * c + k], ds[k][b])
                rows.append(row)
    basis = linalg.nullspace(ctx, rows, off) if rows else linalg.identity(off)
    vec = [0] * off
    for bvec in basis:
        c = rng.randrange(ctx.q)
        if c:
            vec = [ctx.add(x, ctx.mul(c, y)) for x, y in zip(vec, bvec)]
    mats = {i: [vec[o + k * c: o + (k + 1) * c] for k in range(r)] for i, (o, r, c) in blocks.items()}
    return ChainMap(S, T, mats)


def cohomology_killing_projection(K: CochainComplex, k: int) -> ChainMap:
    """Chain endomorphism of K, identity except in degree k, acting as zero on H^k(K).

    In degree k: identity on B + W and zero on a complement of B inside Z, where W is a
    complement of Z in K^k.  This commutes with d and induces 0 on H^k and the identity
    on every other H^i.
    """
    ctx = K.ctx
    n = K.dim(k)
    mats = {i: linalg.identity(K.dim(i)) for i in K.degrees() if K.dim(i)}
    if n == 0:
        return ChainMap(K, K, mats)
    H = cohomology(K, k)
    B = H.boundaries
    Zc = H.basis  # complement of B inside Z
    Z = [list(v) for v in B] + [list(v) for v in Zc]
    W = _complement(ctx, Z, n)
    basis = [list(v) for v in B] + [list(v) for v in Zc] + W
    # P = Q diag Q^-1 where Q has the basis as columns
    Q = linalg.transpose(basis)
    Qi = linalg.inverse(ctx, Q)
    diag = [[0] * n for _ in range(n)]
    for c in range(n):
        keep = c < len(B) or c >= len(B) + len(Zc)
        diag[c][c] = 1 if keep else 0
    P = linalg.matmul(ctx, linalg.matmul(ctx, Q, diag), Qi)
    mats[k] = P
    return ChainMap(K, K, mats)


@dataclass
class LemmaInstance:
    complexes: list[CochainComplex]
    maps: list[ChainMap]


def random_lemma_instance(rng: random.Random, ctx: FieldCtx, d: int, max_dim: int = 4) -> LemmaInstance:
    """Maps f_1..f_d between complexes on [1, d] with H^(d+1-i)(f_i) = 0, without rejection."""
    Ks = [random_complex(rng, ctx, 1, d, max_dim) for _ in range(d + 1)]
    maps = []
    for i in range(1, d + 1):
        f = random_chain_map(rng, Ks[i - 1], Ks[i])
        kill = cohomology_killing_projection(Ks[i], d + 1 - i)
        maps.append(f.compose(kill))
    return LemmaInstance(Ks, maps)


__all__ = [
    "CochainComplex",
    "ChainMap",
    "Homotopy",
    "HypothesisViolated",
    "Cohomology",
    "cohomology",
    "induced_map",
    "truncate",
    "compose_null_witness",
    "solve_homotopy",
    "homotopy_identity_holds",
    "random_complex",
    "random_chain_map",
    "random_lemma_instance",
    "cohomology_killing_projection",
    "LemmaInstance",
]
