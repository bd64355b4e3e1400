"""Sparse multivariate (Laurent) polynomials over F_{p^e} with weighted gradings.

Also: degreewise bases of subalgebras generated by homogeneous elements and of
ideals inside them, exact membership, and normal forms modulo a hypersurface
equation that is monic in one distinguished variable.

Monomial order for every reduced form here: graded lexicographic, variables ordered
x_0 > x_1 > ... (weighted degree first, then exponent vectors compared lexicographically).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import BudgetExceeded, DegreeMismatch, DimensionMismatch, NotMonicInVariable
from .gfcore import FieldCtx

Exps = tuple[int, ...]

DEFAULT_TERM_BUDGET = 10**6


@dataclass(frozen=True)
class Grading:
    nvars: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) != self.nvars:
            raise DimensionMismatch("one weight per variable")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be >= 1")

    @classmethod
    def standard(cls, nvars: int) -> "Grading":
        return cls(nvars, (1,) * nvars)


def weighted_degree(m: Sequence[int], g: Grading) -> int:
    if len(m) != g.nvars:
        raise DimensionMismatch(f"exponent vector of length {len(m)} for {g.nvars} variables")
    return sum(w * e for w, e in zip(g.weights, m))


def grlex_key(m: Exps, g: Grading) -> tuple:
    return (weighted_degree(m, g), m)


def monomials_of_degree(d: int, g: Grading) -> list[Exps]:
    """All exponent vectors of weighted degree d, in decreasing grlex order."""
    out: list[Exps] = []

    def rec(i: int, left: int, acc: list[int]):
        if i == g.nvars - 1:
            w = g.weights[i]
            if left % w == 0:
                out.append(tuple(acc + [left // w]))
            return
        for e in range(left // g.weights[i], -1, -1):
            rec(i + 1, left - e * g.weights[i], acc + [e])

    if d < 0:
        return []
    if g.nvars == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out


class GradedPoly:
    """Immutable sparse polynomial; exponents may be negative (Laurent)."""

    __slots__ = ("ctx", "grading", "terms")

    def __init__(self, ctx: FieldCtx, grading: Grading, terms: Mapping[Exps, int] | None = None):
        self.ctx = ctx
        self.grading = grading
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != grading.nvars:
                raise DimensionMismatch("exponent length differs from nvars")
            if c:
                clean[tuple(m)] = c
        self.terms: dict[Exps, int] = clean

    # construction helpers
    @classmethod
    def _raw(cls, ctx: FieldCtx, grading: Grading, terms: dict[Exps, int]) -> "GradedPoly":
        obj = cls.__new__(cls)
        obj.ctx, obj.grading, obj.terms = ctx, grading, terms
        return obj

    @classmethod
    def monomial(cls, ctx: FieldCtx, grading: Grading, exps: Sequence[int], coeff: int = 1) -> "GradedPoly":
        return cls(ctx, grading, {tuple(exps): coeff % ctx.q if ctx.is_prime else coeff})

    @classmethod
    def var(cls, ctx: FieldCtx, grading: Grading, i: int) -> "GradedPoly":
        e = [0] * grading.nvars
        e[i] = 1
        return cls(ctx, grading, {tuple(e): 1})

    @classmethod
    def const(cls, ctx: FieldCtx, grading: Grading, c: int) -> "GradedPoly":
        return cls(ctx, grading, {(0,) * grading.nvars: c})

    def zero_like(self) -> "GradedPoly":
        return GradedPoly._raw(self.ctx, self.grading, {})

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {weighted_degree(m, self.grading) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise DegreeMismatch("polynomial is zero or not homogeneous")
        return next(iter(degs))

    def var_degree(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    # arithmetic
    def _check(self, other: "GradedPoly"):
        if other.ctx != self.ctx or other.grading != self.grading:
            raise DimensionMismatch("polynomials live in different rings")

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        self._check(other)
        ctx = self.ctx
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = ctx.add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GradedPoly._raw(ctx, self.grading, out)

    def __neg__(self) -> "GradedPoly":
        ctx = self.ctx
        return GradedPoly._raw(ctx, self.grading, {m: ctx.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def scale(self, c: int) -> "GradedPoly":
        if not c:
            return self.zero_like()
        ctx = self.ctx
        return GradedPoly._raw(ctx, self.grading, {m: ctx.mul(c, v) for m, v in self.terms.items()})

    def shift(self, exps: Sequence[int]) -> "GradedPoly":
        """Multiply by the (Laurent) monomial x^exps."""
        return GradedPoly._raw(
            self.ctx, self.grading, {tuple(a + b for a, b in zip(m, exps)): c for m, c in self.terms.items()}
        )

    def __mul__(self, other: "GradedPoly") -> "GradedPoly":
        self._check(other)
        ctx = self.ctx
        out: dict[Exps, int] = {}
        if ctx.is_prime:
            p = ctx.p
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = (out.get(m, 0) + c1 * c2) % p
        else:
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = ctx.add(out.get(m, 0), ctx.mul(c1, c2))
        return GradedPoly._raw(ctx, self.grading, {m: c for m, c in out.items() if c})

    def __pow__(self, k: int) -> "GradedPoly":
        if k < 0:
            raise ValueError("negative power")
        result = GradedPoly.const(self.ctx, self.grading, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self, k: int = 1) -> "GradedPoly":
        """f^(p^k), computed as coefficient Frobenius plus exponent scaling."""
        ctx = self.ctx
        q = ctx.p**k
        return GradedPoly._raw(
            ctx, self.grading, {tuple(q * a for a in m): ctx.frob(c, k) for m, c in self.terms.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.grading == other.grading and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx, self.grading, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Exps, int]]:
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0], self.grading), reverse=True)

    def __repr__(self) -> str:
        return self.to_string()

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.grading.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(names, m) if e != 0
            )
            coef = repr(self.ctx.element(self.ctx.coords(c))) if not self.ctx.is_prime else str(c)
            if not mono:
                parts.append(coef)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts)

    def to_dict(self) -> list[list]:
        """Canonical serialisation: [[exponents..., coefficient code], ...] in grlex order."""
        return [list(m) + [c] for m, c in self.sorted_terms()]


def parse_poly(ctx: FieldCtx, grading: Grading, text: str, names: Sequence[str]) -> GradedPoly:
    """Parse sums of terms like ``3*x^2*y + z^3 - y*z^2`` (prime-field integer coefficients)."""
    idx = {n: i for i, n in enumerate(names)}
    text = text.replace(" ", "").replace("-", "+-")
    out = GradedPoly(ctx, grading)
    for term in filter(None, text.split("+")):
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        coef = 1
        exps = [0] * grading.nvars
        for factor in term.split("*"):
            if factor.isdigit():
                coef *= int(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in idx:
                raise ValueError(f"unknown variable {name!r}")
            exps[idx[name]] += int(power) if power else 1
        out = out + GradedPoly.monomial(ctx, grading, exps, ctx.embed(sign * coef))
    return out


@dataclass
class PieceBasis:
    degree: int
    basis: list[GradedPoly]
    monomials: list[Exps] = field(default_factory=list)
    rows: list[list[int]] = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)
    spanning: list[tuple[str, GradedPoly]] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)


def _vectorize(polys: Sequence[GradedPoly], monos: list[Exps]) -> list[list[int]]:
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for f in polys:
        row = [0] * len(monos)
        for m, c in f.terms.items():
            row[index[m]] = c
        rows.append(row)
    return rows


def _reduce_span(ctx: FieldCtx, grading: Grading, d: int, spanning: list[tuple[str, GradedPoly]]) -> PieceBasis:
    monos = sorted({m for _, f in spanning for m in f.terms}, key=lambda m: grlex_key(m, grading), reverse=True)
    rows, pivots = linalg.rref(ctx, _vectorize([f for _, f in spanning], monos), len(monos))
    basis = [
        GradedPoly._raw(ctx, grading, {monos[j]: c for j, c in enumerate(row) if c}) for row in rows
    ]
    return PieceBasis(d, basis, monos, rows, pivots, spanning)


def _generator_multisets(degs: Sequence[int], d: int, budget: int) -> list[tuple[int, ...]]:
    """Nondecreasing index tuples whose degrees sum to d."""
    out: list[tuple[int, ...]] = []
    order = sorted(range(len(degs)))

    def rec(start: int, left: int, acc: list[int]):
        if left == 0:
            out.append(tuple(acc))
            if len(out) > budget:
                raise BudgetExceeded(f"more than {budget} generator products of degree {d}")
            return
        for k in range(start, len(order)):
            i = order[k]
            if degs[i] <= left:
                acc.append(i)
                rec(k, left - degs[i], acc)
                acc.pop()

    if d >= 0:
        rec(0, d, [])
    return out


def _common_ring(polys: Sequence[GradedPoly]) -> tuple[FieldCtx, Grading]:
    if not polys:
        raise ValueError("need at least one polynomial")
    return polys[0].ctx, polys[0].grading


def subalgebra_piece_basis(gens: Sequence[GradedPoly], d: int, budget: int = DEFAULT_TERM_BUDGET) -> PieceBasis:
    """Degree-d part of the unital subalgebra generated by homogeneous ``gens``."""
    ctx, grading = _common_ring(gens)
    degs = []
    for g in gens:
        if not g.is_homogeneous() or g.is_zero() or g.degree() <= 0:
            raise DegreeMismatch("generators must be homogeneous of positive degree")
        degs.append(g.degree())
    spanning = []
    one = GradedPoly.const(ctx, grading, 1)
    for combo in _generator_multisets(degs, d, budget):
        prod = one
        for i in combo:
            prod = prod * gens[i]
        label = "*".join(f"g{i}" for i in combo) or "1"
        if not prod.is_zero():
            spanning.append((label, prod))
    return _reduce_span(ctx, grading, d, spanning)


def ideal_piece_in_subalgebra(
    ideal_gens: Sequence[GradedPoly],
    algebra_gens: Sequence[GradedPoly],
    d: int,
    budget: int = DEFAULT_TERM_BUDGET,
) -> PieceBasis:
    """Degree-d span of {g * r : g in ideal_gens, r homogeneous in the subalgebra}."""
    ctx, grading = _common_ring(list(ideal_gens) + list(algebra_gens))
    spanning = []
    for k, g in enumerate(ideal_gens):
        if not g.is_homogeneous() or g.is_zero():
            raise DegreeMismatch("ideal generators must be homogeneous")
        piece = subalgebra_piece_basis(algebra_gens, d - g.degree(), budget)
        for label, r in piece.spanning:
            prod = g * r
            if not prod.is_zero():
                spanning.append((f"h{k}*({label})", prod))
    return _reduce_span(ctx, grading, d, spanning)


def membership(f: GradedPoly, space: PieceBasis) -> tuple[bool, list[int] | None]:
    """Is f in the span?  On success also return coordinates w.r.t. ``space.basis``."""
    if f.is_zero():
        return True, [0] * space.dim
    if not f.is_homogeneous() or f.degree() != space.degree:
        raise DegreeMismatch(f"f has degree {sorted(f.degrees())}, space has degree {space.degree}")
    if any(m not in set(space.monomials) for m in f.terms):
        return False, None
    vec = _vectorize([f], space.monomials)[0]
    coords = linalg.in_span(f.ctx, space.rows, vec)
    return coords is not None, coords


def express(f: GradedPoly, space: PieceBasis) -> list[tuple[int, str]] | None:
    """Write f as a combination of the labelled spanning products, or None."""
    ok, _ = membership(f, space)
    if not ok:
        return None
    if f.is_zero():
        return []
    monos = sorted(
        {m for _, g in space.spanning for m in g.terms} | set(f.terms),
        key=lambda m: grlex_key(m, f.grading),
        reverse=True,
    )
    vecs = _vectorize([g for _, g in space.spanning], monos)
    coords = linalg.in_span(f.ctx, vecs, _vectorize([f], monos)[0])
    return [(c, label) for c, (label, _) in zip(coords, space.spanning) if c]


def monic_leading(h: GradedPoly, var: int) -> tuple[int, int]:
    """(degree in var, leading constant); raises unless the leading coefficient is a constant."""
    if h.is_zero():
        raise NotMonicInVariable("zero polynomial")
    D = h.var_degree(var)
    if D <= 0:
        raise NotMonicInVariable(f"h does not involve variable {var}")
    lead = [(m, c) for m, c in h.terms.items() if m[var] == D]
    if len(lead) != 1 or any(e for i, e in enumerate(lead[0][0]) if i != var):
        raise NotMonicInVariable(f"leading coefficient of h in variable {var} is not a constant")
    return D, lead[0][1]


def normal_form_hypersurface(f: GradedPoly, h: GradedPoly, var: int) -> GradedPoly:
    """Remainder of f on division by h in the variable ``var`` (h scaled to be monic)."""
    D, lc = monic_leading(h, var)
    ctx = f.ctx
    if lc != 1:
        h = h.scale(ctx.inv(lc))
    tail = [(m, c) for m, c in h.terms.items() if m[var] != D]
    terms = dict(f.terms)
    while True:
        high = [m for m in terms if m[var] >= D]
        if not high:
            break
        m = max(high, key=lambda e: (e[var], e))
        c = terms.pop(m)
        base = list(m)
        base[var] -= D
        for mt, ct in tail:
            mm = tuple(a + b for a, b in zip(base, mt))
            v = ctx.sub(terms.get(mm, 0), ctx.mul(c, ct))
            if v:
                terms[mm] = v
            else:
                terms.pop(mm, None)
    return GradedPoly._raw(ctx, f.grading, terms)


def monic_variable(h: GradedPoly) -> int:
    """First variable in which h is monic up to a constant, else NotMonicInVariable."""
    for i in range(h.grading.nvars):
        try:
            monic_leading(h, i)
            return i
        except NotMonicInVariable:
            continue
    raise NotMonicInVariable("h is not monic in any variable")


def all_exponents(nvars: int, d: int) -> Iterable[Exps]:
    """Standard-graded exponent vectors of total degree d (grlex decreasing)."""
    return monomials_of_degree(d, Grading.standard(nvars))


def product_count(gens_degrees: Sequence[int], d: int) -> int:
    """Number of generator multisets of total degree d (used to pre-check budgets)."""
    ways = [1] + [0] * d if d >= 0 else []
    for g in gens_degrees:
        for k in range(g, d + 1):
            ways[k] += ways[k - g]
    return ways[d] if d >= 0 else 0


__all__ = [
    "Grading",
    "GradedPoly",
    "PieceBasis",
    "weighted_degree",
    "monomials_of_degree",
    "subalgebra_piece_basis",
    "ideal_piece_in_subalgebra",
    "membership",
    "express",
    "normal_form_hypersurface",
    "monic_leading",
    "monic_variable",
    "parse_poly",
    "product_count",
]
