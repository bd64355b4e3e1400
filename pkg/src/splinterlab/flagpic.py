"""Picard lattice of the complete flag variety of an n-dimensional space.

Classes are integer vectors c_1..c_n standing for L_1^c_1 x ... x L_n^c_n with
L_i = V_i / V_(i-1) and L_1 ... L_n trivial.  Positivity is read off from the n-1
one-parameter Schubert curves (vary V_i with V_(i-1), V_(i+1) fixed); with V_i a
subbundle, such a curve has deg L_i = -1, deg L_(i+1) = +1, so deg_i = c_(i+1) - c_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class PicClass:
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) < 2:
            raise ValueError("flag varieties need n >= 2")

    @property
    def n(self) -> int:
        return len(self.c)

    def normalize(self) -> "PicClass":
        return PicClass(tuple(x - self.c[0] for x in self.c))

    def __add__(self, other: "PicClass") -> "PicClass":
        if other.n != self.n:
            raise ValueError("classes on different flag varieties")
        return PicClass(tuple(a + b for a, b in zip(self.c, other.c)))

    def __neg__(self) -> "PicClass":
        return PicClass(tuple(-a for a in self.c))

    def scale(self, k: int) -> "PicClass":
        return PicClass(tuple(k * a for a in self.c))

    def same_class(self, other: "PicClass") -> bool:
        return self.normalize() == other.normalize()


def basis_vector(n: int, i: int) -> PicClass:
    """e_i (1-based): the class of L_i."""
    return PicClass(tuple(1 if k == i else 0 for k in range(1, n + 1)))


def filtration_product(n: int) -> PicClass:
    """prod_{i=1}^{n-1} det(V_i)^-1 x L_(i+1)^i, expanded factor by factor."""
    total = [0] * n
    for i in range(1, n):
        for j in range(1, i + 1):
            total[j - 1] -= 1
        total[i] += i
    return PicClass(tuple(total))


def anticanonical_closed_form(n: int) -> PicClass:
    return PicClass(tuple(2 * i - n - 1 for i in range(1, n + 1)))


def anticanonical(n: int) -> PicClass:
    if n < 2:
        raise ValueError("n >= 2")
    return filtration_product(n)


def curve_degrees(cls: PicClass) -> tuple[int, ...]:
    return tuple(cls.c[i + 1] - cls.c[i] for i in range(cls.n - 1))


def positivity(cls: PicClass) -> tuple[str, tuple[int, ...]]:
    degs = curve_degrees(cls)
    if all(d > 0 for d in degs):
        return "ample", degs
    if all(d >= 0 for d in degs):
        return "nef-not-ample", degs
    return "not-nef", degs


def mj_class(n: int, j: int) -> PicClass:
    """Inverse of omega_pi x pi^*O(-j) for pi to the space of hyperplanes, pi^*O(1) = L_n."""
    if n < 2 or j < 1:
        raise ValueError("need n >= 2 and j >= 1")
    return anticanonical(n) + basis_vector(n, n).scale(j - n)


def collected_display(n: int) -> PicClass:
    """The collected exponent vector (2i - n for i < n, n - 1 for i = n)."""
    return PicClass(tuple(2 * i - n for i in range(1, n)) + (n - 1,))


def display_discrepancy(n: int) -> dict:
    """Compare the collected display with the filtration product."""
    diff = tuple(a - b for a, b in zip(collected_display(n).c, anticanonical(n).c))
    principal = len(set(diff)) == 1
    return {"n": n, "difference": list(diff), "principal": principal}


def difference_class(n: int, a: int, b: int) -> PicClass:
    """L_a x L_b^-1."""
    return basis_vector(n, a) + (-basis_vector(n, b))


def difference_claim_table(n: int) -> list[dict]:
    """Verdicts for L_a x L_b^-1, a > b, against the claim that each one is ample."""
    rows = []
    for a in range(2, n + 1):
        for b in range(1, a):
            verdict, degs = positivity(difference_class(n, a, b))
            rows.append({"a": a, "b": b, "verdict": verdict, "degrees": list(degs),
                         "conflicts_with_claim": verdict != "ample"})
    return rows


def center_factorisation(n: int) -> tuple[PicClass, PicClass]:
    """(sum_{i<n} (2i - n) e_i, sum_{k=1}^{c} (n - 2k)(e_(n-k) - e_k)) with c = floor((n-1)/2)."""
    lhs = PicClass(tuple(2 * i - n for i in range(1, n)) + (0,))
    rhs = PicClass((0,) * n)
    for k in range(1, (n - 1) // 2 + 1):
        rhs = rhs + difference_class(n, n - k, k).scale(n - 2 * k)
    return lhs, rhs


@dataclass(frozen=True)
class KoszulTerm:
    twist: int
    multiplicity: int
    flag_class: PicClass  # class of omega_pi x pi^*O(twist), i.e. -M_(-twist)


def koszul_terms(d: int) -> list[KoszulTerm]:
    """Middle terms O(-(k+1))^C(d-1,k), k = 0..d-2, of the twisted Koszul resolution of a point."""
    if d < 2:
        raise ValueError("d >= 2")
    return [KoszulTerm(-(k + 1), comb(d - 1, k), -mj_class(d, k + 1)) for k in range(d - 1)]


HOMOGENEITY_REMARK = (
    "nef and big on a homogeneous space: the semiample-and-big target property is taken as "
    "the nef-and-big verdict; the homogeneity upgrade to ample is commentary, not computed"
)


def mj_table(n_max: int) -> list[dict]:
    rows = []
    for n in range(2, n_max + 1):
        for j in range(1, n + 1):
            cls = mj_class(n, j)
            verdict, degs = positivity(cls)
            rows.append({
                "n": n,
                "j": j,
                "class": list(cls.c),
                "degrees": list(degs),
                "verdict": verdict,
                "discrepancy": verdict == "not-nef",
            })
    return rows


__all__ = [
    "PicClass",
    "KoszulTerm",
    "basis_vector",
    "anticanonical",
    "anticanonical_closed_form",
    "filtration_product",
    "curve_degrees",
    "positivity",
    "mj_class",
    "mj_table",
    "koszul_terms",
    "collected_display",
    "display_discrepancy",
    "difference_claim_table",
    "center_factorisation",
    "HOMOGENEITY_REMARK",
]
