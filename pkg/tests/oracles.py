"""Independent reference computations.

Nothing here calls the package's linear algebra, normal forms or cohomology code.
Elements of top local cohomology of k[x_0..x_n] are dense dicts over inverse
monomials x^(-alpha-1), alpha >= 0, and all linear algebra is a plain elimination.
"""

from __future__ import annotations

from itertools import product


# ---------------------------------------------------------------------------
# prime-field elimination


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def kernel_mod_p(mat: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : mat v = 0}."""
    m = [[x % p for x in r] for r in mat]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fc]) % p
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# monomials and polynomials as dicts


def exps(nvars: int, total: int) -> list[tuple[int, ...]]:
    if total < 0:
        return []
    return [e for e in product(range(total + 1), repeat=nvars) if sum(e) == total]


def poly_mul(f: dict, g: dict, p: int) -> dict:
    out: dict = {}
    for a, x in f.items():
        for b, y in g.items():
            k = tuple(i + j for i, j in zip(a, b))
            out[k] = (out.get(k, 0) + x * y) % p
    return {k: v for k, v in out.items() if v}


def poly_pow(f: dict, k: int, p: int, nvars: int) -> dict:
    out = {(0,) * nvars: 1}
    for _ in range(k):
        out = poly_mul(out, f, p)
    return out


# ---------------------------------------------------------------------------
# projective space


def pn_dim_oracle(n: int, i: int, t: int) -> int:
    """Count monomials: S_t for i = 0, inverse monomials of degree t for i = n."""
    if i == 0:
        return len(exps(n + 1, t))
    if i == n:
        return sum(1 for a in exps(n + 1, -t - n - 1))
    return 0


# ---------------------------------------------------------------------------
# top local cohomology of a hypersurface ring via the ambient inverse system


def contract(f: dict, elem: dict, p: int) -> dict:
    """Multiply an inverse-system element by a polynomial."""
    out: dict = {}
    for beta, c in f.items():
        for alpha, v in elem.items():
            k = tuple(a - b for a, b in zip(alpha, beta))
            if min(k) >= 0:
                out[k] = (out.get(k, 0) + c * v) % p
    return {k: v for k, v in out.items() if v}


def frob_ambient(elem: dict, p: int) -> dict:
    return {tuple(p * a + p - 1 for a in alpha): v for alpha, v in elem.items()}


class HypersurfaceOracle:
    """H^n_m(S/h), n = nvars - 1, as ker(h) on H^(n+1)_m(S)(-d), with Frobenius h^(p-1) F."""

    def __init__(self, h: dict, p: int):
        self.h = h
        self.p = p
        self.nvars = len(next(iter(h)))
        self.d = sum(next(iter(h)))

    def ambient(self, t: int) -> list[tuple[int, ...]]:
        # ambient degree t - d, inverse monomials with |alpha| = d - t - nvars
        return exps(self.nvars, self.d - t - self.nvars)

    def kernel(self, t: int) -> list[dict]:
        src = self.ambient(t)
        dst = {a: i for i, a in enumerate(exps(self.nvars, -t - self.nvars))}
        mat = [[0] * len(src) for _ in dst]
        for c, alpha in enumerate(src):
            for k, v in contract(self.h, {alpha: 1}, self.p).items():
                mat[dst[k]][c] = v
        return [{src[i]: x for i, x in enumerate(v) if x} for v in kernel_mod_p(mat, len(src), self.p)]

    def dim(self, t: int) -> int:
        return len(self.kernel(t))

    def frob(self, elem: dict, e: int = 1) -> dict:
        q = self.p**e
        return contract(poly_pow(self.h, q - 1, self.p, self.nvars), frob_ambient_power(elem, self.p, e), self.p)

    def vectors(self, elems: list[dict], t: int) -> list[list[int]]:
        idx = self.ambient(t)
        return [[el.get(a, 0) for a in idx] for el in elems]

    def frobenius_injective(self, t: int) -> bool:
        ker = self.kernel(t)
        imgs = [self.frob(v) for v in ker]
        return rank_mod_p(self.vectors(imgs, self.p * t), self.p) == len(ker)

    def generated_submodule_fills(self, s: dict, s_deg: int, t: int, max_abs: int = 64) -> bool:
        """Does the R-span of the Frobenius orbit of s fill degree t?"""
        rows = []
        e = 0
        while abs(self.p**e * s_deg) <= max_abs:
            img = self.frob(s, e) if e else s
            deg = self.p**e * s_deg
            for beta in exps(self.nvars, t - deg):
                rows.append(contract({beta: 1}, img, self.p))
            e += 1
        return rank_mod_p(self.vectors(rows, t), self.p) == self.dim(t)


def frob_ambient_power(elem: dict, p: int, e: int) -> dict:
    for _ in range(e):
        elem = frob_ambient(elem, p)
    return elem


# ---------------------------------------------------------------------------
# elliptic curves and P^1


def hasse_invariant(h: dict, p: int) -> int:
    """Coefficient of (xyz)^(p-1) in h^(p-1)."""
    return poly_pow(h, p - 1, p, 3).get((p - 1,) * 3, 0)


def resultant_nonzero(f0: dict, f1: dict, p: int) -> bool:
    """Binary forms without a common zero over the algebraic closure, via the Sylvester matrix."""
    if not f0 or not f1:
        return False
    m = sum(next(iter(f0)))
    n = sum(next(iter(f1)))
    a = [f0.get((m - i, i), 0) for i in range(m + 1)]
    b = [f1.get((n - i, i), 0) for i in range(n + 1)]
    size = m + n
    rows = []
    for k in range(n):
        rows.append([0] * k + a + [0] * (size - m - 1 - k))
    for k in range(m):
        rows.append([0] * k + b + [0] * (size - n - 1 - k))
    return rank_mod_p(rows, p) == size


# ---------------------------------------------------------------------------
# flag varieties


def positive_root_sum(n: int) -> list[int]:
    """Sum of e_j - e_i over i < j."""
    c = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            c[j] += 1
            c[i] -= 1
    return c


def schubert_degrees(c: list[int]) -> list[int]:
    return [c[i + 1] - c[i] for i in range(len(c) - 1)]


def mj_oracle(n: int, j: int) -> list[int]:
    c = positive_root_sum(n)
    c[-1] += j - n
    return c


def pascal(nn: int, k: int) -> int:
    row = [1]
    for _ in range(nn):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k] if 0 <= k < len(row) else 0


def difference_conflicts(n: int) -> int:
    count = 0
    for a in range(2, n + 1):
        for b in range(1, a):
            c = [0] * n
            c[a - 1] += 1
            c[b - 1] -= 1
            if not all(x > 0 for x in schubert_degrees(c)):
                count += 1
    return count

