"""Exact arithmetic in F_p and small extensions F_{p^e}, plus additive p-polynomials.

Elements are carried around as integer codes: the coordinates c_0..c_{e-1} of the
polynomial representative c_0 + c_1 T + ... + c_{e-1} T^{e-1} packed in base p.
For prime fields the code is just the residue.  ``FieldElement`` wraps a code for
the public, operator-overloaded API; hot loops elsewhere work on the codes.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence, TypeVar

from .errors import DivisionByZero, FieldError

MAX_FIELD_SIZE = 1 << 16

T = TypeVar("T")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomials over F_p as coefficient lists, low degree first ------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial m over F_p."""
    r = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            for j in range(dm + 1):
                r[i - dm + j] = (r[i - dm + j] - c * m[j]) % p
    return _trim(r[:dm] if len(r) > dm else r)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = _trim([c % p for c in modulus])
    e = len(m) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree e over F_p (low degree first)."""
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        cand = tuple(reversed(low)) + (1,)
        if cand[0] != 0 and is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")


class FieldCtx:
    """The finite field F_{p^e}; modulus is given low-degree-first and must be monic."""

    def __init__(self, p: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if modulus is None:
            self.e = 1
            self.modulus: tuple[int, ...] | None = None
        else:
            m = tuple(c % p for c in modulus)
            while m and m[-1] == 0:
                m = m[:-1]
            if len(m) < 2 or m[-1] != 1:
                raise FieldError("modulus must be monic of degree >= 1")
            if not is_irreducible(m, p):
                raise FieldError(f"modulus {m} is reducible over F_{p}")
            self.e = len(m) - 1
            self.modulus = m if self.e > 1 else None
        self.p = p
        self.q = p ** self.e
        if self.q > MAX_FIELD_SIZE:
            raise FieldError(f"field of size {self.q} exceeds the 2^16 desk-scale limit")
        self.is_prime = self.e == 1
        # log/exp tables are built on first multiplication
        self._exp: list[int] = []
        self._log: list[int] = []

    # identity / hashing by (p, modulus)
    def _key(self) -> tuple:
        return (self.p, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.is_prime:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={self.modulus})"

    # -- code <-> coordinates
    def coords(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coords(self, cs: Sequence[int]) -> int:
        cs = _poly_mod(list(cs), self.modulus, self.p) if self.modulus and len(cs) > self.e else [c % self.p for c in cs]
        code = 0
        for c in reversed(cs):
            code = code * self.p + c
        return code

    def _build_log_tables(self) -> None:
        q, p, m = self.q, self.p, self.modulus
        for g in range(p, q):
            gc = list(self.coords(g))
            exp = [1]
            cur = [1]
            for _ in range(q - 2):
                cur = _poly_mod(_poly_mul(cur, gc, p), m, p)
                code = self.from_coords(cur)
                if code == 1:
                    break
                exp.append(code)
            if len(exp) == q - 1:
                log = [0] * q
                for i, c in enumerate(exp):
                    log[c] = i
                self._exp, self._log = exp, log
                return
        raise FieldError("no primitive element found")  # unreachable for a field

    # -- arithmetic on codes
    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def embed(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out, place = 0, 1
        p = self.p
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def neg(self, a: int) -> int:
        if self.is_prime:
            return -a % self.p
        if self.p == 2:
            return a
        out, place = 0, 1
        while a:
            a, x = divmod(a, self.p)
            out += (-x % self.p) * place
            place *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.is_prime:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if not self._exp:
            self._build_log_tables()
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.is_prime:
            return pow(a, -1, self.p)
        if not self._exp:
            self._build_log_tables()
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if self.is_prime:
            if k < 0:
                a, k = self.inv(a), -k
            return pow(a, k, self.p)
        if a == 0:
            if k < 0:
                raise DivisionByZero("0 to a negative power")
            return 1 if k == 0 else 0
        if not self._exp:
            self._build_log_tables()
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def frob(self, a: int, k: int = 1) -> int:
        """a^(p^k)."""
        if self.is_prime or a == 0:
            return a
        if not self._exp:
            self._build_log_tables()
        return self._exp[(self._log[a] * pow(self.p, k % self.e, self.q - 1)) % (self.q - 1)]

    def element(self, x: int | Sequence[int]) -> "FieldElement":
        if isinstance(x, int):
            return FieldElement(self, self.embed(x))
        return FieldElement(self, self.from_coords(x))

    def gen(self) -> "FieldElement":
        """The class of T (the polynomial variable) in F_p[T]/(modulus)."""
        if self.is_prime:
            raise FieldError("prime field has no extension generator")
        return FieldElement(self, self.p)


@functools.lru_cache(maxsize=None)
def gf(p: int, modulus: tuple[int, ...] | None = None) -> FieldCtx:
    """Cached constructor; contexts are immutable so sharing them is safe."""
    return FieldCtx(p, modulus)


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    code: int

    @property
    def coordinates(self) -> tuple[int, ...]:
        return self.ctx.coords(self.code)

    def _other(self, o: "FieldElement | int") -> int:
        if isinstance(o, FieldElement):
            if o.ctx != self.ctx:
                raise FieldError("elements of different fields")
            return o.code
        return self.ctx.embed(o)

    def __add__(self, o):
        return FieldElement(self.ctx, self.ctx.add(self.code, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.ctx, self.ctx.sub(self.code, self._other(o)))

    def __rsub__(self, o):
        return FieldElement(self.ctx, self.ctx.sub(self._other(o), self.code))

    def __mul__(self, o):
        return FieldElement(self.ctx, self.ctx.mul(self.code, self._other(o)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __truediv__(self, o):
        return FieldElement(self.ctx, self.ctx.mul(self.code, self.ctx.inv(self._other(o))))

    def __pow__(self, k: int):
        return FieldElement(self.ctx, self.ctx.pow(self.code, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.code))

    def frobenius(self, k: int = 1) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.frob(self.code, k))

    def __eq__(self, o: object) -> bool:
        if isinstance(o, FieldElement):
            return self.ctx == o.ctx and self.code == o.code
        if isinstance(o, int):
            return self.code == self.ctx.embed(o)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        if self.ctx.is_prime:
            return f"{self.code}"
        terms = [
            (f"{c}" if i == 0 else f"{'' if c == 1 else c}T" + (f"^{i}" if i > 1 else ""))
            for i, c in enumerate(self.coordinates)
            if c
        ]
        return " + ".join(reversed(terms)) or "0"


def field_ops(ctx: FieldCtx, op: str, *args: FieldElement | int) -> FieldElement:
    """Dispatch one of add/mul/neg/inv/pow; ``pow`` takes an element and an int exponent."""
    codes = [a.code if isinstance(a, FieldElement) else ctx.embed(a) for a in args]
    if op == "add":
        out = 0
        for c in codes:
            out = ctx.add(out, c)
    elif op == "mul":
        out = 1
        for c in codes:
            out = ctx.mul(out, c)
    elif op == "neg":
        (a,) = codes
        out = ctx.neg(a)
    elif op == "inv":
        (a,) = codes
        out = ctx.inv(a)
    elif op == "pow":
        a, k = args
        out = ctx.pow(a.code if isinstance(a, FieldElement) else ctx.embed(a), int(k))
    else:
        raise ValueError(f"unknown field op {op!r}")
    return FieldElement(ctx, out)


def frobenius(ctx: FieldCtx, x: FieldElement, e_pow: int) -> FieldElement:
    if e_pow < 1:
        raise ValueError("e_pow must be >= 1")
    return FieldElement(ctx, ctx.frob(x.code, e_pow))


@dataclass(frozen=True)
class PPolynomial:
    """Monic additive polynomial X^{p^h} + sum_{i<h} a_i X^{p^i}.

    ``lower_coeffs[i]`` is the code of a_i; the i = 0 term acts as multiplication by a_0.
    """

    ctx: FieldCtx
    lower_coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.lower_coeffs) < 1:
            raise ValueError("height must be >= 1")

    @classmethod
    def from_coeffs(cls, ctx: FieldCtx, coeffs: Sequence[int | FieldElement]) -> "PPolynomial":
        return cls(ctx, tuple(c.code if isinstance(c, FieldElement) else ctx.embed(c) for c in coeffs))

    @classmethod
    def frobenius_power(cls, ctx: FieldCtx, height: int = 1) -> "PPolynomial":
        """X^{p^height}."""
        return cls(ctx, (0,) * height)

    @property
    def height(self) -> int:
        return len(self.lower_coeffs)

    @property
    def degree(self) -> int:
        return self.ctx.p ** self.height

    def act(
        self,
        x: T,
        frob: Callable[[T], T],
        add: Callable[[T, T], T],
        scale: Callable[[int, T], T],
    ) -> T:
        """Evaluate g on x in any additive target carrying a Frobenius."""
        acc = None
        cur = x
        for a in self.lower_coeffs:
            if a:
                term = scale(a, cur)
                acc = term if acc is None else add(acc, term)
            cur = frob(cur)
        return cur if acc is None else add(acc, cur)

    def eval_code(self, x: int) -> int:
        ctx = self.ctx
        out = ctx.frob(x, self.height) if not ctx.is_prime else ctx.pow(x, self.degree)
        for i, a in enumerate(self.lower_coeffs):
            if a:
                out = ctx.add(out, ctx.mul(a, ctx.pow(x, ctx.p ** i)))
        return out

    def is_separable(self) -> bool:
        return self.lower_coeffs[0] != 0

    def expected_root_count(self) -> int:
        """Size of the root group over an algebraic closure: p^(h - first nonzero index)."""
        for i, a in enumerate(self.lower_coeffs):
            if a:
                return self.ctx.p ** (self.height - i)
        return 1

    def describe(self) -> str:
        p = self.ctx.p
        parts = [f"X^{p ** self.height}"]
        for i in range(self.height - 1, -1, -1):
            a = self.lower_coeffs[i]
            if a:
                coef = FieldElement(self.ctx, a)
                mono = "X" if i == 0 else f"X^{p ** i}"
                parts.append(mono if a == 1 else f"({coef!r})*{mono}")
        return " + ".join(parts)

    def to_dict(self) -> dict:
        return {"p": self.ctx.p, "height": self.height, "lower_coeffs": list(self.lower_coeffs)}


def ppoly_eval_scalar(g: PPolynomial, x: FieldElement) -> FieldElement:
    """g(x) for x in the coefficient field of g."""
    if x.ctx != g.ctx:
        raise FieldError("x must live in the coefficient field of g")
    return FieldElement(g.ctx, g.eval_code(x.code))


def roots_in(g: PPolynomial, ctx: FieldCtx | None = None) -> list[int]:
    """All roots of g in ``ctx`` (default: g's field), by exhaustion."""
    ctx = ctx or g.ctx
    if ctx != g.ctx:
        raise FieldError("root search only in the coefficient field; lift g first")
    return [x for x in ctx.elements() if g.eval_code(x) == 0]


def splitting_field_of(g: PPolynomial, max_degree: int = 8) -> tuple[FieldCtx, PPolynomial, list[int]]:
    """Smallest extension F_{q^f} (f <= max_degree) containing every root of g.

    Coefficients of g must lie in the prime field when f > 1 (the only case the cover
    pipeline produces); returns the lifted polynomial and its roots there.
    """
    want = g.expected_root_count()
    base = g.ctx
    for f in range(1, max_degree + 1):
        if base.q ** f > MAX_FIELD_SIZE:
            break
        if f == 1:
            rs = roots_in(g)
            if len(rs) == want:
                return base, g, rs
            continue
        if not base.is_prime:
            break
        ctx = gf(base.p, find_irreducible(base.p, f))
        lifted = PPolynomial(ctx, g.lower_coeffs)
        rs = roots_in(lifted)
        if len(rs) == want:
            return ctx, lifted, rs
    raise FieldError("roots of g not found within the extension budget")
