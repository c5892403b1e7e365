"""Exact arithmetic over GF(p^n) and GR(4,n), plus Latin squares and Hadamard matrices.

Field and ring elements use polynomial coefficient tuples, low degree first:
the polynomial c_0 + c_1 x + ... + c_{n-1} x^{n-1} is ``(c_0, c_1, ..., c_{n-1})``.
Field elements are also numbered by the integer ``sum(c_i * p**i)``; that
numbering fixes the enumeration order 0, 1, ..., x, x+1, ... used by the
constructions.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import cache, cached_property

import numpy as np

DESK_LIMIT = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % f for f in range(3, math.isqrt(n) + 1, 2))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``q == p**n``, or None if q is not a prime power."""
    if q < 2:
        return None
    factors = factorize(q)
    if len(factors) != 1:
        return None
    return next(iter(factors.items()))


# -- polynomials over Z_m, coefficient tuples low degree first ---------------

def _poly_mulmod(a, b, modulus, m):
    """Product of a and b reduced modulo the monic polynomial ``modulus`` over Z_m."""
    n = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k] % m
        if c:
            for i in range(n + 1):
                prod[k - n + i] -= c * modulus[i]
    out = [c % m for c in prod[:n]]
    out += [0] * (n - len(out))
    return tuple(out)


def _poly_divides(f, g, p) -> bool:
    """True iff monic f divides g over F_p."""
    g = [c % p for c in g]
    df = len(f) - 1
    for k in range(len(g) - 1, df - 1, -1):
        c = g[k]
        if c:
            for i in range(df + 1):
                g[k - df + i] = (g[k - df + i] - c * f[i]) % p
    return not any(g[:df])


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= n/2."""
    n = len(modulus) - 1
    if n < 1 or modulus[-1] % p != 1:
        return False
    for deg in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _poly_divides(low + (1,), modulus, p):
                return False
    return True


def _x_order(modulus, m, limit):
    """Multiplicative order of x modulo ``modulus`` over Z_m, or None if it exceeds limit."""
    n = len(modulus) - 1
    one = (1,) + (0,) * (n - 1)
    x = (0, 1) + (0,) * (n - 2) if n > 1 else ((-modulus[0]) % m,)
    y = x
    for k in range(1, limit + 1):
        if y == one:
            return k
        y = _poly_mulmod(y, x, modulus, m)
    return None


def _is_primitive(modulus, p) -> bool:
    if modulus[0] % p == 0:
        return False
    q = p ** (len(modulus) - 1)
    return _x_order(modulus, p, q - 1) == q - 1


def smallest_primitive_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of degree n over F_p.

    Coefficient tuples are compared low degree first.
    """
    for low in itertools.product(range(p), repeat=n):
        cand = low + (1,)
        if _is_primitive(cand, p):
            return cand
    raise ArithmeticError(f"no primitive polynomial of degree {n} over F_{p}")  # pragma: no cover


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    phi_factors = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in phi_factors):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")  # pragma: no cover


# -- GF(p^n) -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    """The field GF(p^n) realised as F_p[x]/(modulus).

    ``primitive`` records whether x itself generates the multiplicative group.
    For n == 1 the modulus is just ``x`` and the multiplicative group is
    generated by the smallest primitive root mod p instead.
    """

    p: int
    n: int
    modulus: tuple[int, ...]
    primitive: bool

    @property
    def order(self) -> int:
        return self.p**self.n

    @cached_property
    def generator(self) -> int:
        """Index of the element used for the exp/log tables."""
        return self.p if self.n > 1 else _primitive_root(self.p)

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.order
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        g = self.coeffs(self.generator)
        y = self.coeffs(1)
        for k in range(q - 1):
            idx = self.index(y)
            if log[idx] >= 0:
                raise ArithmeticError("generator is not primitive")
            exp[k] = idx
            log[idx] = k
            y = self._mul_coeffs(y, g)
        exp.setflags(write=False)
        log.setflags(write=False)
        return exp, log

    @cached_property
    def trace_table(self) -> np.ndarray:
        """``trace_table[i]`` is the absolute trace of the element numbered i."""
        table = np.array([field_trace(e) for e in self.elements()], dtype=np.int64)
        table.setflags(write=False)
        return table

    def _mul_coeffs(self, a, b):
        if self.n == 1:
            return ((a[0] * b[0]) % self.p,)
        return _poly_mulmod(a, b, self.modulus, self.p)

    def coeffs(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            index, c = divmod(index, self.p)
            out.append(c)
        return tuple(out)

    def index(self, coeffs) -> int:
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def element(self, value) -> FieldElement:
        """Element from an index (int) or a coefficient sequence."""
        if isinstance(value, (int, np.integer)):
            return FieldElement(self.coeffs(int(value) % self.order), self)
        coeffs = tuple(int(c) % self.p for c in value)
        return FieldElement(coeffs + (0,) * (self.n - len(coeffs)), self)

    def elements(self) -> list[FieldElement]:
        """All elements in enumeration order."""
        return [self.element(i) for i in range(self.order)]

    def zero(self) -> FieldElement:
        return self.element(0)

    def one(self) -> FieldElement:
        return self.element(1)

    def mul_index(self, a, b):
        """Vectorised product on element indices (numpy broadcasting)."""
        exp, log = self._exp_log
        a = np.asarray(a)
        b = np.asarray(b)
        la, lb = log[a], log[b]
        prod = exp[(la + lb) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, prod)


@cache
def field_ctx(p: int, n: int = 1, limit: int = DESK_LIMIT) -> FieldCtx:
    """Canonical context for GF(p^n).

    For n >= 2 the modulus is the smallest primitive polynomial, so x generates
    the multiplicative group.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    if p**n > limit:
        raise ValueError(f"GF({p}^{n}) exceeds the size limit {limit}")
    if n == 1:
        return FieldCtx(p, 1, (0, 1), primitive=(p == 2))
    return FieldCtx(p, n, smallest_primitive_polynomial(p, n), primitive=True)


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    ctx: FieldCtx = field(repr=False)

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.n or not all(0 <= c < self.ctx.p for c in self.coeffs):
            raise ValueError(f"malformed element {self.coeffs} of GF({self.ctx.p}^{self.ctx.n})")

    @property
    def index(self) -> int:
        return self.ctx.index(self.coeffs)

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, int):
            return self.ctx.element((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.ctx)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(tuple((-a) % p for a in self.coeffs), self.ctx)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx._mul_coeffs(self.coeffs, other.coeffs), self.ctx)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not self:
            if k < 0:
                raise ZeroDivisionError("zero has no inverse")
            return self.ctx.one() if k == 0 else self
        exp, log = self.ctx._exp_log
        return self.ctx.element(int(exp[(int(log[self.index]) * k) % (self.ctx.order - 1)]))

    def inverse(self) -> FieldElement:
        return self ** -1

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def frobenius(self) -> FieldElement:
        """The map x -> x^p."""
        return self ** self.ctx.p

    def __int__(self):
        return self.index


def field_trace(x: FieldElement) -> int:
    """Absolute trace GF(p^n) -> F_p, the sum of the Frobenius conjugates of x."""
    total = x.ctx.zero()
    y = x
    for _ in range(x.ctx.n):
        total = total + y
        y = y.frobenius()
    if any(total.coeffs[1:]):
        raise ArithmeticError(f"trace of {x.coeffs} left the prime field")  # pragma: no cover
    return total.coeffs[0]


# -- GR(4, n) ----------------------------------------------------------------

def hensel_lift(g: tuple[int, ...]) -> tuple[int, ...]:
    """Lift a monic polynomial g over F_2 to the basic irreducible h over Z_4 with h(x^2) = ±g(x)g(-x).

    The roots of h are the squares of lifted roots of g, so when g is primitive
    the residue of x in Z_4[x]/(h) has multiplicative order 2^n - 1.
    """
    n = len(g) - 1
    g_neg = [c * (-1) ** i for i, c in enumerate(g)]
    prod = [0] * (2 * n + 1)
    for i, a in enumerate(g):
        for j, b in enumerate(g_neg):
            prod[i + j] += a * b
    if any(prod[1::2]):
        raise ArithmeticError("odd terms survived in g(x)g(-x)")  # pragma: no cover
    sign = (-1) ** n
    return tuple((sign * c) % 4 for c in prod[0::2])


@dataclass(frozen=True)
class RingCtx:
    """The Galois ring GR(4,n) = Z_4[x]/(modulus) with its Teichmüller set.

    ``teichmuller`` is ordered ``(0, 1, xi, xi^2, ..., xi^(2^n - 2))`` with xi
    the residue of x.
    """

    n: int
    modulus: tuple[int, ...]
    teichmuller: tuple[tuple[int, ...], ...]

    @cached_property
    def _residue_lookup(self) -> dict[tuple[int, ...], int]:
        return {tuple(c % 2 for c in t): i for i, t in enumerate(self.teichmuller)}

    @cached_property
    def teichmuller_trace(self) -> np.ndarray:
        """``teichmuller_trace[i]`` is tr(T_i) for the i-th Teichmüller element."""
        table = np.array([ring_trace(self.element(t)) for t in self.teichmuller], dtype=np.int64)
        table.setflags(write=False)
        return table

    def element(self, coeffs) -> RingElement:
        coeffs = tuple(int(c) % 4 for c in coeffs)
        return RingElement(coeffs + (0,) * (self.n - len(coeffs)), self)

    def teichmuller_elements(self) -> list[RingElement]:
        return [RingElement(t, self) for t in self.teichmuller]

    def elements(self) -> list[RingElement]:
        return [RingElement(c, self) for c in itertools.product(range(4), repeat=self.n)]

    def teichmuller_index(self, r: RingElement) -> int:
        """Position of r in the Teichmüller list, raising ValueError if absent."""
        i = self._residue_lookup[tuple(c % 2 for c in r.coeffs)]
        if self.teichmuller[i] != r.coeffs:
            raise ValueError(f"{r.coeffs} is not a Teichmüller element")
        return i

    def _mul_coeffs(self, a, b):
        return _poly_mulmod(a, b, self.modulus, 4)


@cache
def ring_ctx(n: int, limit: int = DESK_LIMIT) -> RingCtx:
    """Canonical context for GR(4,n), lifted from the smallest primitive polynomial over F_2."""
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    if 2**n > limit:
        raise ValueError(f"GR(4,{n}) exceeds the size limit {limit}")
    h = hensel_lift(smallest_primitive_polynomial(2, n))
    one = (1,) + (0,) * (n - 1)
    xi = _poly_mulmod(one, (0, 1), h, 4)
    powers = [one]
    for _ in range(2**n - 2):
        powers.append(_poly_mulmod(powers[-1], xi, h, 4))
    if _poly_mulmod(powers[-1], xi, h, 4) != one:
        raise ArithmeticError(f"xi^(2^{n}-1) != 1 in GR(4,{n})")
    if len(set(powers)) != len(powers):
        raise ArithmeticError(f"xi has order below 2^{n}-1 in GR(4,{n})")
    return RingCtx(n, h, ((0,) * n,) + tuple(powers))


@dataclass(frozen=True)
class RingElement:
    coeffs: tuple[int, ...]
    ctx: RingCtx = field(repr=False)

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.n or not all(0 <= c < 4 for c in self.coeffs):
            raise ValueError(f"malformed element {self.coeffs} of GR(4,{self.ctx.n})")

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ctx != self.ctx:
                raise ValueError("elements belong to different rings")
            return other
        if isinstance(other, int):
            return self.ctx.element((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(tuple((a + b) % 4 for a, b in zip(self.coeffs, other.coeffs)), self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(tuple((-a) % 4 for a in self.coeffs), self.ctx)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ctx._mul_coeffs(self.coeffs, other.coeffs), self.ctx)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported in GR(4,n)")
        out = self.ctx.element((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.coeffs)


def two_adic_decompose(r: RingElement) -> tuple[RingElement, RingElement]:
    """Unique ``(a, b)`` with a, b Teichmüller and ``r == a + 2*b``."""
    ctx = r.ctx
    a = ctx.teichmuller[ctx._residue_lookup[tuple(c % 2 for c in r.coeffs)]]
    diff = tuple((x - y) % 4 for x, y in zip(r.coeffs, a))
    b = ctx.teichmuller[ctx._residue_lookup[tuple(c // 2 for c in diff)]]
    return RingElement(a, ctx), RingElement(b, ctx)


def ring_frobenius(r: RingElement) -> RingElement:
    """The map a + 2b -> a^2 + 2b^2."""
    a, b = two_adic_decompose(r)
    return a * a + 2 * (b * b)


def ring_trace(r: RingElement) -> int:
    """Generalized trace GR(4,n) -> Z_4."""
    total = r.ctx.element(())
    y = r
    for _ in range(r.ctx.n):
        total = total + y
        y = ring_frobenius(y)
    if any(total.coeffs[1:]):
        raise ArithmeticError(f"trace of {r.coeffs} left Z_4")  # pragma: no cover
    return total.coeffs[0]


# -- combinatorial ingredients -------------------------------------------------

@dataclass(frozen=True)
class LatinSquare:
    """A d x d Latin square over the symbols 1..d."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.grid)
        symbols = set(range(1, d + 1))
        if any(len(row) != d for row in self.grid):
            raise ValueError("Latin square must be square")
        if any(set(row) != symbols for row in self.grid):
            raise ValueError("every row must be a permutation of 1..d")
        if any(set(col) != symbols for col in zip(*self.grid)):
            raise ValueError("every column must be a permutation of 1..d")

    @property
    def order(self) -> int:
        return len(self.grid)

    def is_orthogonal_to(self, other: LatinSquare) -> bool:
        d = self.order
        if other.order != d:
            return False
        pairs = {(a, b) for ra, rb in zip(self.grid, other.grid) for a, b in zip(ra, rb)}
        return len(pairs) == d * d


def mols(d: int) -> list[LatinSquare]:
    """The d-1 mutually orthogonal Latin squares L_a(i, j) = a*i + j over GF(d)."""
    pp = prime_power(d)
    if pp is None:
        raise ValueError(
            f"order {d} is not a prime power; only the finite-field family is generated, "
            "supply your own mutually orthogonal Latin squares instead"
        )
    ctx = field_ctx(*pp)
    idx = np.arange(d)
    squares = []
    for a in range(1, d):
        ai = ctx.mul_index(a, idx)
        grid = [[(x + y).index + 1 for y in ctx.elements()] for x in (ctx.element(int(v)) for v in ai)]
        squares.append(LatinSquare(tuple(tuple(r) for r in grid)))
    for s, t in itertools.combinations(squares, 2):
        if not s.is_orthogonal_to(t):
            raise ArithmeticError("generated squares are not orthogonal")  # pragma: no cover
    return squares


@cache
def root_of_unity(m: int, order: int) -> complex:
    """exp(2 pi i m / order), exact on the real and imaginary axes."""
    g = math.gcd(m, order)
    m, order = (m // g) % (order // g), order // g
    if (4 * m) % order == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[4 * m // order]
    return cmath.exp(2j * math.pi * m / order)


def roots_of_unity(exponents, order: int) -> np.ndarray:
    """Vectorised :func:`root_of_unity` over an integer array."""
    exponents = np.asarray(exponents) % order
    table = np.array([root_of_unity(m, order) for m in range(order)], dtype=complex)
    return table[exponents]


def fourier_hadamard(d: int) -> np.ndarray:
    """The d x d Fourier matrix with H[j, k] = exp(2 pi i j k / d), unnormalised."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    jk = np.outer(np.arange(d), np.arange(d))
    return roots_of_unity(jk, d)


def is_hadamard(h: np.ndarray, tol: float = 1e-10) -> bool:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        return False
    d = h.shape[0]
    return bool(
        np.max(np.abs(np.abs(h) - 1)) <= tol
        and np.max(np.abs(h @ h.conj().T - d * np.eye(d))) <= tol * d
    )
