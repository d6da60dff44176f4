"""Exact arithmetic in Z/l^N and in unramified coefficient rings Z/l^N[x]/(h).

All values are immutable; every operation returns a canonical representative
with residues in [0, l^N).  The valuation of 0 is reported as an explicit
"at least N" sentinel rather than a fake large integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import RingMismatch

#: Sentinel returned by valuation() when the element vanishes at precision.
AT_LEAST_PRECISION = "at-least-precision"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrecisionContext:
    """Working prime l and coefficient precision exponent N (modulo l^N)."""

    ell: int
    N: int

    def __post_init__(self):
        if not _is_prime(self.ell):
            raise ValueError(f"ell = {self.ell} is not prime")
        if self.N < 1:
            raise ValueError("precision exponent N must be >= 1")

    @property
    def modulus(self) -> int:
        return self.ell ** self.N


# ---------------------------------------------------------------------------
# polynomial helpers over the residue field F_ell (dense little-endian tuples)
# ---------------------------------------------------------------------------

def _fp_trim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return tuple(a)


def _fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        if a[-1]:
            c = a[-1]
            for i in range(dm + 1):
                a[len(a) - 1 - dm + i] = (a[len(a) - 1 - dm + i] - c * m[i]) % p
        a.pop()
    return _fp_trim(a)


def _fp_powmod(a, e, m, p):
    result = (1,)
    base = _fp_mod(a, m, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        base = _fp_mod(_fp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = _fp_trim(a), _fp_trim(b)
    while b:
        # make b monic for division
        inv = pow(b[-1], p - 2, p)
        bm = tuple(c * inv % p for c in b)
        a, b = b, _fp_mod(a, bm, p)
    return a


def check_irreducible(h, ell: int) -> bool:
    """Irreducibility over the l-element field, by the x^(l^k) - x gcd test.

    `h` is a monic polynomial given as a little-endian coefficient sequence.
    """
    h = tuple(c % ell for c in h)
    d = len(h) - 1
    if d < 1 or h[-1] != 1:
        raise ValueError("h must be monic of degree >= 1")
    if d == 1:
        return True
    x = (0, 1)

    def _minus_x(poly):
        out = list(poly) + [0] * max(0, 2 - len(poly))
        out[1] = (out[1] - 1) % ell
        return _fp_trim(out)

    # x^(l^d) == x mod h is necessary ...
    if _minus_x(_fp_powmod(x, ell ** d, h, ell)) != ():
        return False
    # ... and no factor of degree k <= d/2 may divide: gcd(x^(l^k) - x, h) = 1
    for k in range(1, d // 2 + 1):
        g = _fp_gcd(h, _minus_x(_fp_powmod(x, ell ** k, h, ell)), ell)
        if len(g) - 1 >= 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(ell: int, degree: int):
    """Smallest monic polynomial of the given degree irreducible mod ell."""
    if degree == 1:
        return (0, 1)
    # enumerate lower coefficients lexicographically
    total = ell ** degree
    for code in range(total):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % ell)
            c //= ell
        h = tuple(coeffs) + (1,)
        if check_irreducible(h, ell):
            return h
    raise RuntimeError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class CoefRing:
    """Unramified coefficient ring Z/l^N[x]/(h), h monic and irreducible mod l."""

    ctx: PrecisionContext
    h: tuple = (0, 1)  # little-endian, monic; default h = x gives Z/l^N itself

    def __post_init__(self):
        q = self.ctx.modulus
        object.__setattr__(self, "h", tuple(c % q for c in self.h))
        if self.h[-1] != 1:
            raise ValueError("h must be monic")
        if not check_irreducible([c % self.ctx.ell for c in self.h], self.ctx.ell):
            raise ValueError("h must be irreducible modulo ell")

    @property
    def degree(self) -> int:
        return len(self.h) - 1

    @property
    def ell(self) -> int:
        return self.ctx.ell

    @property
    def precision(self) -> int:
        return self.ctx.N

    @property
    def modulus(self) -> int:
        return self.ctx.modulus

    def element(self, coeffs) -> "CoefElement":
        """Canonical element from an int or a little-endian coefficient list."""
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        q = self.modulus
        vec = [c % q for c in coeffs]
        # reduce degree by the monic defining polynomial
        d = self.degree
        while len(vec) > d:
            top = vec.pop()
            if top:
                for i in range(d):
                    vec[len(vec) - d + i] = (vec[len(vec) - d + i] - top * self.h[i]) % q
        vec += [0] * (d - len(vec))
        return CoefElement(self, tuple(vec))

    def zero(self) -> "CoefElement":
        return CoefElement(self, (0,) * self.degree)

    def one(self) -> "CoefElement":
        return self.element(1)


@dataclass(frozen=True)
class CoefElement:
    """Element of a CoefRing, held as exactly deg(h) canonical residues."""

    ring: CoefRing
    coeffs: tuple

    def _check(self, other: "CoefElement"):
        if self.ring != other.ring:
            raise RingMismatch("elements belong to different coefficient rings")

    def __add__(self, other):
        self._check(other)
        q = self.ring.modulus
        return CoefElement(self.ring, tuple((a + b) % q for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        q = self.ring.modulus
        return CoefElement(self.ring, tuple((a - b) % q for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, int):
            q = self.ring.modulus
            return CoefElement(self.ring, tuple(a * other % q for a in self.coeffs))
        self._check(other)
        prod = [0] * (2 * self.ring.degree - 1) if self.ring.degree > 1 else [0]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return self.ring.element(prod)

    __rmul__ = __mul__

    def __neg__(self):
        q = self.ring.modulus
        return CoefElement(self.ring, tuple(-a % q for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_unit(self) -> bool:
        return any(c % self.ring.ell for c in self.coeffs)

    def inverse(self) -> "CoefElement":
        """Inverse of a unit, by Newton lifting from the residue field."""
        if not self.is_unit():
            raise ZeroDivisionError("element is not a unit")
        ell, d = self.ring.ell, self.ring.degree
        hbar = tuple(c % ell for c in self.ring.h)
        abar = _fp_trim(tuple(c % ell for c in self.coeffs))
        # residue-field inverse: a^(ell^d - 2)
        inv0 = _fp_powmod(abar, ell ** d - 2, hbar, ell)
        x = self.ring.element(list(inv0))
        one = self.ring.one()
        # quadratic convergence: N correct digits after ~log2(N) rounds
        rounds = max(1, (self.ring.precision - 1).bit_length() + 1)
        for _ in range(rounds):
            x = x * (2 * one - self * x)
        return x

    def __pow__(self, e: int):
        result = self.ring.one()
        base = self
        if e < 0:
            base = self.inverse()
            e = -e
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def ring_arith(a: CoefElement, b: CoefElement, op: str) -> CoefElement:
    """Named-operation entry point: op in {"add", "sub", "mul"}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def valuation(a: CoefElement):
    """l-adic valuation; the ring is unramified so it is the min over coefficients.

    Returns AT_LEAST_PRECISION when a = 0 mod l^N.
    """
    if a.is_zero():
        return AT_LEAST_PRECISION
    ell = a.ring.ell
    best = None
    for c in a.coeffs:
        if c == 0:
            continue
        v = 0
        while c % ell == 0:
            c //= ell
            v += 1
        if best is None or v < best:
            best = v
    return best
