"""Arithmetic in the truncated Iwasawa algebra Z_phi[[T]], T = gamma - 1.

Provides the tower polynomials omega_n = (1+T)^(l^n) - 1, their exact
quotients nu(n, m) = omega_n / omega_m, distinguished-polynomial predicates
and division, and the witness that nu(n+1, n) factors as l * unit modulo a
distinguished polynomial once the level is high enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DegreeCapExceeded, InvalidRange, PrecisionTooLow
from .padic import AT_LEAST_PRECISION, CoefElement, CoefRing, valuation

#: Default guard against runaway polynomial degrees (fail loudly, never truncate).
DEFAULT_DEGREE_CAP = 8192


@dataclass(frozen=True)
class LambdaElement:
    """Polynomial in T with CoefElement coefficients, trailing zeros trimmed."""

    ring: CoefRing
    coeffs: tuple  # coeffs[i] is the coefficient of T^i

    @staticmethod
    def from_coeffs(ring: CoefRing, coeffs) -> "LambdaElement":
        vec = [c if isinstance(c, CoefElement) else ring.element(c) for c in coeffs]
        while vec and vec[-1].is_zero():
            vec.pop()
        return LambdaElement(ring, tuple(vec))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> CoefElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero()

    def __add__(self, other: "LambdaElement") -> "LambdaElement":
        n = max(len(self.coeffs), len(other.coeffs))
        return LambdaElement.from_coeffs(
            self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "LambdaElement") -> "LambdaElement":
        n = max(len(self.coeffs), len(other.coeffs))
        return LambdaElement.from_coeffs(
            self.ring, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, (int, CoefElement)):
            return LambdaElement.from_coeffs(self.ring, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return LambdaElement(self.ring, ())
        out = [self.ring.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return LambdaElement.from_coeffs(self.ring, out)

    __rmul__ = __mul__

    def __neg__(self) -> "LambdaElement":
        return LambdaElement.from_coeffs(self.ring, [-c for c in self.coeffs])

    def shift(self, k: int) -> "LambdaElement":
        """Multiply by T^k."""
        if self.is_zero():
            return self
        return LambdaElement(self.ring, (self.ring.zero(),) * k + self.coeffs)

    def int_coeffs(self):
        """Coefficients as plain residue tuples (degree-1 rings give ints)."""
        if self.ring.degree == 1:
            return tuple(c.coeffs[0] for c in self.coeffs)
        return tuple(c.coeffs for c in self.coeffs)


def omega(ring: CoefRing, n: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> LambdaElement:
    """The tower polynomial (1+T)^(l^n) - 1, monic of degree l^n."""
    ell = ring.ell
    if ell ** n > degree_cap:
        raise DegreeCapExceeded(f"omega({n}) has degree {ell**n} > cap {degree_cap}")
    e = ell ** n
    return LambdaElement.from_coeffs(ring, [0] + [comb(e, i) for i in range(1, e + 1)])


def nu(ring: CoefRing, n: int, m: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> LambdaElement:
    """Exact polynomial quotient omega_n / omega_m, for n >= m."""
    if n < m:
        raise InvalidRange(f"nu requires n >= m, got n={n}, m={m}")
    ell = ring.ell
    if ell ** n > degree_cap:
        raise DegreeCapExceeded(f"nu({n},{m}) needs degree {ell**n} > cap {degree_cap}")
    if n == m:
        return LambdaElement.from_coeffs(ring, [1])
    # omega_m is monic, so ordinary long division is exact here.
    q, r = _divmod_monic(omega(ring, n, degree_cap), omega(ring, m, degree_cap))
    assert r.is_zero(), "omega_m must divide omega_n exactly"
    return q


def _divmod_monic(g: LambdaElement, f: LambdaElement):
    """Long division by a monic polynomial over the coefficient ring."""
    ring = g.ring
    df = f.degree
    rem = list(g.coeffs)
    quot = [ring.zero()] * max(0, len(rem) - df)
    for i in range(len(rem) - 1, df - 1, -1):
        c = rem[i]
        if c.is_zero():
            continue
        quot[i - df] = c
        for j in range(df + 1):
            rem[i - df + j] = rem[i - df + j] - c * f.coeff(j)
    return (LambdaElement.from_coeffs(ring, quot),
            LambdaElement.from_coeffs(ring, rem[:df]))


def is_distinguished(f: LambdaElement) -> bool:
    """Monic with every non-leading coefficient of positive l-valuation."""
    if f.is_zero() or f.degree < 1:
        return False
    lead = f.coeffs[-1]
    if lead.coeffs != f.ring.one().coeffs:
        return False
    for c in f.coeffs[:-1]:
        v = valuation(c)
        if v is not AT_LEAST_PRECISION and v < 1:
            return False
    return True


@dataclass(frozen=True)
class DistinguishedPoly:
    """A LambdaElement checked to be distinguished at construction."""

    poly: LambdaElement

    def __post_init__(self):
        if not is_distinguished(self.poly):
            raise ValueError("polynomial is not distinguished")

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def ring(self) -> CoefRing:
        return self.poly.ring


def divmod_distinguished(g: LambdaElement, f: DistinguishedPoly):
    """g = q*f + r with deg r < deg f, exact at the ring's precision."""
    return _divmod_monic(g, f.poly)


class NotYetStable:
    """Sentinel: the l*unit factorization of nu(n+1, n) mod f has not set in yet."""

    def __repr__(self):  # pragma: no cover
        return "NotYetStable"


NOT_YET_STABLE = NotYetStable()


def nu_step_witness(f: DistinguishedPoly, n: int,
                    degree_cap: int = DEFAULT_DEGREE_CAP):
    """Witness (a_n, b_n) for nu(n+1, n) = l*(1 + l*a_n) + b_n*f, if it exists.

    The witness exists for all n large enough; for small n the factorization
    may fail, in which case NOT_YET_STABLE is returned.  When a witness is
    returned the identity re-multiplies exactly at the working precision.
    """
    ring = f.ring
    ell, N = ring.ell, ring.precision
    if N < 2:
        raise PrecisionTooLow("witness extraction needs precision N >= 2")
    step = nu(ring, n + 1, n, degree_cap)
    b, r = divmod_distinguished(step, f)
    # need r = l + l^2 * s with canonical residues: constant term = l mod l^2,
    # all higher coefficients = 0 mod l^2
    ell2 = ell * ell
    s_coeffs = []
    for i in range(f.degree):
        c = r.coeff(i)
        target = ell if i == 0 else 0
        resid = []
        for comp_index, comp in enumerate(c.coeffs):
            want = target if comp_index == 0 else 0
            if (comp - want) % ell2 != 0:
                return NOT_YET_STABLE
            resid.append((comp - want) // ell2)
        s_coeffs.append(ring.element(resid))
    a = LambdaElement.from_coeffs(ring, s_coeffs)
    return a, b
