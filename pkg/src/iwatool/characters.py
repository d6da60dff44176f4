"""l-adic character calculus for a finite abelian group of order prime to l.

Absolute characters of Delta = C_{d_1} x ... x C_{d_r} are exponent tuples;
l-adic irreducibles are their orbits under chi -> chi^l, labelled by the
lexicographically minimal member.  Virtual characters are integer combinations
of irreducibles.  All character values are handled by exponent arithmetic in
Z/d_i; idempotents realize root-of-unity values in an unramified extension of
Z/l^N so their group-algebra coefficients are honest residues.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod

from .errors import (EllIsTwo, NotASubgroup, OrderNotCoprime,
                     UnknownIrreducible)
from .padic import CoefElement, CoefRing, PrecisionContext, find_irreducible


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Product of cyclic groups; elements are exponent tuples mod d_i."""

    cyclic_orders: tuple

    def __post_init__(self):
        object.__setattr__(self, "cyclic_orders", tuple(int(d) for d in self.cyclic_orders))
        if any(d < 1 for d in self.cyclic_orders):
            raise ValueError("cyclic orders must be >= 1")

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders) if self.cyclic_orders else 1

    def elements(self):
        return itertools.product(*(range(d) for d in self.cyclic_orders))

    def reduce(self, g) -> tuple:
        if len(g) != len(self.cyclic_orders):
            raise ValueError("element arity does not match the group")
        return tuple(int(e) % d for e, d in zip(g, self.cyclic_orders))

    def add(self, g, h) -> tuple:
        return tuple((a + b) % d for a, b, d in zip(g, h, self.cyclic_orders))

    def neg(self, g) -> tuple:
        return tuple((-a) % d for a, d in zip(g, self.cyclic_orders))

    def subgroup_elements(self, generators) -> frozenset:
        """All elements of the subgroup generated by the given elements."""
        gens = [self.reduce(g) for g in generators]
        seen = {tuple(0 for _ in self.cyclic_orders)}
        frontier = list(seen)
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = self.add(cur, g)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)


@dataclass(frozen=True)
class AbsCharacter:
    """Absolute character as an exponent tuple; chi(g) = zeta^pairing(g)."""

    group: AbelianGroupSpec
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", self.group.reduce(self.exponents))

    def pairing(self, g) -> int:
        """Exponent of chi(g) as a residue mod d = exponent of a fixed
        primitive d-th root of unity, with d the group exponent lcm."""
        orders = self.group.cyclic_orders
        m = _lcm_all(orders)
        total = 0
        for e, gi, d in zip(self.exponents, self.group.reduce(g), orders):
            total += e * gi * (m // d)
        return total % m

    def power(self, k: int) -> "AbsCharacter":
        return AbsCharacter(self.group, tuple(e * k for e in self.exponents))

    def is_trivial_on(self, elements) -> bool:
        return all(self.pairing(g) == 0 for g in elements)


def _lcm_all(values):
    m = 1
    for v in values:
        m = m * v // gcd(m, v)
    return m


@dataclass(frozen=True)
class LadicIrreducible:
    """Frobenius orbit of absolute characters under chi -> chi^l."""

    group: AbelianGroupSpec
    ell: int
    orbit: tuple  # sorted exponent tuples; label = orbit[0]

    @property
    def label(self) -> tuple:
        return self.orbit[0]

    @property
    def degree(self) -> int:
        return len(self.orbit)

    def members(self):
        return tuple(AbsCharacter(self.group, e) for e in self.orbit)

    def value_sign_on(self, g) -> int:
        """+1/-1 when every orbit member takes that value on g; else raises."""
        m = _lcm_all(self.group.cyclic_orders)
        signs = set()
        for chi in self.members():
            p = chi.pairing(g)
            if p == 0:
                signs.add(1)
            elif 2 * p == m:
                signs.add(-1)
            else:
                raise ValueError("character value on g is not +-1")
        if len(signs) != 1:
            raise ValueError("orbit is not homogeneous on g")
        return signs.pop()


def enumerate_irreducibles(group: AbelianGroupSpec, ell: int):
    """All l-adic irreducibles: orbits of exponent tuples under multiplication
    by ell, labelled by the lexicographic minimum.  Degrees sum to |Delta|."""
    if gcd(group.order, ell) != 1:
        raise OrderNotCoprime(f"|Delta| = {group.order} is divisible by ell = {ell}")
    seen = set()
    out = []
    for exps in group.elements():
        if exps in seen:
            continue
        orbit = []
        cur = exps
        while cur not in orbit:
            orbit.append(cur)
            cur = group.reduce(tuple(e * ell for e in cur))
        orbit_sorted = tuple(sorted(orbit))
        seen.update(orbit)
        out.append(LadicIrreducible(group, ell, orbit_sorted))
    out.sort(key=lambda phi: phi.label)
    return out


class CharacterTable:
    """Fixed list of irreducibles for one (Delta, ell), with label lookup."""

    def __init__(self, group: AbelianGroupSpec, ell: int):
        self.group = group
        self.ell = ell
        self.irreducibles = enumerate_irreducibles(group, ell)
        self._by_label = {phi.label: phi for phi in self.irreducibles}

    def by_label(self, label) -> LadicIrreducible:
        label = self.group.reduce(label)
        if label not in self._by_label:
            raise UnknownIrreducible(f"no irreducible labelled {label}")
        return self._by_label[label]

    def containing(self, exponents) -> LadicIrreducible:
        """The irreducible whose orbit contains the given absolute character."""
        exps = self.group.reduce(exponents)
        for phi in self.irreducibles:
            if exps in phi.orbit:
                return phi
        raise UnknownIrreducible(f"no orbit contains {exps}")

    def regular_character(self) -> "VirtualCharacter":
        return VirtualCharacter(self, {phi.label: 1 for phi in self.irreducibles})

    def unit_character(self) -> "VirtualCharacter":
        unit = tuple(0 for _ in self.group.cyclic_orders)
        return VirtualCharacter(self, {unit: 1})

    def zero(self) -> "VirtualCharacter":
        return VirtualCharacter(self, {})


@dataclass(frozen=True)
class VirtualCharacter:
    """Integer combination of l-adic irreducibles over a fixed table."""

    table: CharacterTable
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for label, c in self.coeffs.items():
            label = self.table.group.reduce(label)
            self.table.by_label(label)  # validates
            if c:
                clean[label] = clean.get(label, 0) + int(c)
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        merged = dict(self.coeffs)
        for k, v in other.coeffs.items():
            merged[k] = merged.get(k, 0) + v
        return VirtualCharacter(self.table, merged)

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        merged = dict(self.coeffs)
        for k, v in other.coeffs.items():
            merged[k] = merged.get(k, 0) - v
        return VirtualCharacter(self.table, merged)

    def __mul__(self, scalar: int) -> "VirtualCharacter":
        return VirtualCharacter(self.table, {k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "VirtualCharacter":
        return self * -1

    def __eq__(self, other) -> bool:
        return isinstance(other, VirtualCharacter) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return sum(c * self.table.by_label(k).degree for k, c in self.coeffs.items())


def inner(chi: VirtualCharacter, phi: LadicIrreducible) -> int:
    """Coefficient of phi in chi."""
    table = chi.table
    if phi.group != table.group or phi.ell != table.ell:
        raise UnknownIrreducible("irreducible belongs to a different table")
    table.by_label(phi.label)
    return chi.coeffs.get(phi.label, 0)


def induce_unit(table: CharacterTable, subgroup_generators) -> VirtualCharacter:
    """Induced character of the unit of the subgroup: the sum of all
    irreducibles whose orbit is trivial on the subgroup."""
    group = table.group
    elems = group.subgroup_elements(subgroup_generators)
    if group.order % len(elems) != 0:
        raise NotASubgroup("generated set size does not divide the group order")
    coeffs = {}
    for phi in table.irreducibles:
        members = phi.members()
        trivial = [chi.is_trivial_on(elems) for chi in members]
        if all(trivial):
            coeffs[phi.label] = 1
        elif any(trivial):  # pragma: no cover - orbit homogeneity
            raise NotASubgroup("orbit not homogeneous for triviality")
    return VirtualCharacter(table, coeffs)


@dataclass(frozen=True)
class MirrorContext:
    """A designated involution tau and an imaginary degree-1 character omega."""

    table: CharacterTable
    tau: tuple
    omega_label: tuple

    def __post_init__(self):
        group = self.table.group
        object.__setattr__(self, "tau", group.reduce(self.tau))
        object.__setattr__(self, "omega_label", group.reduce(self.omega_label))
        if group.add(self.tau, self.tau) != tuple(0 for _ in group.cyclic_orders):
            raise ValueError("tau must square to the identity")
        omega = self.table.by_label(self.omega_label)
        if omega.degree != 1:
            raise ValueError("omega must have degree 1")
        if omega.value_sign_on(self.tau) != -1:
            raise ValueError("omega must take the value -1 on tau")

    @property
    def omega(self) -> LadicIrreducible:
        return self.table.by_label(self.omega_label)

    def omega_char(self) -> VirtualCharacter:
        return VirtualCharacter(self.table, {self.omega_label: 1})


def split_real_imag(chi: VirtualCharacter, ctx: MirrorContext):
    """(chi_plus, chi_minus): the parts on which tau acts by +1 and by -1."""
    if chi.table.ell == 2:
        raise EllIsTwo("real/imaginary splitting needs an odd prime")
    plus, minus = {}, {}
    for label, c in chi.coeffs.items():
        phi = chi.table.by_label(label)
        if phi.value_sign_on(ctx.tau) == 1:
            plus[label] = c
        else:
            minus[label] = c
    return VirtualCharacter(chi.table, plus), VirtualCharacter(chi.table, minus)


def mirror(chi: VirtualCharacter, ctx: MirrorContext) -> VirtualCharacter:
    """The involution sending each irreducible orbit of psi to the orbit of
    omega * psi^(-1), extended linearly."""
    table = chi.table
    group = table.group
    omega = ctx.omega_label
    out = {}
    for label, c in chi.coeffs.items():
        target = group.reduce(tuple(w - e for w, e in zip(omega, label)))
        star = table.containing(target)
        out[star.label] = out.get(star.label, 0) + c
    return VirtualCharacter(table, out)


def mirror_irreducible(phi: LadicIrreducible, ctx: MirrorContext) -> LadicIrreducible:
    """Mirror image of a single irreducible."""
    group = ctx.table.group
    target = group.reduce(tuple(w - e for w, e in zip(ctx.omega_label, phi.label)))
    return ctx.table.containing(target)


# ---------------------------------------------------------------------------
# idempotents over Z/l^N
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupAlgebraElement:
    """Element of (Z/l^N)[Delta], coefficients indexed by group elements."""

    group: AbelianGroupSpec
    ell: int
    N: int
    coeffs: dict  # element tuple -> residue in [0, l^N)

    def __add__(self, other):
        q = self.ell ** self.N
        merged = dict(self.coeffs)
        for g, c in other.coeffs.items():
            merged[g] = (merged.get(g, 0) + c) % q
        return GroupAlgebraElement(self.group, self.ell, self.N,
                                   {g: c for g, c in merged.items() if c})

    def __sub__(self, other):
        q = self.ell ** self.N
        merged = dict(self.coeffs)
        for g, c in other.coeffs.items():
            merged[g] = (merged.get(g, 0) - c) % q
        return GroupAlgebraElement(self.group, self.ell, self.N,
                                   {g: c for g, c in merged.items() if c})

    def __mul__(self, other):
        q = self.ell ** self.N
        out = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                gh = self.group.add(g, h)
                out[gh] = (out.get(gh, 0) + a * b) % q
        return GroupAlgebraElement(self.group, self.ell, self.N,
                                   {g: c for g, c in out.items() if c})

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebraElement)
                and self.coeffs == other.coeffs
                and (self.ell, self.N) == (other.ell, other.N))

    def __hash__(self):
        return hash((self.ell, self.N, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs


def _teichmuller_root(ring: CoefRing, m: int) -> CoefElement:
    """A primitive m-th root of unity in Z/l^N[y]/(h), as a Teichmuller lift.

    Requires m | l^deg(h) - 1.  Found by projecting residue-field candidates
    to the m-torsion and lifting by iterated l^deg-th powers.
    """
    ell, d, N = ring.ell, ring.degree, ring.precision
    group_order = ell ** d - 1
    assert group_order % m == 0
    cof = group_order // m
    prime_divs = _prime_divisors(m)
    for code in range(1, ell ** d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % ell)
            c //= ell
        a = ring.element(coeffs)
        b = a ** cof
        # order check in the residue field suffices for Teichmuller lifts
        if any(_residue_is_one(b ** (m // p), ell) for p in prime_divs):
            continue
        # Teichmuller lift: iterate x -> x^(l^d) to convergence
        for _ in range(N):
            b = b ** (ell ** d)
        return b
    raise RuntimeError("no primitive root found")  # pragma: no cover


def _residue_is_one(a: CoefElement, ell: int) -> bool:
    vec = [c % ell for c in a.coeffs]
    return vec[0] == 1 and all(v == 0 for v in vec[1:])


def _prime_divisors(m: int):
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def idempotent(phi: LadicIrreducible, N: int) -> GroupAlgebraElement:
    """The central idempotent (1/d) * sum_g Tr(phi(g^(-1))) g over Z/l^N.

    Tr is the orbit sum, which is Frobenius-stable and therefore lies in
    Z/l^N even though individual character values live in an unramified
    extension realized internally.
    """
    group = phi.group
    ell = phi.ell
    d = group.order
    m = _lcm_all(group.cyclic_orders) if group.cyclic_orders else 1
    # multiplicative order of ell mod m = degree of the splitting extension
    f = 1
    if m > 1:
        while pow(ell, f, m) != 1:
            f += 1
    ctx = PrecisionContext(ell, N)
    ring = CoefRing(ctx, find_irreducible(ell, f))
    q = ell ** N
    inv_d = pow(d % q, -1, q)
    zeta = _teichmuller_root(ring, m) if m > 1 else ring.one()
    coeffs = {}
    for g in group.elements():
        ginv = group.neg(g)
        total = ring.zero()
        for chi in phi.members():
            total = total + zeta ** chi.pairing(ginv)
        # the orbit sum is Galois-stable, hence a scalar
        assert all(c == 0 for c in total.coeffs[1:]), "orbit trace not rational"
        val = total.coeffs[0] * inv_d % q
        if val:
            coeffs[g] = val
    return GroupAlgebraElement(group, ell, N, coeffs)
