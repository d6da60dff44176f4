"""Parameter calculus for towers with decomposition data at a finite set of places.

Given the group Delta with its involution tau and imaginary character omega,
place data (decomposition subgroups, wild/tame, local degrees, multiplicities)
partitioned into sets S and T, and a referent table of real invariants indexed
by subsets of the wild places, this module derives the full invariants:

    rho = imaginary part of delta_T
    mu  = mu_plus[T_wild] + mirror(mu_plus[complement])
    lam = lam_plus[T_wild] + mirror(lam_plus[complement] + (chi_complement_plus - 1))
          + mirror(chi_{T tame}) - (chi_{S wild})_minus    [needs the Leopoldt flag]

with the unit character added exactly when S is empty and T is exactly the
wild set.  Mirror-identity and duality consistency checks are included.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .characters import (CharacterTable, MirrorContext, VirtualCharacter,
                         induce_unit, mirror, split_real_imag)
from .errors import (LeopoldtNotAssumed, MalformedInput, MissingReferent,
                     PreconditionSUnionT, UnknownPlace)


@dataclass(frozen=True)
class PlaceSpec:
    """One stabilized place of the base field with its splitting data."""

    id: str
    subgroup_generators: tuple  # generators of the decomposition subgroup
    wild: bool
    local_degree: int | None = None
    multiplicity: int = 1
    membership: str = "none"  # "S" | "T" | "none"

    def __post_init__(self):
        if self.wild and (self.local_degree is None or self.local_degree < 1):
            raise MalformedInput(
                f"place {self.id}: wild places need a positive local_degree")
        if not self.wild and self.local_degree is not None:
            raise MalformedInput(
                f"place {self.id}: tame places must not carry local_degree")
        if self.multiplicity < 1:
            raise MalformedInput(f"place {self.id}: multiplicity must be >= 1")
        if self.membership not in ("S", "T", "none"):
            raise MalformedInput(
                f"place {self.id}: membership must be 'S', 'T' or 'none'")


@dataclass(frozen=True)
class TowerInput:
    """Group data, degree and the place list with S/T membership tags."""

    table: CharacterTable
    ctx: MirrorContext
    F_degree: int
    places: tuple

    def __post_init__(self):
        if self.F_degree < 1:
            raise MalformedInput("F_degree must be >= 1")
        ids = [p.id for p in self.places]
        if len(set(ids)) != len(ids):
            raise MalformedInput("duplicate place ids")
        wild_total = sum(p.local_degree * p.multiplicity
                         for p in self.places if p.wild)
        if self.places and any(p.wild for p in self.places) \
                and wild_total != self.F_degree:
            warnings.warn(
                "sum of wild local degrees does not equal F_degree; "
                "treating the place list as partial", stacklevel=2)

    def place(self, pid: str) -> PlaceSpec:
        for p in self.places:
            if p.id == pid:
                return p
        raise UnknownPlace(f"no place with id {pid!r}")

    def select(self, selector):
        """Places chosen by 'S' / 'T' / 'L' (all wild) or an iterable of ids."""
        if selector == "S":
            return tuple(p for p in self.places if p.membership == "S")
        if selector == "T":
            return tuple(p for p in self.places if p.membership == "T")
        if selector == "L":
            return tuple(p for p in self.places if p.wild)
        return tuple(self.place(pid) for pid in selector)

    def wild_ids(self) -> frozenset:
        return frozenset(p.id for p in self.places if p.wild)

    def with_swapped_sets(self) -> "TowerInput":
        """The same tower with the S and T roles exchanged."""
        swap = {"S": "T", "T": "S", "none": "none"}
        places = tuple(
            PlaceSpec(p.id, p.subgroup_generators, p.wild, p.local_degree,
                      p.multiplicity, swap[p.membership])
            for p in self.places)
        return TowerInput(self.table, self.ctx, self.F_degree, places)


def chi_of_set(tower: TowerInput, selector) -> VirtualCharacter:
    """Sum over the selected places of multiplicity * induced unit character."""
    total = tower.table.zero()
    for p in tower.select(selector):
        total = total + p.multiplicity * induce_unit(
            tower.table, p.subgroup_generators)
    return total


def delta_of_set(tower: TowerInput, selector) -> VirtualCharacter:
    """(Total wild local degree of the set) times the regular character."""
    deg = sum(p.local_degree * p.multiplicity
              for p in tower.select(selector) if p.wild)
    return deg * tower.table.regular_character()


def chi_infinity(tower: TowerInput) -> VirtualCharacter:
    """F_degree times the real part of the regular character."""
    plus, _ = split_real_imag(tower.table.regular_character(), tower.ctx)
    return tower.F_degree * plus


def rho_ST(tower: TowerInput) -> VirtualCharacter:
    """Imaginary part of delta_T; independent of S."""
    _, minus = split_real_imag(delta_of_set(tower, "T"), tower.ctx)
    return minus


class ReferentTable:
    """Real referent invariants mu_plus[U], lambda_plus[U] per wild subset U."""

    def __init__(self, ctx: MirrorContext, entries: dict):
        self.ctx = ctx
        self.entries = {}
        for subset, (mu_plus, lam_plus) in entries.items():
            key = frozenset(subset)
            for name, chi in (("mu", mu_plus), ("lambda", lam_plus)):
                _, minus = split_real_imag(chi, ctx)
                if not minus.is_zero():
                    raise MalformedInput(
                        f"referent {name} entry for {sorted(key)} is not totally real")
            self.entries[key] = (mu_plus, lam_plus)

    def get(self, subset) -> tuple:
        key = frozenset(subset)
        if key not in self.entries:
            raise MissingReferent(f"no referent entry for subset {sorted(key)}")
        return self.entries[key]


def _wild_complement(tower: TowerInput, subset) -> frozenset:
    return tower.wild_ids() - frozenset(subset)


def mu_ST(tower: TowerInput, referents: ReferentTable) -> VirtualCharacter:
    """mu_plus of the wild part of T plus the mirror of the complementary
    referent; reads neither S nor the tame part of T."""
    U = frozenset(p.id for p in tower.select("T") if p.wild)
    Ubar = _wild_complement(tower, U)
    mu_u, _ = referents.get(U)
    mu_ubar, _ = referents.get(Ubar)
    return mu_u + mirror(mu_ubar, tower.ctx)


def _is_special_case(tower: TowerInput) -> bool:
    """S empty and T exactly the set of wild places."""
    if tower.select("S"):
        return False
    t_ids = frozenset(p.id for p in tower.select("T"))
    return t_ids == tower.wild_ids()


def lambda_ST(tower: TowerInput, referents: ReferentTable,
              assume_leopoldt: bool) -> VirtualCharacter:
    """The lambda invariant for (S, T); conditional on the Leopoldt flag."""
    if not assume_leopoldt:
        raise LeopoldtNotAssumed(
            "the lambda formula is conditional; pass assume_leopoldt=True")
    ctx = tower.ctx
    table = tower.table
    U = frozenset(p.id for p in tower.select("T") if p.wild)
    Ubar = _wild_complement(tower, U)
    _, lam_u_plus = referents.get(U)
    _, lam_ubar_plus = referents.get(Ubar)
    chi_ubar_plus, _ = split_real_imag(chi_of_set(tower, Ubar), ctx)
    t_tame = tuple(p.id for p in tower.select("T") if not p.wild)
    chi_t_tame = chi_of_set(tower, t_tame)
    s_wild = tuple(p.id for p in tower.select("S") if p.wild)
    _, chi_s_wild_minus = split_real_imag(chi_of_set(tower, s_wild), ctx)
    lam = (lam_u_plus
           + mirror(lam_ubar_plus + chi_ubar_plus - table.unit_character(), ctx)
           + mirror(chi_t_tame, ctx)
           - chi_s_wild_minus)
    if _is_special_case(tower):
        lam = lam + table.unit_character()
    return lam


@dataclass(frozen=True)
class ParamResult:
    """Complete derived parameter set for one (S, T) configuration."""

    rho: VirtualCharacter
    mu: VirtualCharacter
    lam: VirtualCharacter
    special_case: bool
    notes: tuple = ()


def compute_params(tower: TowerInput, referents: ReferentTable,
                   assume_leopoldt: bool) -> ParamResult:
    """rho, mu and lambda together, with provenance notes for the report."""
    U = sorted(p.id for p in tower.select("T") if p.wild)
    Ubar = sorted(_wild_complement(tower, U))
    notes = (
        f"referent subsets used: {U} and {Ubar}",
        "lambda conditional on the Leopoldt flag",
    )
    special = _is_special_case(tower)
    if special:
        notes += ("special case S empty, T = wild set: unit character added",)
    return ParamResult(
        rho=rho_ST(tower),
        mu=mu_ST(tower, referents),
        lam=lambda_ST(tower, referents, assume_leopoldt),
        special_case=special,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# consistency checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MirrorIdentityReport:
    identity_rho: bool   # doubled form: 2 rho + chi_inf + delta_S mirrors over
    identity_mu: bool
    identity_lambda: bool
    details: tuple = ()

    def all_hold(self) -> bool:
        return self.identity_rho and self.identity_mu and self.identity_lambda


def check_mirror_identities(tower: TowerInput, referents: ReferentTable,
                            assume_leopoldt: bool = True) -> MirrorIdentityReport:
    """Verify the three exchange identities between (S, T) and (T, S).

    Requires S union T to contain every wild place.  The rho identity
    involves an exact half; it is checked in doubled form to stay integral.
    """
    st_ids = {p.id for p in tower.places if p.membership in ("S", "T")}
    if not tower.wild_ids() <= st_ids:
        raise PreconditionSUnionT(
            "S union T must contain all wild places for the mirror identities")
    ctx = tower.ctx
    swapped = tower.with_swapped_sets()
    # identity (rho): 2 rho_ST + chi_inf + delta_S = mirror(2 rho_TS + chi_inf + delta_T)
    lhs_r = 2 * rho_ST(tower) + chi_infinity(tower) + delta_of_set(tower, "S")
    rhs_r = mirror(2 * rho_ST(swapped) + chi_infinity(swapped)
                   + delta_of_set(swapped, "S"), ctx)
    # identity (mu): mu_ST = mirror(mu_TS)
    lhs_m = mu_ST(tower, referents)
    rhs_m = mirror(mu_ST(swapped, referents), ctx)
    # identity (lambda): lambda_ST + chi_S - 1 = mirror(lambda_TS + chi_T - 1)
    one = tower.table.unit_character()
    lhs_l = lambda_ST(tower, referents, assume_leopoldt) + chi_of_set(tower, "S") - one
    rhs_l = mirror(lambda_ST(swapped, referents, assume_leopoldt)
                   + chi_of_set(swapped, "S") - one, ctx)
    details = []
    for name, a, b in (("rho", lhs_r, rhs_r), ("mu", lhs_m, rhs_m),
                       ("lambda", lhs_l, rhs_l)):
        if a != b:
            details.append(f"{name}: difference {(a - b).coeffs}")
    return MirrorIdentityReport(lhs_r == rhs_r, lhs_m == rhs_m,
                                lhs_l == rhs_l, tuple(details))


def reconstruct_full_lambda(tower: TowerInput, referents: ReferentTable,
                            subset) -> VirtualCharacter:
    """Full lambda invariant of a wild subset U: the (S = empty, T = U) value
    with no tame places and no special-case adjustment."""
    U = frozenset(subset)
    Ubar = _wild_complement(tower, U)
    _, lam_u_plus = referents.get(U)
    _, lam_ubar_plus = referents.get(Ubar)
    chi_ubar_plus, _ = split_real_imag(chi_of_set(tower, Ubar), tower.ctx)
    return lam_u_plus + mirror(
        lam_ubar_plus + chi_ubar_plus - tower.table.unit_character(), tower.ctx)


def check_lambda_referent_duality(tower: TowerInput, referents: ReferentTable,
                                  full_lambda: dict | None = None) -> dict:
    """For each wild subset U with complement in the table, verify

        imaginary part of lambda[complement] = mirror(lambda_plus[U] + chi_U_plus - 1).

    Full lambda values default to the reconstruction above; a dict of
    externally supplied full values (keyed by frozenset of ids) overrides it.
    """
    ctx = tower.ctx
    out = {}
    for U in sorted(referents.entries, key=sorted):
        Ubar = _wild_complement(tower, U)
        if Ubar not in referents.entries:
            raise MissingReferent(f"complement of {sorted(U)} missing from table")
        if full_lambda is not None and frozenset(Ubar) in full_lambda:
            lam_ubar = full_lambda[frozenset(Ubar)]
        else:
            lam_ubar = reconstruct_full_lambda(tower, referents, Ubar)
        _, lhs = split_real_imag(lam_ubar, ctx)
        _, lam_u_plus = referents.get(U)
        chi_u_plus, _ = split_real_imag(chi_of_set(tower, U), ctx)
        rhs = mirror(lam_u_plus + chi_u_plus - tower.table.unit_character(), ctx)
        out[tuple(sorted(U))] = (lhs == rhs)
    return out


def check_mu_bound(tower: TowerInput, referents: ReferentTable):
    """Componentwise bound  <mirror(mu_ST) + mu_ST, phi> <= <mu_top + mu_bot, phi>

    where mu_top is the full mu of the whole wild set and mu_bot that of the
    empty set.  The left-hand mirror reading is recorded in the report.
    Returns (holds, first_violation, note).
    """
    ctx = tower.ctx
    m = mu_ST(tower, referents)
    lhs = mirror(m, ctx) + m
    mu_L_plus, _ = referents.get(tower.wild_ids())
    mu_0_plus, _ = referents.get(frozenset())
    mu_top = mu_L_plus + mirror(mu_0_plus, ctx)
    mu_bot = mu_0_plus + mirror(mu_L_plus, ctx)
    rhs = mu_top + mu_bot
    note = "left-hand side read as mirror(mu) + mu"
    for phi in tower.table.irreducibles:
        a = lhs.coeffs.get(phi.label, 0)
        b = rhs.coeffs.get(phi.label, 0)
        if a > b:
            return False, phi.label, note
    return True, None, note
