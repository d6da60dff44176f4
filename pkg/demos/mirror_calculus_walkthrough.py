"""Walkthrough: character calculus and the mirror parameter identities.

We set up a cyclic group of order 4 with ell = 5, inspect its l-adic
irreducible characters and the mirror involution, then derive the
(S, T)-parameters of a small two-place configuration and verify the
exchange identities between (S, T) and (T, S).

Run from the repository root:

    python3 demos/mirror_calculus_walkthrough.py
"""

from iwatool.characters import (AbelianGroupSpec, CharacterTable,
                                MirrorContext, VirtualCharacter, idempotent,
                                induce_unit, mirror, split_real_imag)
from iwatool.params import (PlaceSpec, ReferentTable, TowerInput,
                            check_lambda_referent_duality,
                            check_mirror_identities, check_mu_bound,
                            compute_params)

# ---------------------------------------------------------------------------
# 1. The character table of C4 at ell = 5.  All four irreducibles are linear
#    because the values already live in Z_5 (4 divides 5 - 1).
# ---------------------------------------------------------------------------
table = CharacterTable(AbelianGroupSpec((4,)), ell=5)
print("irreducibles:", [(phi.label, phi.degree) for phi in table.irreducibles])

# tau = the order-2 element plays complex conjugation; omega = chi_1 is the
# distinguished imaginary character.  mirror(psi) = omega * psi^(-1).
ctx = MirrorContext(table, tau=(2,), omega_label=(1,))
for phi in table.irreducibles:
    chi = VirtualCharacter(table, {phi.label: 1})
    plus, minus = split_real_imag(chi, ctx)
    kind = "real" if minus.is_zero() else "imaginary"
    print(f"  chi_{phi.label[0]}: {kind:9}  mirror -> {mirror(chi, ctx).coeffs}")

# Idempotents of the group algebra mod 5^4 decompose it exactly.
es = [idempotent(phi, 4) for phi in table.irreducibles]
print("idempotents sum to 1:", sum(es[1:], es[0]).coeffs == {(0,): 1})

# ---------------------------------------------------------------------------
# 2. A configuration with two wild places l1, l2 (each with decomposition
#    subgroup of index 2) and one tame place q1.  S = {l1}, T = {l2}.
# ---------------------------------------------------------------------------
places = (
    PlaceSpec("l1", ((2,),), wild=True, local_degree=1, membership="S"),
    PlaceSpec("l2", ((2,),), wild=True, local_degree=1, membership="T"),
    PlaceSpec("q1", ((0,),), wild=False, membership="none"),
)
tower = TowerInput(table, ctx, F_degree=2, places=places)
print("\ninduced character of l1:", induce_unit(table, [(2,)]).coeffs)

# Referent invariants per subset of the wild places: totally real virtual
# characters (mu_plus, lambda_plus).  Everything else is derived from them.
zero = table.zero()
chi0 = VirtualCharacter(table, {(0,): 1})
referents = ReferentTable(ctx, {
    frozenset({"l1", "l2"}): (zero, chi0),
    frozenset({"l1"}): (zero, zero),
    frozenset({"l2"}): (zero, 2 * chi0),
    frozenset(): (zero, zero),
})

result = compute_params(tower, referents, assume_leopoldt=True)
print("rho    =", result.rho.coeffs)
print("mu     =", result.mu.coeffs)
print("lambda =", result.lam.coeffs)
print("special case:", result.special_case)

# ---------------------------------------------------------------------------
# 3. Consistency checks.  The three exchange identities relate the (S, T)
#    output to the (T, S) output through the mirror involution; the duality
#    check ties each referent subset to its complement; the mu bound is a
#    componentwise inequality.
# ---------------------------------------------------------------------------
report = check_mirror_identities(tower, referents, assume_leopoldt=True)
print("\nmirror identities: rho", report.identity_rho,
      "| mu", report.identity_mu, "| lambda", report.identity_lambda)

duality = check_lambda_referent_duality(tower, referents)
print("lambda/referent duality per subset:", duality)

holds, violator, note = check_mu_bound(tower, referents)
print("mu bound holds:", holds, f"({note})")
