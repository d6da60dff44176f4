"""Exact-arithmetic toolkit for Iwasawa-module invariants.

Layers, bottom up:

- padic: Z/l^N and unramified coefficient rings Z/l^N[x]/(h).
- iwasawa: the truncated algebra Z_phi[[T]], tower polynomials, distinguished
  division, and the l*unit factorization witness for nu(n+1, n).
- modules: presented and structural modules, exact finite-quotient orders via
  Smith normal form over Z/l^k, closed forms, boundary submodules.
- fit: exact recovery of the growth quadruple (rho, mu, lambda, nu).
- characters: l-adic irreducible characters of a finite abelian group,
  virtual characters, induction, real/imaginary splitting, the mirror
  involution, and idempotents over Z/l^N.
- params: the (S, T) parameter calculus over place data and referent tables,
  with mirror-identity and duality consistency checks.
- cli: the `iwatool` command (order / fit / arith / selfcheck).
"""

from .errors import (DegreeCapExceeded, EllIsTwo, InvalidRange, IwatoolError,
                     LeopoldtNotAssumed, MalformedInput, MissingReferent,
                     NotASubgroup, OrderNotCoprime, PreconditionSUnionT,
                     PrecisionTooLow, RingMismatch, TooFewPoints,
                     UnknownIrreducible, UnknownPlace, UnstableFit)
from .padic import (AT_LEAST_PRECISION, CoefElement, CoefRing,
                    PrecisionContext, check_irreducible, find_irreducible,
                    ring_arith, valuation)
from .iwasawa import (DEFAULT_DEGREE_CAP, NOT_YET_STABLE, DistinguishedPoly,
                      LambdaElement, NotYetStable, divmod_distinguished,
                      is_distinguished, nu, nu_step_witness, omega)
from .modules import (BoundaryBasis, ClosedFormOrder, ElementaryModuleSpec,
                      FiniteQuotientReport, PresentedModule, SNFResult,
                      boundary_submodule, closed_form_order,
                      elementary_to_presentation, perturb_by_finite,
                      quotient_order, quotient_order_nk,
                      quotient_order_with_y, snf_local,
                      subgroup_contains, subgroup_intersection,
                      subgroup_order_exponent, subgroups_equal)
from .fit import ParamFit, Unstable, fit_family, fit_sequence, predict
from .characters import (AbelianGroupSpec, AbsCharacter, CharacterTable,
                         GroupAlgebraElement, LadicIrreducible, MirrorContext,
                         VirtualCharacter, enumerate_irreducibles, idempotent,
                         induce_unit, inner, mirror, mirror_irreducible,
                         split_real_imag)
from .params import (ParamResult, PlaceSpec, ReferentTable, TowerInput,
                     check_lambda_referent_duality, check_mirror_identities,
                     check_mu_bound, chi_infinity, chi_of_set, compute_params,
                     delta_of_set, lambda_ST, mu_ST, reconstruct_full_lambda,
                     rho_ST)

__version__ = "0.1.0"
