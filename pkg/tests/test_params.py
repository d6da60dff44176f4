import random
import warnings

import pytest

from iwatool.characters import (AbelianGroupSpec, CharacterTable,
                                MirrorContext, VirtualCharacter, mirror,
                                split_real_imag)
from iwatool.errors import (LeopoldtNotAssumed, MalformedInput,
                            MissingReferent, PreconditionSUnionT,
                            UnknownPlace)
from iwatool.params import (ParamResult, PlaceSpec, ReferentTable, TowerInput,
                            check_lambda_referent_duality,
                            check_mirror_identities, check_mu_bound,
                            chi_infinity, chi_of_set, compute_params,
                            delta_of_set, lambda_ST, mu_ST,
                            reconstruct_full_lambda, rho_ST)


def c4_setup():
    table = CharacterTable(AbelianGroupSpec((4,)), 5)
    ctx = MirrorContext(table, (2,), (1,))
    return table, ctx


def vc(table, **labels):
    return VirtualCharacter(
        table, {tuple(int(v) for v in k.split("_")): c for k, c in labels.items()})


def single_wild_tower(membership_l1="T", tame_membership="none",
                      tame_gens=((2,),)):
    table, ctx = c4_setup()
    places = (
        PlaceSpec("l1", ((1,),), True, 1, 1, membership_l1),
        PlaceSpec("q1", tuple(tame_gens), False, None, 1, tame_membership),
    )
    return TowerInput(table, ctx, 1, places), table, ctx


def zero_referents(table, ctx, subsets):
    zero = table.zero()
    return ReferentTable(ctx, {frozenset(s): (zero, zero) for s in subsets})


def two_wild_tower(S=("l1",), T=("l2",), tame_T=(), table_ctx=None,
                   referent_entries=None):
    table, ctx = table_ctx or c4_setup()
    def member(pid):
        if pid in S:
            return "S"
        if pid in T or pid in tame_T:
            return "T"
        return "none"
    places = (
        PlaceSpec("l1", ((2,),), True, 1, 1, member("l1")),
        PlaceSpec("l2", ((2,),), True, 1, 1, member("l2")),
        PlaceSpec("q1", ((0,),), False, None, 1, member("q1")),
        PlaceSpec("q2", ((2,),), False, None, 1, member("q2")),
    )
    tower = TowerInput(table, ctx, 2, places)
    if referent_entries is None:
        refs = zero_referents(table, ctx,
                              [(), ("l1",), ("l2",), ("l1", "l2")])
    else:
        refs = ReferentTable(ctx, referent_entries)
    return tower, refs, table, ctx


class TestSetCharacters:
    def test_chi_empty_set(self):
        tower, table, _ = single_wild_tower()
        assert chi_of_set(tower, "S").is_zero()

    def test_chi_full_decomposition(self):
        tower, table, _ = single_wild_tower()
        assert chi_of_set(tower, "T") == table.unit_character()

    def test_chi_multiplicity(self):
        table, ctx = c4_setup()
        places = (PlaceSpec("p", ((2,),), False, None, 2, "T"),)
        tower = TowerInput(table, ctx, 1, places)
        assert chi_of_set(tower, "T").coeffs == {(0,): 2, (2,): 2}

    def test_unknown_place(self):
        tower, _, _ = single_wild_tower()
        with pytest.raises(UnknownPlace):
            chi_of_set(tower, ["nope"])

    def test_delta_no_wild_place(self):
        tower, _, _ = single_wild_tower(membership_l1="none",
                                        tame_membership="T")
        assert delta_of_set(tower, "T").is_zero()

    def test_delta_is_regular_multiple(self):
        tower, table, _ = single_wild_tower()
        assert delta_of_set(tower, "T") == table.regular_character()

    def test_delta_partition_sums_to_degree(self):
        tower, refs, table, ctx = two_wild_tower(S=("l1",), T=("l2",))
        total = delta_of_set(tower, "S") + delta_of_set(tower, "T")
        assert total == tower.F_degree * table.regular_character()

    def test_delta_is_mirror_invariant(self):
        tower, _, table, ctx = two_wild_tower()
        for sel in ("S", "T", "L"):
            d = delta_of_set(tower, sel)
            assert mirror(d, ctx) == d

    def test_chi_infinity_c2(self):
        table = CharacterTable(AbelianGroupSpec((2,)), 3)
        ctx = MirrorContext(table, (1,), (1,))
        tower = TowerInput(table, ctx, 1, ())
        assert chi_infinity(tower) == table.unit_character()

    def test_chi_infinity_c4(self):
        tower, table, _ = single_wild_tower()
        assert chi_infinity(tower).coeffs == {(0,): 1, (2,): 1}

    def test_chi_infinity_plus_mirror_is_regular_multiple(self):
        tower, _, table, ctx = two_wild_tower()
        chi = chi_infinity(tower)
        assert chi + mirror(chi, ctx) == tower.F_degree * table.regular_character()


class TestRho:
    def test_no_wild_in_T(self):
        tower, _, _ = single_wild_tower(membership_l1="S",
                                        tame_membership="T")
        assert rho_ST(tower).is_zero()

    def test_c4_full_wild(self):
        tower, _, _ = single_wild_tower()
        assert rho_ST(tower).coeffs == {(1,): 1, (3,): 1}

    def test_c2_mixed_degrees(self):
        table = CharacterTable(AbelianGroupSpec((2,)), 3)
        ctx = MirrorContext(table, (1,), (1,))
        places = (PlaceSpec("a", ((0,),), True, 1, 1, "T"),
                  PlaceSpec("b", ((0,),), True, 2, 1, "T"))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            tower = TowerInput(table, ctx, 3, places)
        assert rho_ST(tower).coeffs == {(1,): 3}

    def test_totally_imaginary_and_s_independent(self):
        rng = random.Random(42)
        for _ in range(20):
            S1 = tuple(p for p in ("l1", "q1") if rng.random() < 0.5)
            S2 = tuple(p for p in ("l1", "q2") if rng.random() < 0.5)
            T = ("l2",)
            t1, _, _, ctx = two_wild_tower(S=S1, T=T)
            t2, _, _, _ = two_wild_tower(S=S2, T=T)
            r1, r2 = rho_ST(t1), rho_ST(t2)
            assert r1 == r2
            plus, _ = split_real_imag(r1, ctx)
            assert plus.is_zero()


class TestMu:
    def test_zero_referents(self):
        tower, refs, _, _ = two_wild_tower()
        assert mu_ST(tower, refs).is_zero()

    def test_cor_formula(self):
        tower, table, ctx = single_wild_tower()
        refs = ReferentTable(ctx, {
            frozenset({"l1"}): (vc(table, **{"0": 2}), table.zero()),
            frozenset(): (vc(table, **{"2": 1}), table.zero()),
        })
        assert mu_ST(tower, refs).coeffs == {(0,): 2, (3,): 1}

    def test_independent_of_S_and_tame_T(self):
        rng = random.Random(7)
        table, ctx = c4_setup()
        entries = {
            frozenset({"l1", "l2"}): (vc(table, **{"0": 1}), table.zero()),
            frozenset({"l1"}): (vc(table, **{"2": 2}), table.zero()),
            frozenset({"l2"}): (vc(table, **{"0": 1, "2": 1}), table.zero()),
            frozenset(): (table.zero(), table.zero()),
        }
        base_tower, refs, _, _ = two_wild_tower(
            S=("l1",), T=("l2",), table_ctx=(table, ctx),
            referent_entries=entries)
        base = mu_ST(base_tower, refs)
        for _ in range(20):
            S = ("l1",) + tuple(p for p in ("q1",) if rng.random() < 0.5)
            tame_T = tuple(p for p in ("q2",) if rng.random() < 0.5)
            tower, _, _, _ = two_wild_tower(
                S=S, T=("l2",), tame_T=tame_T, table_ctx=(table, ctx),
                referent_entries=entries)
            assert mu_ST(tower, refs) == base

    def test_missing_referent(self):
        tower, _, table, ctx = two_wild_tower()
        refs = zero_referents(table, ctx, [("l2",)])
        with pytest.raises(MissingReferent):
            mu_ST(tower, refs)


class TestLambda:
    def test_special_case_value(self):
        tower, table, ctx = single_wild_tower()
        refs = zero_referents(table, ctx, [(), ("l1",)])
        lam = lambda_ST(tower, refs, assume_leopoldt=True)
        assert lam == table.unit_character() - ctx.omega_char()

    def test_leopoldt_gate(self):
        tower, table, ctx = single_wild_tower()
        refs = zero_referents(table, ctx, [(), ("l1",)])
        with pytest.raises(LeopoldtNotAssumed):
            lambda_ST(tower, refs, assume_leopoldt=False)

    def test_wild_S_contribution(self):
        tower, refs, table, ctx = two_wild_tower(S=("l1",), T=("l2",))
        lam = lambda_ST(tower, refs, assume_leopoldt=True)
        # lam = 0 + (0 + (chi0+chi2) - 1)* + 0 - 0 = (chi2)* = chi3
        assert lam.coeffs == {(3,): 1}

    def test_special_case_exactly_once(self):
        # criterion: the special configuration exceeds the plain formula by
        # the unit character; all other configurations match it exactly
        tower, table, ctx = single_wild_tower()
        refs = zero_referents(table, ctx, [(), ("l1",)])
        lam = lambda_ST(tower, refs, assume_leopoldt=True)
        plain = reconstruct_full_lambda(tower, refs, frozenset({"l1"}))
        assert lam - plain == table.unit_character()
        res = compute_params(tower, refs, assume_leopoldt=True)
        assert res.special_case
        # move the wild place to S: no adjustment
        tower2, _, _ = single_wild_tower(membership_l1="S")
        lam2 = lambda_ST(tower2, refs, assume_leopoldt=True)
        plain2 = (reconstruct_full_lambda(tower2, refs, frozenset())
                  - split_real_imag(chi_of_set(tower2, ["l1"]), ctx)[1])
        assert lam2 == plain2
        assert not compute_params(tower2, refs, assume_leopoldt=True).special_case
        # add a tame place to T: T is no longer exactly the wild set
        tower3, _, _ = single_wild_tower(membership_l1="T",
                                         tame_membership="T")
        assert not compute_params(tower3, refs, assume_leopoldt=True).special_case

    def test_tame_increment(self):
        # adding a tame place q to T increases lambda by mirror(chi_q),
        # verified over randomized configurations (S nonempty so the
        # special-case flag is identical on both sides)
        rng = random.Random(99)
        table, ctx = c4_setup()
        for _ in range(20):
            coeffs = {(0,): rng.randrange(-2, 3), (2,): rng.randrange(-2, 3)}
            entries = {
                frozenset({"l1", "l2"}): (table.zero(), VirtualCharacter(table, coeffs)),
                frozenset({"l1"}): (table.zero(), table.zero()),
                frozenset({"l2"}): (table.zero(),
                                    VirtualCharacter(table, {(0,): rng.randrange(3)})),
                frozenset(): (table.zero(), table.zero()),
            }
            S = ("l1",)
            T = ("l2",) if rng.random() < 0.5 else ("l2", "l1")
            T = tuple(t for t in T if t not in S)
            base, refs, _, _ = two_wild_tower(
                S=S, T=T, table_ctx=(table, ctx), referent_entries=entries)
            bigger, _, _, _ = two_wild_tower(
                S=S, T=T, tame_T=("q2",), table_ctx=(table, ctx),
                referent_entries=entries)
            lam0 = lambda_ST(base, refs, assume_leopoldt=True)
            lam1 = lambda_ST(bigger, refs, assume_leopoldt=True)
            chi_q = chi_of_set(base, ["q2"])
            assert lam1 - lam0 == mirror(chi_q, ctx)

    def test_wild_S_increment(self):
        # moving a wild place into S subtracts its induced character's
        # imaginary part and leaves the real part unchanged; l1 splits with
        # trivial decomposition subgroup so that imaginary part is nonzero
        rng = random.Random(5)
        table, ctx = c4_setup()

        def split_tower(S):
            places = (
                PlaceSpec("l1", ((0,),), True, 1, 1,
                          "S" if "l1" in S else "none"),
                PlaceSpec("l2", ((2,),), True, 1, 1, "T"),
            )
            return TowerInput(table, ctx, 2, places)

        for _ in range(20):
            entries = {
                frozenset({"l1", "l2"}): (table.zero(),
                                          VirtualCharacter(table, {(0,): rng.randrange(3)})),
                frozenset({"l1"}): (table.zero(), table.zero()),
                frozenset({"l2"}): (table.zero(),
                                    VirtualCharacter(table, {(2,): rng.randrange(3)})),
                frozenset(): (table.zero(), table.zero()),
            }
            refs = ReferentTable(ctx, entries)
            without, with_s = split_tower(()), split_tower(("l1",))
            lam0 = lambda_ST(without, refs, assume_leopoldt=True)
            lam1 = lambda_ST(with_s, refs, assume_leopoldt=True)
            chi_q = chi_of_set(without, ["l1"])
            _, chi_q_minus = split_real_imag(chi_q, ctx)
            assert not chi_q_minus.is_zero()
            assert lam1 - lam0 == -1 * chi_q_minus
            p0, _ = split_real_imag(lam0, ctx)
            p1, _ = split_real_imag(lam1, ctx)
            assert p0 == p1


def random_real_referents(table, rng):
    def real_vc():
        return VirtualCharacter(table, {(0,): rng.randrange(-3, 4),
                                        (2,): rng.randrange(-3, 4)})
    return {
        frozenset({"l1", "l2"}): (real_vc(), real_vc()),
        frozenset({"l1"}): (real_vc(), real_vc()),
        frozenset({"l2"}): (real_vc(), real_vc()),
        frozenset(): (real_vc(), real_vc()),
    }


class TestMirrorIdentities:
    def test_requires_wild_cover(self):
        tower, refs, _, _ = two_wild_tower(S=(), T=("l2",))
        with pytest.raises(PreconditionSUnionT):
            check_mirror_identities(tower, refs)

    def test_closure_over_random_referents(self):
        rng = random.Random(1234)
        table, ctx = c4_setup()
        configs = [
            {"S": ("l1",), "T": ("l2",)},
            {"S": ("l2",), "T": ("l1",)},
            {"S": ("l1", "q1"), "T": ("l2",)},
            {"S": ("l1",), "T": ("l2",), "tame_T": ("q2",)},
        ]
        for i in range(50):
            entries = random_real_referents(table, rng)
            cfg = configs[i % len(configs)]
            tower, refs, _, _ = two_wild_tower(
                table_ctx=(table, ctx), referent_entries=entries, **cfg)
            # the referent table satisfies the duality identities by
            # construction; confirm, then check the exchange identities
            assert all(check_lambda_referent_duality(tower, refs).values())
            report = check_mirror_identities(tower, refs, assume_leopoldt=True)
            assert report.all_hold(), report.details

    def test_unbalanced_wild_split_reported_not_hidden(self):
        # the lambda identity genuinely fails when the wild parts of S and T
        # induce different real characters; the report must say so
        tower, table, ctx = single_wild_tower()
        refs = zero_referents(table, ctx, [(), ("l1",)])
        tower = TowerInput(table, ctx, 1, (
            PlaceSpec("l1", ((1,),), True, 1, 1, "T"),
            PlaceSpec("q1", ((2,),), False, None, 1, "S"),
        ))
        report = check_mirror_identities(tower, refs, assume_leopoldt=True)
        assert report.identity_rho and report.identity_mu
        assert not report.identity_lambda
        assert report.details


class TestDuality:
    def test_reconstructed_tables_pass(self):
        rng = random.Random(77)
        table, ctx = c4_setup()
        for _ in range(10):
            tower, refs, _, _ = two_wild_tower(
                table_ctx=(table, ctx),
                referent_entries=random_real_referents(table, rng))
            assert all(check_lambda_referent_duality(tower, refs).values())

    def test_inconsistent_full_lambda_flagged(self):
        tower, refs, table, ctx = two_wild_tower()
        bogus = {frozenset({"l1"}): ctx.omega_char() * 5}
        out = check_lambda_referent_duality(tower, refs, full_lambda=bogus)
        assert out[("l2",)] is False

    def test_example_value(self):
        # lambda_plus[L] = chi_2 with T_wild = L forces the complement's
        # imaginary part to be mirror(chi_2 + 1 - 1) = chi_3
        tower, table, ctx = single_wild_tower()
        refs = ReferentTable(ctx, {
            frozenset({"l1"}): (table.zero(), vc(table, **{"2": 1})),
            frozenset(): (table.zero(), table.zero()),
        })
        lam_empty = reconstruct_full_lambda(tower, refs, frozenset())
        _, minus = split_real_imag(lam_empty, ctx)
        assert minus.coeffs == {(3,): 1}
        assert all(check_lambda_referent_duality(tower, refs).values())


class TestMuBound:
    def test_zero_referents_equality(self):
        tower, refs, _, _ = two_wild_tower()
        holds, violator, note = check_mu_bound(tower, refs)
        assert holds and violator is None
        assert "mirror" in note

    def test_cor_built_tables_never_violate(self):
        rng = random.Random(31)
        table, ctx = c4_setup()
        for _ in range(20):
            def nonneg():
                return VirtualCharacter(table, {(0,): rng.randrange(4),
                                                (2,): rng.randrange(4)})
            entries = {
                frozenset({"l1", "l2"}): (nonneg(), table.zero()),
                frozenset({"l1"}): (table.zero(), table.zero()),
                frozenset({"l2"}): (table.zero(), table.zero()),
                frozenset(): (nonneg(), table.zero()),
            }
            for T in (("l1", "l2"), ()):
                tower, refs, _, _ = two_wild_tower(
                    S=(), T=T, table_ctx=(table, ctx),
                    referent_entries=entries)
                holds, violator, _ = check_mu_bound(tower, refs)
                assert holds, violator

    def test_adversarial_table_flagged(self):
        table, ctx = c4_setup()
        entries = {
            frozenset({"l1", "l2"}): (table.zero(), table.zero()),
            frozenset({"l1"}): (table.zero(), table.zero()),
            frozenset({"l2"}): (vc(table, **{"0": 5}), table.zero()),
            frozenset(): (table.zero(), table.zero()),
        }
        tower, refs, _, _ = two_wild_tower(S=("l1",), T=("l2",),
                                           table_ctx=(table, ctx),
                                           referent_entries=entries)
        holds, violator, _ = check_mu_bound(tower, refs)
        assert not holds and violator is not None


class TestInputValidation:
    def test_wild_needs_local_degree(self):
        with pytest.raises(MalformedInput):
            PlaceSpec("p", ((1,),), True, None, 1, "T")

    def test_tame_must_not_have_local_degree(self):
        with pytest.raises(MalformedInput):
            PlaceSpec("p", ((1,),), False, 2, 1, "T")

    def test_duplicate_place_ids(self):
        table, ctx = c4_setup()
        p = PlaceSpec("p", ((1,),), True, 1, 1, "T")
        with pytest.raises(MalformedInput):
            TowerInput(table, ctx, 1, (p, p))

    def test_degree_mismatch_warns_not_errors(self):
        table, ctx = c4_setup()
        places = (PlaceSpec("l1", ((1,),), True, 3, 1, "T"),)
        with pytest.warns(UserWarning):
            TowerInput(table, ctx, 1, places)

    def test_referents_must_be_real(self):
        table, ctx = c4_setup()
        with pytest.raises(MalformedInput):
            ReferentTable(ctx, {frozenset(): (ctx.omega_char(), table.zero())})
