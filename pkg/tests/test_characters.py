import itertools

import pytest

from iwatool.characters import (AbelianGroupSpec, AbsCharacter, CharacterTable,
                                GroupAlgebraElement, MirrorContext,
                                VirtualCharacter, enumerate_irreducibles,
                                idempotent, induce_unit, inner, mirror,
                                mirror_irreducible, split_real_imag)
from iwatool.errors import EllIsTwo, OrderNotCoprime, UnknownIrreducible


def c4_table():
    return CharacterTable(AbelianGroupSpec((4,)), 5)


def c4_ctx(table=None):
    table = table or c4_table()
    return table, MirrorContext(table, (2,), (1,))


class TestEnumerate:
    def test_c4_ell5_all_degree_one(self):
        phis = enumerate_irreducibles(AbelianGroupSpec((4,)), 5)
        assert [phi.label for phi in phis] == [(0,), (1,), (2,), (3,)]
        assert all(phi.degree == 1 for phi in phis)

    def test_trivial_group(self):
        phis = enumerate_irreducibles(AbelianGroupSpec(()), 3)
        assert len(phis) == 1 and phis[0].degree == 1

    def test_c5_ell3_orbit_of_size_four(self):
        phis = enumerate_irreducibles(AbelianGroupSpec((5,)), 3)
        assert sorted(phi.degree for phi in phis) == [1, 4]
        big = max(phis, key=lambda p: p.degree)
        assert big.orbit == ((1,), (2,), (3,), (4,))

    def test_degrees_sum_to_group_order(self):
        for orders, ell in (((4,), 5), ((5,), 3), ((2, 3), 5), ((8,), 3), ((7,), 2)):
            group = AbelianGroupSpec(orders)
            phis = enumerate_irreducibles(group, ell)
            assert sum(phi.degree for phi in phis) == group.order

    def test_order_not_coprime(self):
        with pytest.raises(OrderNotCoprime):
            enumerate_irreducibles(AbelianGroupSpec((6,)), 3)


class TestInner:
    def test_linear_combination(self):
        table = c4_table()
        phi, psi = table.by_label((1,)), table.by_label((2,))
        chi = VirtualCharacter(table, {(1,): 3, (2,): -1})
        assert inner(chi, phi) == 3
        assert inner(chi, psi) == -1

    def test_zero(self):
        table = c4_table()
        assert inner(table.zero(), table.by_label((0,))) == 0

    def test_regular_gives_degree(self):
        for orders, ell in (((4,), 5), ((5,), 3), ((2, 3), 5)):
            table = CharacterTable(AbelianGroupSpec(orders), ell)
            reg = table.regular_character()
            for phi in table.irreducibles:
                assert inner(reg, phi) == 1
            assert reg.degree() == table.group.order

    def test_unknown_irreducible(self):
        table = c4_table()
        other = CharacterTable(AbelianGroupSpec((5,)), 3).by_label((1,))
        with pytest.raises(UnknownIrreducible):
            inner(table.zero(), other)


class TestInduceUnit:
    def test_full_group_gives_unit(self):
        table = c4_table()
        assert induce_unit(table, [(1,)]) == table.unit_character()

    def test_trivial_subgroup_gives_regular(self):
        table = c4_table()
        assert induce_unit(table, []) == table.regular_character()

    def test_index_two_subgroup(self):
        table = c4_table()
        chi = induce_unit(table, [(2,)])
        assert chi.coeffs == {(0,): 1, (2,): 1}

    def test_degree_equals_index(self):
        table = CharacterTable(AbelianGroupSpec((2, 3)), 5)
        for gens, index in ([[(1, 0)], 3], [[(0, 1)], 2], [[(1, 1)], 1], [[], 6]):
            assert induce_unit(table, gens).degree() == index

    def test_unit_iff_full_subgroup(self):
        table = CharacterTable(AbelianGroupSpec((5,)), 3)
        assert induce_unit(table, [(1,)]) == table.unit_character()
        assert induce_unit(table, []) != table.unit_character()


class TestSplitRealImag:
    def test_regular_split(self):
        table, ctx = c4_ctx()
        plus, minus = split_real_imag(table.regular_character(), ctx)
        assert plus.coeffs == {(0,): 1, (2,): 1}
        assert minus.coeffs == {(1,): 1, (3,): 1}

    def test_unit_is_real(self):
        table, ctx = c4_ctx()
        plus, minus = split_real_imag(table.unit_character(), ctx)
        assert plus == table.unit_character() and minus.is_zero()

    def test_omega_is_imaginary(self):
        table, ctx = c4_ctx()
        plus, minus = split_real_imag(ctx.omega_char(), ctx)
        assert plus.is_zero() and minus == ctx.omega_char()

    def test_ell_two_refused(self):
        table = CharacterTable(AbelianGroupSpec((3,)), 2)
        ctx_group = CharacterTable(AbelianGroupSpec((4,)), 5)
        _, ctx = c4_ctx(ctx_group)
        with pytest.raises(EllIsTwo):
            split_real_imag(table.unit_character(), ctx)


class TestMirror:
    def test_unit_maps_to_omega(self):
        table, ctx = c4_ctx()
        assert mirror(table.unit_character(), ctx) == ctx.omega_char()

    def test_exponent_arithmetic(self):
        table, ctx = c4_ctx()
        chi2 = VirtualCharacter(table, {(2,): 1})
        assert mirror(chi2, ctx).coeffs == {(3,): 1}

    def test_involution_exhaustive(self):
        table, ctx = c4_ctx()
        for coeffs in itertools.product((-1, 0, 2), repeat=4):
            chi = VirtualCharacter(
                table, dict(zip([(0,), (1,), (2,), (3,)], coeffs)))
            assert mirror(mirror(chi, ctx), ctx) == chi

    def test_swaps_real_and_imaginary(self):
        table, ctx = c4_ctx()
        for phi in table.irreducibles:
            chi = VirtualCharacter(table, {phi.label: 1})
            plus, minus = split_real_imag(chi, ctx)
            mplus, mminus = split_real_imag(mirror(chi, ctx), ctx)
            assert plus == mirror(mminus, ctx)
            assert minus == mirror(mplus, ctx)

    def test_degree_preserving_on_orbits(self):
        # C2 x C3 with ell = 5: mirror permutes irreducibles of equal degree
        table = CharacterTable(AbelianGroupSpec((2, 3)), 5)
        ctx = MirrorContext(table, (1, 0), (1, 0))
        for phi in table.irreducibles:
            assert mirror_irreducible(phi, ctx).degree == phi.degree


class TestMirrorContextValidation:
    def test_tau_must_be_involution(self):
        table = c4_table()
        with pytest.raises(ValueError):
            MirrorContext(table, (1,), (1,))

    def test_omega_must_be_imaginary(self):
        table = c4_table()
        with pytest.raises(ValueError):
            MirrorContext(table, (2,), (2,))  # chi_2(tau) = +1

    def test_omega_must_have_degree_one(self):
        table = CharacterTable(AbelianGroupSpec((8,)), 3)
        # tau = 4; the orbit of exponent 1 under *3 mod 8 is {1, 3}: degree 2
        with pytest.raises(ValueError):
            MirrorContext(table, (4,), (1,))

    def test_no_context_exists_on_c5(self):
        # the only involution of C5 is the identity, where no character
        # takes the value -1; mirror machinery cannot be instantiated
        table = CharacterTable(AbelianGroupSpec((5,)), 3)
        for label in [(0,), (1,)]:
            with pytest.raises(ValueError):
                MirrorContext(table, (0,), label)


class TestIdempotents:
    def test_c1(self):
        table = CharacterTable(AbelianGroupSpec(()), 3)
        e = idempotent(table.irreducibles[0], 2)
        assert e.coeffs == {(): 1}

    def test_c2_sign_character(self):
        table = CharacterTable(AbelianGroupSpec((2,)), 3)
        sign = table.by_label((1,))
        e = idempotent(sign, 2)
        assert e.coeffs == {(0,): 5, (1,): 4}  # (1/2)(1 - tau) mod 9
        assert e * e == e

    @pytest.mark.parametrize("orders,ell", [((4,), 5), ((5,), 3)])
    def test_idempotency_orthogonality_and_sum(self, orders, ell):
        table = CharacterTable(AbelianGroupSpec(orders), ell)
        es = [idempotent(phi, 4) for phi in table.irreducibles]
        for i, e in enumerate(es):
            assert e * e == e
            for j, f in enumerate(es):
                if i != j:
                    assert (e * f).is_zero()
        total = es[0]
        for e in es[1:]:
            total = total + e
        unit = GroupAlgebraElement(table.group, ell, 4,
                                   {tuple(0 for _ in orders): 1})
        assert total == unit

    def test_degree_four_orbit_is_complement_of_unit(self):
        table = CharacterTable(AbelianGroupSpec((5,)), 3)
        unit_e = idempotent(table.by_label((0,)), 3)
        big_e = idempotent(table.by_label((1,)), 3)
        one = GroupAlgebraElement(table.group, 3, 3, {(0,): 1})
        assert unit_e + big_e == one


class TestOrbitHomogeneity:
    def test_exhaustive_small_groups(self):
        cases = []
        for orders in [(4,), (8,), (5,), (7,), (16,), (2, 2), (2, 4), (3, 3),
                       (20,), (2, 3), (11,), (13,)]:
            group = AbelianGroupSpec(orders)
            for ell in (3, 5, 7):
                if group.order % ell == 0:
                    continue
                cases.append((group, ell))
        for group, ell in cases:
            phis = enumerate_irreducibles(group, ell)
            # triviality on any cyclic subgroup is an orbit invariant
            for g in group.elements():
                sub = group.subgroup_elements([g])
                for phi in phis:
                    flags = {chi.is_trivial_on(sub) for chi in phi.members()}
                    assert len(flags) == 1
            # the value on any involution is an orbit invariant
            for g in group.elements():
                if group.add(g, g) == tuple(0 for _ in orders):
                    for phi in phis:
                        phi.value_sign_on(g)  # raises if inhomogeneous
