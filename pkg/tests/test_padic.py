import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iwatool.errors import RingMismatch
from iwatool.padic import (AT_LEAST_PRECISION, CoefRing, PrecisionContext,
                           check_irreducible, find_irreducible, ring_arith,
                           valuation)


def ring_z3():
    return CoefRing(PrecisionContext(3, 5))


def ring_deg2():
    return CoefRing(PrecisionContext(3, 5), (1, 0, 1))  # x^2 + 1 mod 3


class TestPrecisionContext:
    def test_modulus(self):
        assert PrecisionContext(3, 4).modulus == 81

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            PrecisionContext(6, 2)

    def test_rejects_zero_precision(self):
        with pytest.raises(ValueError):
            PrecisionContext(3, 0)


class TestIrreducibility:
    def test_x2_plus_1_irreducible_mod_3(self):
        assert check_irreducible((1, 0, 1), 3)

    def test_square_rejected(self):
        # (x+1)^2 = x^2 + 2x + 1
        assert not check_irreducible((1, 2, 1), 3)

    def test_product_of_distinct_factors_rejected(self):
        # x(x+1) = x^2 + x
        assert not check_irreducible((0, 1, 1), 3)

    def test_degree_one_always_irreducible(self):
        assert check_irreducible((2, 1), 5)

    @pytest.mark.parametrize("ell,deg", [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (3, 4)])
    def test_find_irreducible_is_irreducible(self, ell, deg):
        h = find_irreducible(ell, deg)
        assert len(h) - 1 == deg
        assert h[-1] == 1
        assert check_irreducible(h, ell)


class TestRingArithmetic:
    def test_canonical_residues(self):
        r = ring_z3()
        assert r.element(244).coeffs == (1,)
        assert r.element(-1).coeffs == (242,)

    def test_defining_relation(self):
        r = ring_deg2()
        x = r.element([0, 1])
        assert (x * x).coeffs == (242, 0)  # x^2 = -1

    @given(a=st.integers(0, 242), b=st.integers(0, 242), c=st.integers(0, 242))
    def test_distributivity_scalar_ring(self, a, b, c):
        r = ring_z3()
        ea, eb, ec = r.element(a), r.element(b), r.element(c)
        assert (ea + eb) * ec == ea * ec + eb * ec

    @given(st.lists(st.integers(0, 242), min_size=2, max_size=2),
           st.lists(st.integers(0, 242), min_size=2, max_size=2))
    @settings(max_examples=60)
    def test_commutativity_deg2(self, a, b):
        r = ring_deg2()
        assert r.element(a) * r.element(b) == r.element(b) * r.element(a)

    @given(st.lists(st.integers(0, 242), min_size=2, max_size=2))
    @settings(max_examples=60)
    def test_unit_inverse_roundtrip(self, a):
        r = ring_deg2()
        ea = r.element(a)
        if ea.is_unit():
            assert ea * ea.inverse() == r.one()
        else:
            with pytest.raises(ZeroDivisionError):
                ea.inverse()

    def test_pow_negative_exponent(self):
        r = ring_z3()
        two = r.element(2)
        assert two ** -1 * two == r.one()

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatch):
            ring_z3().element(1) + ring_deg2().element(1)

    def test_ring_arith_dispatch(self):
        r = ring_z3()
        a, b = r.element(5), r.element(7)
        assert ring_arith(a, b, "add") == r.element(12)
        assert ring_arith(a, b, "sub") == r.element(-2)
        assert ring_arith(a, b, "mul") == r.element(35)
        with pytest.raises(ValueError):
            ring_arith(a, b, "div")


class TestValuation:
    def test_zero_is_sentinel(self):
        assert valuation(ring_z3().zero()) is AT_LEAST_PRECISION

    def test_unit(self):
        assert valuation(ring_z3().element(2)) == 0

    def test_power_of_ell(self):
        assert valuation(ring_z3().element(27)) == 3

    def test_unramified_min_over_coefficients(self):
        r = ring_deg2()
        assert valuation(r.element([9, 3])) == 1

    @given(st.integers(1, 242))
    @settings(max_examples=40)
    def test_multiplicative(self, a):
        r = ring_z3()
        ea = r.element(a)
        v = valuation(ea)
        prod = valuation(ea * r.element(3))
        if v + 1 < 5:
            assert prod == v + 1
        else:
            assert prod is AT_LEAST_PRECISION
