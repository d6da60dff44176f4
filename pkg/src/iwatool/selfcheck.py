"""Built-in invariant suites for the selfcheck command.

Each suite function raises AssertionError on failure; a string return value
is a verdict note ("skipped" marks a suite that does not apply).
"""

from __future__ import annotations

import random

import numpy as np

from .characters import (AbelianGroupSpec, CharacterTable,
                         GroupAlgebraElement, MirrorContext, VirtualCharacter,
                         idempotent, induce_unit, mirror, split_real_imag)
from .fit import ParamFit, fit_sequence, predict
from .iwasawa import (DistinguishedPoly, LambdaElement, nu, nu_step_witness,
                      omega)
from .modules import (ElementaryModuleSpec, elementary_to_presentation,
                      quotient_order, snf_local)
from .padic import CoefRing, PrecisionContext
from .params import (PlaceSpec, ReferentTable, TowerInput,
                     check_mirror_identities)


def suite_padic():
    ring = CoefRing(PrecisionContext(3, 5), (1, 0, 1))  # x^2 + 1, irreducible mod 3
    rng = random.Random(11)
    for _ in range(50):
        a = ring.element([rng.randrange(243) for _ in range(2)])
        b = ring.element([rng.randrange(243) for _ in range(2)])
        c = ring.element([rng.randrange(243) for _ in range(2)])
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        if a.is_unit():
            assert a * a.inverse() == ring.one()


def suite_iwasawa():
    ring = CoefRing(PrecisionContext(3, 6))
    for n in range(3):
        for m in range(n + 1):
            assert nu(ring, n, m) * omega(ring, m) == omega(ring, n)
    f = DistinguishedPoly(LambdaElement.from_coeffs(ring, [3, 0, 1]))
    for n in range(2, 4):
        wit = nu_step_witness(f, n)
        assert isinstance(wit, tuple), "witness did not stabilize"
        a, b = wit
        ell = ring.ell
        unit_part = LambdaElement.from_coeffs(ring, [ell]) + (ell * ell) * a
        assert (nu(ring, n + 1, n) - (unit_part + b * f.poly)).is_zero()


def _brute_force_image_size(A, q):
    rows = [tuple(int(v) % q for v in r) for r in A]
    seen = {tuple([0] * len(rows[0]))}
    frontier = list(seen)
    while frontier:
        cur = frontier.pop()
        for r in rows:
            nxt = tuple((a + b) % q for a, b in zip(cur, r))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return len(seen)


def suite_snf(_fault: bool = False):
    rng = random.Random(7)
    for ell, k in ((2, 3), (3, 2)):
        q = ell ** k
        for _ in range(15):
            A = np.array([[rng.randrange(q) for _ in range(3)] for _ in range(3)],
                         dtype=np.int64)
            res = snf_local(A, ell, k)
            vals = list(res.valuations)
            if _fault and vals:
                vals[0] = (vals[0] + 1) % (k + 1)  # simulated pivot defect
            image = 1
            for a in vals:
                image *= ell ** (k - a)
            assert image == _brute_force_image_size(A, q), \
                "elementary divisors disagree with brute-force image size"


def suite_snf_faulty():
    suite_snf(_fault=True)


def suite_orders():
    for ell in (2, 3):
        ring = CoefRing(PrecisionContext(ell, 5))
        free = elementary_to_presentation(ElementaryModuleSpec(ring, 1))
        for n in range(3):
            assert quotient_order(free, n).order_exponent == (n + 1) * ell ** n
        tor = elementary_to_presentation(ElementaryModuleSpec(ring, 0, (), (2,)))
        for n in range(2, 4):
            assert quotient_order(tor, n).order_exponent == 2 * ell ** n


def suite_fit():
    rng = random.Random(3)
    for _ in range(20):
        rho = rng.randrange(3)
        mu = rng.randrange(4) if rho else rng.randrange(4)
        lam = rng.randrange(5) if (rho or mu) else rng.randrange(5)
        nu_ = rng.randrange(-5, 6)
        truth = ParamFit(rho, mu, lam, nu_, 0)
        pts = [(n, predict(truth, 3, n)) for n in range(8)]
        got = fit_sequence(3, pts, window=3)
        assert isinstance(got, ParamFit)
        assert (got.rho, got.mu, got.lam, got.nu) == (rho, mu, lam, nu_)


def suite_characters():
    for orders, ell in (((4,), 5), ((5,), 3)):
        group = AbelianGroupSpec(orders)
        table = CharacterTable(group, ell)
        assert sum(phi.degree for phi in table.irreducibles) == group.order
        total = None
        for phi in table.irreducibles:
            e = idempotent(phi, 3)
            assert e * e == e
            total = e if total is None else total + e
        unit = GroupAlgebraElement(group, ell, 3, {tuple(0 for _ in orders): 1})
        assert total == unit
    table = CharacterTable(AbelianGroupSpec((4,)), 5)
    ctx = MirrorContext(table, (2,), (1,))
    for phi in table.irreducibles:
        chi = VirtualCharacter(table, {phi.label: 1})
        assert mirror(mirror(chi, ctx), ctx) == chi
        plus, minus = split_real_imag(chi, ctx)
        mplus, mminus = split_real_imag(mirror(chi, ctx), ctx)
        assert (plus.is_zero()) == (mminus.is_zero())
    assert induce_unit(table, [(2,)]).degree() == 2


def _builtin_fixture():
    table = CharacterTable(AbelianGroupSpec((4,)), 5)
    ctx = MirrorContext(table, (2,), (1,))
    places = (
        PlaceSpec("l1", ((1,),), True, 1, 1, "T"),
        PlaceSpec("q1", ((2,),), False, None, 1, "none"),
    )
    tower = TowerInput(table, ctx, 1, places)
    zero = table.zero()
    referents = ReferentTable(ctx, {
        frozenset({"l1"}): (zero, zero),
        frozenset(): (zero, zero),
    })
    return tower, referents


def suite_params():
    tower, referents = _builtin_fixture()
    report = check_mirror_identities(tower, referents, assume_leopoldt=True)
    assert report.identity_rho and report.identity_mu, report.details


def suite_ell_two():
    # the mirror calculus requires an odd prime; nothing to run at ell = 2
    return "skipped: ell odd required"
