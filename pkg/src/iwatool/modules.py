"""Modules over the truncated Iwasawa algebra and their finite quotient orders.

A module is either structural data (free rank, distinguished-polynomial
torsion, l-power torsion) or a presentation by a relation matrix.  The order
of the level-n finite quotient X / (l^(n+k) X + omega_n X) is computed
exactly: the quotient ring (Z_phi / l^(n+k))[T] / (omega_n) is expanded by
the regular representation to a free Z/l^(n+k) module and the cokernel is
read off a Smith normal form over that chain ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeCapExceeded, PrecisionTooLow
from .iwasawa import (DEFAULT_DEGREE_CAP, DistinguishedPoly, LambdaElement,
                      _divmod_monic, nu, omega)
from .padic import CoefElement, CoefRing


# ---------------------------------------------------------------------------
# Smith normal form over Z/l^k
# ---------------------------------------------------------------------------

@dataclass
class SNFResult:
    """Elementary divisor data of a matrix over Z/l^k.

    valuations[i] is a_i with the i-th diagonal entry l^(a_i); a_i = k encodes
    a zero diagonal entry.  The list has length min(nrows, ncols) and is
    non-decreasing (Z/l^k is a chain ring).
    """

    ell: int
    k: int
    nrows: int
    ncols: int
    valuations: tuple
    U: np.ndarray | None = None
    V: np.ndarray | None = None

    def cokernel_exponent(self) -> int:
        """l-exponent of (Z/l^k)^ncols / rowspan(A): a diagonal entry l^a
        leaves a cyclic factor Z/l^a, a missing column a full Z/l^k."""
        t = len(self.valuations)
        return sum(self.valuations) + (self.ncols - t) * self.k

    def cokernel_cyclic_exponents(self) -> tuple:
        """Nonzero cyclic-factor exponents of the cokernel, sorted."""
        out = [a for a in self.valuations if a > 0]
        out += [self.k] * (self.ncols - len(self.valuations))
        return tuple(sorted(out))

    def subgroup_order_exponent(self) -> int:
        """l-exponent of the order of rowspan(A) in (Z/l^k)^ncols."""
        return sum(self.k - a for a in self.valuations)


def _val(x: int, ell: int, k: int) -> int:
    if x == 0:
        return k
    v = 0
    while x % ell == 0:
        x //= ell
        v += 1
    return v


def snf_local(A, ell: int, k: int, transforms: bool = False) -> SNFResult:
    """Elementary-divisor form over Z/l^k by minimum-valuation pivoting.

    Returns divisor valuations (and, optionally, invertible transforms with
    U @ A @ V = diag(l^a_i) mod l^k).
    """
    q = ell ** k
    if q * q >= 2 ** 62:
        raise PrecisionTooLow("modulus too large for int64 exact arithmetic")
    A = np.array(A, dtype=np.int64) % q
    r, c = A.shape
    U = np.eye(r, dtype=np.int64) if transforms else None
    V = np.eye(c, dtype=np.int64) if transforms else None
    t = min(r, c)
    vals = []
    # valuation table, updated lazily per processed submatrix
    for step in range(t):
        sub = A[step:, step:]
        if not sub.size or not sub.any():
            vals.extend([k] * (t - step))
            break
        # pivot = entry of minimal valuation
        nz = sub[sub != 0]
        best_a = min(_val(int(x), ell, k) for x in np.unique(nz))
        pos = np.argwhere(sub % (ell ** (best_a + 1) if best_a + 1 <= k else q) != 0)
        # any entry of valuation exactly best_a
        pi, pj = None, None
        for i, j in pos:
            if _val(int(sub[i, j]), ell, k) == best_a:
                pi, pj = int(i) + step, int(j) + step
                break
        # swap into place
        if pi != step:
            A[[step, pi]] = A[[pi, step]]
            if transforms:
                U[[step, pi]] = U[[pi, step]]
        if pj != step:
            A[:, [step, pj]] = A[:, [pj, step]]
            if transforms:
                V[:, [step, pj]] = V[:, [pj, step]]
        piv = int(A[step, step])
        unit = piv // (ell ** best_a)
        inv_unit = pow(unit, -1, q)
        A[step, :] = A[step, :] * inv_unit % q
        if transforms:
            U[step, :] = U[step, :] * inv_unit % q
        pe = ell ** best_a
        # clear the pivot column (rows below and above)
        col = A[:, step].copy()
        col[step] = 0
        if col.any():
            factors = col // pe
            A -= np.outer(factors, A[step, :])
            A %= q
            if transforms:
                U -= np.outer(factors, U[step, :])
                U %= q
        # clear the pivot row (columns right of the pivot)
        row = A[step, :].copy()
        row[step] = 0
        if row.any():
            factors = row // pe
            A -= np.outer(A[:, step], factors)
            A %= q
            if transforms:
                V -= np.outer(V[:, step], factors)
                V %= q
        vals.append(best_a)
    return SNFResult(ell, k, r, c, tuple(vals), U, V)


def subgroup_order_exponent(gens, ell: int, k: int) -> int:
    """l-exponent of |span of the given row vectors| in (Z/l^k)^n."""
    gens = np.atleast_2d(np.array(gens, dtype=np.int64))
    if gens.size == 0 or not gens.any():
        return 0
    return snf_local(gens, ell, k).subgroup_order_exponent()


def subgroup_contains(gens, v, ell: int, k: int) -> bool:
    """Does the row span of `gens` contain `v` over Z/l^k?"""
    q = ell ** k
    gens = np.atleast_2d(np.array(gens, dtype=np.int64)) % q
    v = np.array(v, dtype=np.int64) % q
    if not v.any():
        return True
    if gens.size == 0 or not gens.any():
        return False
    res = snf_local(gens, ell, k, transforms=True)
    w = v @ res.V % q
    t = len(res.valuations)
    for i, a in enumerate(res.valuations):
        if w[i] % (ell ** a) != 0:
            return False
    return not w[t:].any()


def subgroups_equal(gens_a, gens_b, ell: int, k: int) -> bool:
    """Equality of the two row spans over Z/l^k (inclusion + order)."""
    if subgroup_order_exponent(gens_a, ell, k) != subgroup_order_exponent(gens_b, ell, k):
        return False
    gens_b = np.atleast_2d(np.array(gens_b, dtype=np.int64))
    return all(subgroup_contains(gens_a, row, ell, k) for row in gens_b)


def subgroup_intersection(gens_a, gens_b, ell: int, k: int) -> np.ndarray:
    """Generators of rowspan(A) intersect rowspan(B) over Z/l^k."""
    q = ell ** k
    A = np.atleast_2d(np.array(gens_a, dtype=np.int64)) % q
    B = np.atleast_2d(np.array(gens_b, dtype=np.int64)) % q
    ga = A.shape[0]
    C = np.vstack([A, (-B) % q])
    res = snf_local(C, ell, k, transforms=True)
    t = len(res.valuations)
    kernel_rows = []
    for i, a in enumerate(res.valuations):
        if a > 0:
            kernel_rows.append(res.U[i] * (ell ** (k - a)) % q)
    for i in range(t, C.shape[0]):
        kernel_rows.append(res.U[i])
    if not kernel_rows:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    Kmat = np.array(kernel_rows, dtype=np.int64)
    inter = Kmat[:, :ga] @ A % q
    inter = inter[inter.any(axis=1)]
    return inter


# ---------------------------------------------------------------------------
# module data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PresentedModule:
    """Module over Lambda_phi given by generators and a relation matrix."""

    ring: CoefRing
    num_generators: int
    relations: tuple  # rows; each row is a tuple of LambdaElement, length b
    degree_cap: int = DEFAULT_DEGREE_CAP

    def __post_init__(self):
        if self.num_generators < 1:
            raise ValueError("need at least one generator")
        for row in self.relations:
            if len(row) != self.num_generators:
                raise ValueError("relation row width does not match generators")


@dataclass(frozen=True)
class ElementaryModuleSpec:
    """Structural data: free rank, distinguished torsion, l-power torsion.

    f_list must be a divisibility chain (each entry divides the previous one)
    and m_list non-increasing; both are rejected otherwise, never reordered.
    """

    ring: CoefRing
    rho: int
    f_list: tuple = ()
    m_list: tuple = ()

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError("rho must be >= 0")
        for f in self.f_list:
            if not isinstance(f, DistinguishedPoly):
                raise ValueError("f_list entries must be DistinguishedPoly")
        for prev, nxt in zip(self.f_list, self.f_list[1:]):
            _, rem = _divmod_monic(prev.poly, nxt.poly)
            if not rem.is_zero():
                raise ValueError("f_list is not a divisibility chain")
        if any(m < 1 for m in self.m_list):
            raise ValueError("m_list entries must be >= 1")
        if any(a < b for a, b in zip(self.m_list, self.m_list[1:])):
            raise ValueError("m_list must be non-increasing")


def elementary_to_presentation(spec: ElementaryModuleSpec,
                               degree_cap: int = DEFAULT_DEGREE_CAP) -> PresentedModule:
    """Block-diagonal presentation: one relation per torsion summand."""
    ring = spec.ring
    b = spec.rho + len(spec.f_list) + len(spec.m_list)
    if b == 0:
        # the zero module: present with one generator killed by 1
        one = LambdaElement.from_coeffs(ring, [1])
        return PresentedModule(ring, 1, ((one,),), degree_cap)
    zero = LambdaElement(ring, ())
    rows = []
    for i, f in enumerate(spec.f_list):
        row = [zero] * b
        row[spec.rho + i] = f.poly
        rows.append(tuple(row))
    for j, m in enumerate(spec.m_list):
        row = [zero] * b
        row[spec.rho + len(spec.f_list) + j] = LambdaElement.from_coeffs(
            ring, [ring.ell ** m])
        rows.append(tuple(row))
    return PresentedModule(ring, b, tuple(rows), degree_cap)


def perturb_by_finite(X: PresentedModule, c: int, d: int) -> PresentedModule:
    """X plus one extra generator killed by (l^c, T^d): a finite direct summand."""
    if c < 1 or d < 1:
        raise ValueError("c and d must be >= 1")
    ring = X.ring
    zero = LambdaElement(ring, ())
    b = X.num_generators
    rows = [row + (zero,) for row in X.relations]
    rows.append(tuple([zero] * b + [LambdaElement.from_coeffs(ring, [ring.ell ** c])]))
    rows.append(tuple([zero] * b + [LambdaElement.from_coeffs(ring, [0] * d + [1])]))
    return PresentedModule(ring, b + 1, tuple(rows), X.degree_cap)


@dataclass(frozen=True)
class FiniteQuotientReport:
    """Order data of one finite level quotient."""

    n: int
    k: int
    order_exponent: int
    elementary_divisor_valuations: tuple  # cyclic factor exponents, sorted
    precision_used: int


# ---------------------------------------------------------------------------
# regular-representation expansion
# ---------------------------------------------------------------------------

def _x_mult_matrix(c: CoefElement, q: int) -> np.ndarray:
    """d x d matrix of multiplication by c on Z/q[x]/(h)."""
    ring = c.ring
    d = ring.degree
    M = np.zeros((d, d), dtype=np.int64)
    cur = c
    for i in range(d):
        M[:, i] = [v % q for v in cur.coeffs]
        if i + 1 < d:
            cur = cur * ring.element([0, 1])
    return M


def _poly_rep(elem: LambdaElement, mod_poly: LambdaElement, q: int) -> np.ndarray:
    """(e, d) coordinate array of elem mod (mod_poly, q); mod_poly monic deg e."""
    _, rem = _divmod_monic(elem, mod_poly)
    e = mod_poly.degree
    d = elem.ring.degree
    out = np.zeros((e, d), dtype=np.int64)
    for i, c in enumerate(rem.coeffs):
        out[i] = [v % q for v in c.coeffs]
    return out % q


def _mult_matrix(elem: LambdaElement, mod_poly: LambdaElement, q: int) -> np.ndarray:
    """Matrix of multiplication by elem on (Z/q)[x, T]/(h, mod_poly).

    Basis ordering: T^j x^i at flat index j*d + i.  Row (j, i) holds the
    coordinates of T^j x^i * elem.
    """
    ring = elem.ring
    d = ring.degree
    e = mod_poly.degree
    D = e * d
    # reduction data: T^e = -sum_{i<e} mod_poly[i] T^i, coefficients as x-matrices
    red = [_x_mult_matrix(-mod_poly.coeff(i), q) for i in range(e)]
    xmat = _x_mult_matrix(ring.element([0, 1]), q) if d > 1 else None
    M = np.zeros((D, D), dtype=np.int64)
    base = _poly_rep(elem, mod_poly, q)  # (e, d)
    cur_x = base
    for i in range(d):
        cur = cur_x
        for j in range(e):
            M[j * d + i, :] = cur.reshape(-1)
            if j + 1 < e:
                # multiply by T: shift, then reduce the overflow coefficient
                top = cur[e - 1]
                nxt = np.zeros_like(cur)
                nxt[1:] = cur[:-1]
                if top.any():
                    for t in range(e):
                        nxt[t] = (nxt[t] + red[t] @ top) % q
                cur = nxt % q
        if i + 1 < d:
            cur_x = (cur_x @ xmat.T) % q
    return M


def _expand_relations(ring: CoefRing, rows, n: int, k: int, q: int,
                      degree_cap: int) -> tuple:
    """Expanded relation matrix over Z/q and the per-generator column count."""
    ell = ring.ell
    if ell ** n > degree_cap:
        raise DegreeCapExceeded(
            f"level n={n} needs degree {ell**n} > cap {degree_cap}")
    if ring.precision < n + k:
        raise PrecisionTooLow(
            f"ring precision {ring.precision} < required {n + k}")
    mod_poly = omega(ring, n, degree_cap)
    d = ring.degree
    D = (ell ** n) * d
    blocks = []
    for row in rows:
        blocks.append(np.hstack([_mult_matrix(entry, mod_poly, q) for entry in row]))
    if blocks:
        A = np.vstack(blocks)
    else:
        A = np.zeros((0, len(rows[0]) * D if rows else 0), dtype=np.int64)
    return A, D


def _component_split(A: np.ndarray):
    """Partition rows/columns into independent blocks via union-find on columns."""
    r, c = A.shape
    parent = list(range(c))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    row_cols = []
    for i in range(r):
        cols = np.flatnonzero(A[i])
        row_cols.append(cols)
        for j in cols[1:]:
            ra, rb = find(int(cols[0])), find(int(j))
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for j in range(c):
        groups.setdefault(find(j), []).append(j)
    comps = []
    untouched = []
    for cols in groups.values():
        rows = [i for i in range(r) if len(row_cols[i]) and find(int(row_cols[i][0])) == find(cols[0])]
        if rows:
            comps.append((rows, cols))
        else:
            untouched.extend(cols)
    return comps, untouched


def _cokernel_report(A: np.ndarray, ell: int, kexp: int, n: int, k: int) -> FiniteQuotientReport:
    comps, untouched = _component_split(A)
    exponent = len(untouched) * kexp
    cyclic = [kexp] * len(untouched)
    for rows, cols in comps:
        sub = A[np.ix_(rows, cols)]
        res = snf_local(sub, ell, kexp)
        exponent += res.cokernel_exponent()
        cyclic.extend(res.cokernel_cyclic_exponents())
    return FiniteQuotientReport(n, k, exponent, tuple(sorted(cyclic)), kexp)


# ---------------------------------------------------------------------------
# quotient orders
# ---------------------------------------------------------------------------

def quotient_order_nk(X: PresentedModule, n: int, k: int) -> FiniteQuotientReport:
    """Order exponent of X / (l^(n+k) X + omega_n X), exactly."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ell = X.ring.ell
    kexp = n + k
    q = ell ** kexp
    A, D = _expand_relations(X.ring, X.relations, n, k, q, X.degree_cap)
    if A.shape[0] == 0:
        A = np.zeros((0, X.num_generators * D), dtype=np.int64)
    return _cokernel_report(A, ell, kexp, n, k)


def quotient_order(X: PresentedModule, n: int) -> FiniteQuotientReport:
    """Order exponent of the level-n quotient X / (l^(n+1) X + omega_n X)."""
    return quotient_order_nk(X, n, 1)


def quotient_order_with_y(X: PresentedModule, y_gens, m: int, n: int,
                          k: int = 1) -> FiniteQuotientReport:
    """Order of X / (l^(n+k) X + omega_n X + (omega_n/omega_m) Y).

    Each Y-generator is a coordinate vector of LambdaElement over X's
    generators; the quotient adds one relation row nu(n, m) * g per generator.
    """
    if n < m:
        raise ValueError("requires n >= m")
    ring = X.ring
    step = nu(ring, n, m, X.degree_cap)
    rows = list(X.relations)
    for g in y_gens:
        if len(g) != X.num_generators:
            raise ValueError("Y generator width does not match X")
        rows.append(tuple(step * entry for entry in g))
    aug = PresentedModule(ring, X.num_generators, tuple(rows), X.degree_cap)
    return quotient_order_nk(aug, n, k)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedFormOrder:
    """Exact closed-form contribution plus the asymptotic torsion slope.

    exponent covers the free and l-power summands (exact at every level);
    lambda_slope is the eventual per-level increment contributed by the
    distinguished-polynomial summands, whose constant term is not given by a
    closed form and must be pinned by quotient_order.
    """

    exponent: int
    exact: bool
    lambda_slope: int


def closed_form_order(spec: ElementaryModuleSpec, n: int, k: int = 1) -> ClosedFormOrder:
    ell = spec.ring.ell
    d = spec.ring.degree
    x = spec.rho * (n + k) * (ell ** n) * d
    for m in spec.m_list:
        x += min(m, n + k) * (ell ** n) * d
    slope = sum(f.degree for f in spec.f_list) * d
    return ClosedFormOrder(x, not spec.f_list, slope)


# ---------------------------------------------------------------------------
# boundary submodules of torsion elementary modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryBasis:
    """Generating set of l^(n+1) E intersect omega_n E inside E / l^N E."""

    n: int
    modulus_exponent: int
    rank: int
    generators: tuple  # rows over Z/l^N


def boundary_submodule(spec: ElementaryModuleSpec, n: int,
                       degree_cap: int = DEFAULT_DEGREE_CAP) -> BoundaryBasis:
    """Boundary submodule of a torsion-only elementary module at level n.

    Works inside the finite approximation E / l^N E with N the ring precision;
    requires N >= n + 2.  l^m summands are supported when l^(n+1) already
    kills them (m <= n + 1), where they contribute nothing.
    """
    if spec.rho != 0:
        raise ValueError("boundary submodule needs a torsion-only module")
    ring = spec.ring
    ell, N = ring.ell, ring.precision
    if N < n + 2:
        raise PrecisionTooLow("boundary computation needs precision N >= n + 2")
    for m in spec.m_list:
        if m > n + 1:
            raise PrecisionTooLow(
                "l^m summand with m > n+1 has no finite approximation here")
    q = ell ** N
    w = omega(ring, n, degree_cap)
    blocks = []
    rank = 0
    for f in spec.f_list:
        W = _mult_matrix(w, f.poly, q)
        blocks.append(W)
        rank += W.shape[0]
    if rank == 0:
        return BoundaryBasis(n, N, 0, ())
    # omega_n E generators: basis rows of each block, embedded block-diagonally
    omega_gens = np.zeros((rank, rank), dtype=np.int64)
    pos = 0
    for W in blocks:
        r = W.shape[0]
        omega_gens[pos:pos + r, pos:pos + r] = W
        pos += r
    scalar_gens = (np.eye(rank, dtype=np.int64) * (ell ** (n + 1))) % q
    inter = subgroup_intersection(scalar_gens, omega_gens, ell, N)
    return BoundaryBasis(n, N, rank, tuple(tuple(int(v) for v in row) for row in inter))
