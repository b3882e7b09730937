"""Exact rational linear algebra, integer lattice utilities, and LP feasibility.

All arithmetic is over ``fractions.Fraction``; there is no floating point
anywhere in this package.  Vectors are immutable tuples of fractions and
matrices are tuples of equal-length vectors, so every value is hashable and
safe to share.  The LP solver is a two-phase exact simplex with Bland's rule,
which terminates and returns reproducible witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


class ZeroVector(ValueError):
    """A direction was requested for the zero vector."""


class NotAFace(ValueError):
    """The second polyhedron is not a face of the first."""


class WrongCodimension(ValueError):
    """A face has the wrong codimension for the requested operation."""


# ---------------------------------------------------------------------------
# vectors and matrices


def frac(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"``, and fractions to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries: Iterable) -> Vec:
    return tuple(frac(e) for e in entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(i: int, n: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def is_zero(v: Vec) -> bool:
    return all(x == 0 for x in v)


def dot(u: Vec, v: Vec) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def neg(v: Vec) -> Vec:
    return tuple(-a for a in v)


def scale(c, v: Vec) -> Vec:
    c = frac(c)
    return tuple(c * a for a in v)


def mat_vec(A: Mat, x: Vec) -> Vec:
    return tuple(dot(row, x) for row in A)


def transpose(A: Mat) -> Mat:
    return tuple(zip(*A)) if A else ()


def mat_mul(A: Mat, B: Mat) -> Mat:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def identity_mat(n: int) -> Mat:
    return tuple(unit_vec(i, n) for i in range(n))


def mat_inverse(A: Mat) -> Mat:
    """Exact Gauss-Jordan inverse; raises ValueError on a singular matrix."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("inverse of non-square matrix")
    work = [list(row) + [Fraction(1 if j == i else 0) for j in range(n)]
            for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        work[col], work[piv] = work[piv], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


# ---------------------------------------------------------------------------
# elimination, rank, kernel


def rref(A: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [list(r) for r in A]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    kept = tuple(tuple(row) for row in rows[:r])
    return kept, tuple(pivots)


def rank_and_kernel(A: Mat) -> tuple[int, list[Vec]]:
    """Rank of A and a basis of {x : A x = 0}.

    The basis comes from the free columns of the reduced echelon form, so
    rank + len(kernel) equals the column count.
    """
    if not A:
        raise ValueError("empty matrix")
    ncols = len(A[0])
    red, pivots = rref(A)
    rank = len(pivots)
    pivot_set = set(pivots)
    basis: list[Vec] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -red[r][free]
        basis.append(tuple(x))
    return rank, basis


def matrix_rank(A: Mat) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def primitive_vector(v: Vec) -> Vec:
    """Scale a nonzero rational vector to an integer vector with gcd 1.

    The direction is preserved: the result is a positive multiple of v.
    """
    if is_zero(v):
        raise ZeroVector("zero vector has no direction")
    denom_lcm = 1
    for x in v:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(Fraction(a // g) for a in ints)


def as_int_list(v: Vec) -> list[int]:
    if any(x.denominator != 1 for x in v):
        raise ValueError("vector is not integral")
    return [int(x) for x in v]


# ---------------------------------------------------------------------------
# subspaces: canonical bases, reduction


def subspace_canonical_basis(gens: Sequence[Vec]) -> Mat:
    """Canonical basis of the span: primitive RREF rows, ordered by pivot.

    Two generating sets span the same subspace iff they produce identical
    canonical bases.
    """
    gens = [g for g in gens if not is_zero(g)]
    if not gens:
        return ()
    red, _ = rref(mat(gens))
    return tuple(primitive_vector(row) for row in red)


def reduce_mod_subspace(v: Vec, basis: Mat) -> Vec:
    """Unique normal form of v modulo the span of an RREF basis."""
    out = list(v)
    for row in basis:
        pc = next(i for i, x in enumerate(row) if x != 0)
        if out[pc] != 0:
            f = out[pc] / row[pc]
            out = [x - f * y for x, y in zip(out, row)]
    return tuple(out)


def subspace_contains(basis: Mat, v: Vec) -> bool:
    return is_zero(reduce_mod_subspace(v, basis))


# ---------------------------------------------------------------------------
# integer lattices via Smith normal form


def _int_rows(A: Mat) -> list[list[int]]:
    return [as_int_list(row) for row in A]


def smith_normal_form(A: Mat) -> tuple[Mat, Mat, Mat]:
    """Smith normal form of an integer matrix: returns (D, U, V) with U A V = D.

    U and V are unimodular; D is diagonal with d_1 | d_2 | ... >= 0.
    Deterministic pivot choice (smallest |entry|, then lex position).
    """
    D = _int_rows(A)
    m = len(D)
    n = len(D[0]) if D else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        D[i] = [a - q * b for a, b in zip(D[i], D[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(m):
            D[r][i] -= q * D[r][j]
        for r in range(n):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(m):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(m, n):
        # locate pivot: smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if D[i][t] != 0:
                    q = D[i][t] // D[t][t]
                    row_op(i, t, q)
                    if D[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, n):
                if D[t][j] != 0:
                    q = D[t][j] // D[t][t]
                    col_op(j, t, q)
                    if D[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # divisibility: pivot must divide the trailing block
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % D[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            D[t] = [a + b for a, b in zip(D[t], D[offender])]
            U[t] = [a + b for a, b in zip(U[t], U[offender])]
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    to_mat = lambda rows: tuple(tuple(Fraction(x) for x in row) for row in rows)
    return to_mat(D), to_mat(U), to_mat(V)


def integer_kernel_basis(A: Mat) -> Mat:
    """Basis of the lattice {x in Z^n : A x = 0} for integer A.

    The output lattice is saturated: it equals span() ∩ Z^n.
    """
    if not A:
        raise ValueError("empty matrix")
    n = len(A[0])
    D, _, V = smith_normal_form(A)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    cols = transpose(V)
    return tuple(cols[j] for j in range(rank, n))


def saturation_basis(gens: Sequence[Vec], ambient_dim: Optional[int] = None) -> Mat:
    """Basis of span(gens) ∩ Z^n, the saturated lattice of a rational subspace."""
    gens = [g for g in gens if not is_zero(g)]
    if not gens:
        return ()
    n = len(gens[0]) if ambient_dim is None else ambient_dim
    _, kernel = rank_and_kernel(mat(gens))
    if not kernel:
        return identity_mat(n)
    equations = mat([primitive_vector(k) for k in kernel])
    return integer_kernel_basis(equations)


def lattice_complement_projection(gens: Sequence[Vec], ambient_dim: int) -> Mat:
    """Integer projection matrix P with kernel span(gens), mapping Z^n onto Z^(n-l).

    Built from a Smith-normal-form completion of the saturated lattice of the
    subspace, so rational and integral data stay rational and integral, and
    the construction is deterministic.
    """
    basis = saturation_basis(gens, ambient_dim)
    ell = len(basis)
    n = ambient_dim
    if ell == 0:
        return identity_mat(n)
    D, _, V = smith_normal_form(basis)
    for i in range(ell):
        if D[i][i] != 1:
            raise AssertionError("saturated lattice should have trivial invariants")
    # rows of V^{-1} form a Z^n basis whose first `ell` rows span the lattice;
    # coordinates w.r.t. that basis are given by V^T, so dropping the first
    # `ell` coordinates projects along the subspace.
    vt = transpose(V)
    return tuple(vt[i] for i in range(ell, n))


def lattice_quotient_generator(big_gens: Sequence[Vec], small_gens: Sequence[Vec],
                               ambient_dim: int) -> Vec:
    """Integral vector in span(big) generating (span(big) ∩ Z^n)/(span(small) ∩ Z^n).

    Requires the quotient to have rank one, i.e. dim big = dim small + 1.
    The sign of the generator is not determined here.
    """
    B = saturation_basis(big_gens, ambient_dim)
    S = saturation_basis(small_gens, ambient_dim)
    k = len(B)
    if len(S) != k - 1:
        raise WrongCodimension("quotient lattice does not have rank one")
    if k == 1:
        return B[0]
    # coordinates of the small lattice inside the big one (integral since
    # both lattices are saturated in Z^n)
    Bt = transpose(B)
    coords = []
    for s in S:
        sol = _solve_exact(Bt, s)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise AssertionError("small lattice not inside big lattice")
        coords.append(sol)
    D, _, V = smith_normal_form(mat(coords))
    for i in range(k - 1):
        if D[i][i] != 1:
            raise AssertionError("face lattice should be saturated in the cell lattice")
    # last row of V^{-1} descends to a generator of the rank-one quotient
    vinv = mat_inverse(V)
    gen_coords = vinv[k - 1]
    out = zero_vec(ambient_dim)
    for c, b in zip(gen_coords, B):
        out = add(out, scale(c, b))
    return out


def _solve_exact(A: Mat, b: Vec) -> Optional[Vec]:
    """One exact solution of A x = b, or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if A else 0
    aug = mat([tuple(A[i]) + (b[i],) for i in range(m)])
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return tuple(x)


# ---------------------------------------------------------------------------
# linear programming: exact two-phase simplex, Bland's rule


@dataclass(frozen=True)
class LinearProgram:
    """Feasibility problem over free rational variables.

    constraints: tuples (coefficients, rhs, relation) with relation one of
    "=", ">=", ">".  Strict constraints are certified by maximizing a shared
    slack; the program is strictly feasible iff the optimal slack is positive.
    """
    num_vars: int
    constraints: tuple[tuple[Vec, Fraction, str], ...]
    objective: Optional[Vec] = None

    def __post_init__(self):
        for coeffs, _, rel in self.constraints:
            if len(coeffs) != self.num_vars:
                raise ValueError("constraint length mismatch")
            if rel not in ("=", ">=", ">"):
                raise ValueError(f"bad relation {rel!r}")


def make_lp(num_vars: int, constraints, objective=None) -> LinearProgram:
    return LinearProgram(
        num_vars,
        tuple((vec(c), frac(b), rel) for (c, b, rel) in constraints),
        None if objective is None else vec(objective),
    )


def _simplex(rows: list[list[Fraction]], rhs: list[Fraction],
             obj: list[Fraction]) -> tuple[str, list[Fraction], Fraction]:
    """Maximize obj.x subject to rows.x = rhs, x >= 0, rhs >= 0.

    Returns (status, x, value) with status "optimal" or "unbounded"
    ("unbounded" still carries the last feasible basic solution).
    Phase one uses artificial variables; Bland's rule guarantees termination.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    T = [list(rows[i]) + [Fraction(1 if j == i else 0) for j in range(m)] + [rhs[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    total = n + m

    def solve(costs: list[Fraction], allowed: int) -> str:
        while True:
            lam = [costs[basis[i]] for i in range(m)]
            entering = None
            for j in range(allowed):
                if j in basis:
                    continue
                red = costs[j] - sum(lam[i] * T[i][j] for i in range(m))
                if red > 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            leaving = None
            best = None
            for i in range(m):
                if T[i][entering] > 0:
                    ratio = T[i][total] / T[i][entering]
                    if best is None or ratio < best or (
                            ratio == best and basis[i] < basis[leaving]):
                        best = ratio
                        leaving = i
            if leaving is None:
                return "unbounded"
            piv = T[leaving][entering]
            T[leaving] = [x / piv for x in T[leaving]]
            for i in range(m):
                if i != leaving and T[i][entering] != 0:
                    f = T[i][entering]
                    T[i] = [x - f * y for x, y in zip(T[i], T[leaving])]
            basis[leaving] = entering

    # phase one: drive artificials to zero
    art_costs = [Fraction(0)] * n + [Fraction(-1)] * m
    solve(art_costs, total)
    art_value = sum(-T[i][total] for i in range(m) if basis[i] >= n)
    if art_value != 0:
        return "infeasible", [], Fraction(0)
    # pivot remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                continue  # redundant row; keep as zero row
            piv = T[i][col]
            T[i] = [x / piv for x in T[i]]
            for r in range(m):
                if r != i and T[r][col] != 0:
                    f = T[r][col]
                    T[r] = [x - f * y for x, y in zip(T[r], T[i])]
            basis[i] = col

    costs = list(obj) + [Fraction(0)] * m
    status = solve(costs, n)
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][total]
    value = sum(obj[j] * x[j] for j in range(n))
    return status, x, value


def lp_feasible(lp: LinearProgram) -> Optional[Vec]:
    """Exact rational witness satisfying all constraints (strict ones strictly),
    or None iff the system is infeasible.

    Free variables are split into positive and negative parts; strictness is
    certified by maximizing a shared slack bounded by one.  Every witness is
    re-checked by substitution before being returned.
    """
    n = lp.num_vars
    strict = [i for i, (_, _, rel) in enumerate(lp.constraints) if rel == ">"]
    n_surplus = sum(1 for (_, _, rel) in lp.constraints if rel in (">=", ">"))
    has_delta = bool(strict)
    # columns: x+ (n), x- (n), surplus (n_surplus), delta, cap
    ncols = 2 * n + n_surplus + (2 if has_delta else 0)
    delta_col = 2 * n + n_surplus if has_delta else None

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    s_idx = 0
    for coeffs, b, rel in lp.constraints:
        row = [Fraction(0)] * ncols
        for j, a in enumerate(coeffs):
            row[j] = a
            row[n + j] = -a
        if rel in (">=", ">"):
            row[2 * n + s_idx] = Fraction(-1)
            s_idx += 1
        if rel == ">":
            row[delta_col] = Fraction(-1)
        rows.append(row)
        rhs.append(b)
    if has_delta:
        cap = [Fraction(0)] * ncols
        cap[delta_col] = Fraction(1)
        cap[delta_col + 1] = Fraction(1)
        rows.append(cap)
        rhs.append(Fraction(1))
    # normalize rhs >= 0
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]

    if has_delta:
        obj = [Fraction(0)] * ncols
        obj[delta_col] = Fraction(1)
    elif lp.objective is not None:
        obj = list(lp.objective) + [-c for c in lp.objective] + \
            [Fraction(0)] * (ncols - 2 * n)
    else:
        obj = [Fraction(0)] * ncols

    status, x, value = _simplex(rows, rhs, obj)
    if status == "infeasible":
        return None
    if has_delta and value <= 0:
        return None
    witness = tuple(x[j] - x[n + j] for j in range(n))
    check_lp_witness(lp, witness)
    return witness


def check_lp_witness(lp: LinearProgram, witness: Vec) -> None:
    """Independent substitution check; raises AssertionError on violation."""
    for coeffs, b, rel in lp.constraints:
        val = dot(coeffs, witness)
        if rel == "=" and val != b:
            raise AssertionError(f"equality violated: {val} != {b}")
        if rel == ">=" and not val >= b:
            raise AssertionError(f"inequality violated: {val} < {b}")
        if rel == ">" and not val > b:
            raise AssertionError(f"strict inequality violated: {val} <= {b}")


def lattice_normal_generator(sigma, tau) -> Vec:
    """Integral vector in the direction span of sigma pointing from tau into
    sigma, generating the rank-one quotient of the cells' saturated lattices.

    sigma and tau are Polyhedron values with tau a codimension-one face of
    sigma.  The result is well defined up to the face lattice, which does not
    affect balancing verdicts.
    """
    from . import polyhedral  # deferred: keeps the kernel importable alone

    if not polyhedral.is_face_of(tau, sigma):
        raise NotAFace("tau is not a face of sigma")
    if tau.dim != sigma.dim - 1:
        raise WrongCodimension(
            f"expected codimension one, got dim {tau.dim} inside dim {sigma.dim}")
    u = lattice_quotient_generator(sigma.direction_span, tau.direction_span,
                                   sigma.ambient_dim)
    # orient across the unique facet inequality of sigma that is tight on tau
    for a, b in sigma.hrep.inequalities:
        if polyhedral.face_is_tight(tau, a, b):
            side = dot(a, u)
            if side == 0:
                continue
            return u if side > 0 else neg(u)
    raise NotAFace("no supporting inequality separates tau inside sigma")
