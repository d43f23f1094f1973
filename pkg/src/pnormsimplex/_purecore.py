"""Pure-Python exact elimination kernels.

Reference implementation of the hot kernels; the compiled module in
_exactcore.pyx mirrors these semantics exactly.  All matrices are lists of
row lists whose entries are Fractions (ints are accepted and coerced).
"""

from fractions import Fraction


def _rows(mat):
    return [[Fraction(x) for x in row] for row in mat]


def mat_rank(mat):
    """Rank of a matrix via exact forward elimination."""
    rows = _rows(mat)
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for r in range(rank + 1, m):
            f = rows[r][col]
            if f:
                factor = f / prow[col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == m:
            break
    return rank


def _gauss_jordan(rows, m):
    """Reduce the first m columns of an m-row augmented matrix to identity.

    Returns False when the left m-by-m block is singular.  Mutates rows.
    """
    for col in range(m):
        pivot = next((r for r in range(col, m) if rows[r][col] != 0), None)
        if pivot is None:
            return False
        rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        if inv != 1:
            rows[col] = prow = [x * inv for x in prow]
        for r in range(m):
            if r == col:
                continue
            f = rows[r][col]
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
    return True


def solve_columns(mat, rhs):
    """Solve M @ X = RHS exactly for square M; None when M is singular.

    rhs is given as m rows of k entries; the result has the same layout.
    """
    m = len(mat)
    rows = [[Fraction(x) for x in mrow] + [Fraction(x) for x in rrow]
            for mrow, rrow in zip(mat, rhs)]
    if not _gauss_jordan(rows, m):
        return None
    return [row[m:] for row in rows]


def basic_values(A, b, basis0):
    """A_B^{-1} b for 0-based basis column indices; None when A_B is singular."""
    m = len(A)
    rows = [[Fraction(A[i][j]) for j in basis0] + [Fraction(b[i])] for i in range(m)]
    if not _gauss_jordan(rows, m):
        return None
    return [row[m] for row in rows]


def dictionary_arrays(A, b, c, basis0):
    """Dictionary data for a basis: (b_bar, c_bar, A_bar, z0), or None if singular.

    basis0 holds 0-based basis column indices; the nonbasis is the ascending
    complement.  A_bar is m rows by len(nonbasis) columns.
    """
    m = len(A)
    basis_set = set(basis0)
    nonbasis0 = [j for j in range(len(A[0])) if j not in basis_set]
    rows = [
        [Fraction(A[i][j]) for j in basis0]
        + [Fraction(A[i][j]) for j in nonbasis0]
        + [Fraction(b[i])]
        for i in range(m)
    ]
    if not _gauss_jordan(rows, m):
        return None
    ell = len(nonbasis0)
    a_bar = [row[m:m + ell] for row in rows]
    b_bar = [row[m + ell] for row in rows]
    c_basis = [Fraction(c[j]) for j in basis0]
    c_bar = [
        Fraction(c[nonbasis0[k]]) - sum(c_basis[i] * a_bar[i][k] for i in range(m))
        for k in range(ell)
    ]
    z0 = sum(c_basis[i] * b_bar[i] for i in range(m))
    return b_bar, c_bar, a_bar, Fraction(z0)
