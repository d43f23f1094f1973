# cython: language_level=3
"""Compiled exact elimination kernels.

Same semantics as _purecore, but rationals travel as gcd-reduced
(numerator, denominator) pairs of Python ints in flat parallel lists,
which avoids Fraction object overhead inside the elimination loops.
The reduction identities mirror the ones Fraction itself uses, so every
stored pair stays in lowest terms with a positive denominator.
"""

from fractions import Fraction
from math import gcd


cdef int _gauss_jordan(list nums, list dens, Py_ssize_t m, Py_ssize_t ncols) except -1:
    """Reduce the first m columns to identity; 0 when that block is singular."""
    cdef Py_ssize_t col, r, row, j, pbase, rbase
    cdef object pn, pd, fn, fd, bn, bd, an, ad, g, g2, s, t, num, den
    for col in range(m):
        row = -1
        for r in range(col, m):
            if nums[r * ncols + col] != 0:
                row = r
                break
        if row == -1:
            return 0
        pbase = col * ncols
        if row != col:
            rbase = row * ncols
            for j in range(col, ncols):
                nums[pbase + j], nums[rbase + j] = nums[rbase + j], nums[pbase + j]
                dens[pbase + j], dens[rbase + j] = dens[rbase + j], dens[pbase + j]
        pn = nums[pbase + col]
        pd = dens[pbase + col]
        if pn != pd:
            # scale the pivot row by pd/pn
            if pn < 0:
                fn = -pd
                fd = -pn
            else:
                fn = pd
                fd = pn
            nums[pbase + col] = 1
            dens[pbase + col] = 1
            for j in range(col + 1, ncols):
                bn = nums[pbase + j]
                if bn == 0:
                    continue
                bd = dens[pbase + j]
                g = gcd(bn, fd)
                if g != 1:
                    bn = bn // g
                    den = fd // g
                else:
                    den = fd
                g2 = gcd(fn, bd)
                if g2 != 1:
                    t = fn // g2
                    bd = bd // g2
                else:
                    t = fn
                nums[pbase + j] = bn * t
                dens[pbase + j] = den * bd
        for r in range(m):
            if r == col:
                continue
            rbase = r * ncols
            fn = nums[rbase + col]
            if fn == 0:
                continue
            fd = dens[rbase + col]
            nums[rbase + col] = 0
            dens[rbase + col] = 1
            for j in range(col + 1, ncols):
                bn = nums[pbase + j]
                if bn == 0:
                    continue
                bd = dens[pbase + j]
                # prod = (fn/fd) * (bn/bd), reduced
                g = gcd(fn, bd)
                if g != 1:
                    num = fn // g
                    bd = bd // g
                else:
                    num = fn
                g2 = gcd(bn, fd)
                if g2 != 1:
                    t = bn // g2
                    den = fd // g2
                else:
                    t = bn
                    den = fd
                num = num * t
                den = den * bd
                # entry -= num/den
                an = nums[rbase + j]
                if an == 0:
                    nums[rbase + j] = -num
                    dens[rbase + j] = den
                    continue
                ad = dens[rbase + j]
                g = gcd(ad, den)
                if g == 1:
                    nums[rbase + j] = an * den - num * ad
                    dens[rbase + j] = ad * den
                else:
                    s = ad // g
                    t = an * (den // g) - num * s
                    g2 = gcd(t, g)
                    if g2 == 1:
                        nums[rbase + j] = t
                        dens[rbase + j] = s * den
                    else:
                        nums[rbase + j] = t // g2
                        dens[rbase + j] = s * (den // g2)
    return 1


cdef void _load_entry(list nums, list dens, object x):
    nums.append(x.numerator)
    dens.append(x.denominator)


def mat_rank(mat):
    """Rank of a matrix via exact forward elimination."""
    cdef Py_ssize_t m = len(mat)
    if m == 0:
        return 0
    cdef Py_ssize_t n = len(mat[0])
    cdef list nums = [], dens = []
    for row in mat:
        for x in row:
            _load_entry(nums, dens, x)
    cdef Py_ssize_t rank = 0, col, r, piv, j, pbase, rbase
    cdef object fn, fd, bn, bd, an, ad, g, g2, s, t, num, den
    for col in range(n):
        piv = -1
        for r in range(rank, m):
            if nums[r * n + col] != 0:
                piv = r
                break
        if piv == -1:
            continue
        pbase = rank * n
        if piv != rank:
            rbase = piv * n
            for j in range(col, n):
                nums[pbase + j], nums[rbase + j] = nums[rbase + j], nums[pbase + j]
                dens[pbase + j], dens[rbase + j] = dens[rbase + j], dens[pbase + j]
        for r in range(rank + 1, m):
            rbase = r * n
            fn = nums[rbase + col]
            if fn == 0:
                continue
            fd = dens[rbase + col]
            # factor = (fn/fd) / pivot
            an = nums[pbase + col]
            ad = dens[pbase + col]
            g = gcd(fn, an)
            if g != 1:
                fn = fn // g
                an = an // g
            g2 = gcd(ad, fd)
            if g2 != 1:
                ad = ad // g2
                fd = fd // g2
            fn = fn * ad
            fd = fd * an
            if fd < 0:
                fn = -fn
                fd = -fd
            nums[rbase + col] = 0
            dens[rbase + col] = 1
            for j in range(col + 1, n):
                bn = nums[pbase + j]
                if bn == 0:
                    continue
                bd = dens[pbase + j]
                g = gcd(fn, bd)
                if g != 1:
                    num = fn // g
                    bd = bd // g
                else:
                    num = fn
                g2 = gcd(bn, fd)
                if g2 != 1:
                    t = bn // g2
                    den = fd // g2
                else:
                    t = bn
                    den = fd
                num = num * t
                den = den * bd
                an = nums[rbase + j]
                if an == 0:
                    nums[rbase + j] = -num
                    dens[rbase + j] = den
                    continue
                ad = dens[rbase + j]
                g = gcd(ad, den)
                if g == 1:
                    nums[rbase + j] = an * den - num * ad
                    dens[rbase + j] = ad * den
                else:
                    s = ad // g
                    t = an * (den // g) - num * s
                    g2 = gcd(t, g)
                    if g2 == 1:
                        nums[rbase + j] = t
                        dens[rbase + j] = s * den
                    else:
                        nums[rbase + j] = t // g2
                        dens[rbase + j] = s * (den // g2)
        rank += 1
        if rank == m:
            break
    return rank


def solve_columns(mat, rhs):
    """Solve M @ X = RHS exactly for square M; None when M is singular."""
    cdef Py_ssize_t m = len(mat)
    cdef Py_ssize_t k = len(rhs[0]) if m else 0
    cdef Py_ssize_t ncols = m + k
    cdef list nums = [], dens = []
    cdef Py_ssize_t i, j
    for i in range(m):
        for x in mat[i]:
            _load_entry(nums, dens, x)
        for x in rhs[i]:
            _load_entry(nums, dens, x)
    if not _gauss_jordan(nums, dens, m, ncols):
        return None
    return [
        [Fraction(nums[i * ncols + j], dens[i * ncols + j]) for j in range(m, ncols)]
        for i in range(m)
    ]


def basic_values(A, b, basis0):
    """A_B^{-1} b for 0-based basis column indices; None when A_B is singular."""
    cdef Py_ssize_t m = len(A)
    cdef Py_ssize_t ncols = m + 1
    cdef list nums = [], dens = []
    cdef Py_ssize_t i, j
    for i in range(m):
        row = A[i]
        for j in basis0:
            _load_entry(nums, dens, row[j])
        _load_entry(nums, dens, b[i])
    if not _gauss_jordan(nums, dens, m, ncols):
        return None
    return [Fraction(nums[i * ncols + m], dens[i * ncols + m]) for i in range(m)]


def dictionary_arrays(A, b, c, basis0):
    """Dictionary data for a basis: (b_bar, c_bar, A_bar, z0), or None if singular."""
    cdef Py_ssize_t m = len(A)
    cdef Py_ssize_t n = len(A[0])
    cdef Py_ssize_t ell = n - m
    cdef Py_ssize_t ncols = n + 1
    cdef list in_basis = [False] * n
    cdef Py_ssize_t i, j, kk, base
    for j in basis0:
        in_basis[j] = True
    cdef list nonbasis0 = [j for j in range(n) if not in_basis[j]]
    cdef list nums = [], dens = []
    for i in range(m):
        row = A[i]
        for j in basis0:
            _load_entry(nums, dens, row[j])
        for j in nonbasis0:
            _load_entry(nums, dens, row[j])
        _load_entry(nums, dens, b[i])
    if not _gauss_jordan(nums, dens, m, ncols):
        return None
    cdef list b_bar = [Fraction(nums[i * ncols + n], dens[i * ncols + n]) for i in range(m)]
    cdef list a_bar = [
        [Fraction(nums[i * ncols + m + kk], dens[i * ncols + m + kk]) for kk in range(ell)]
        for i in range(m)
    ]
    # reduced costs and objective offset, accumulated in pairs
    cdef list cb_n = [], cb_d = []
    for j in basis0:
        _load_entry(cb_n, cb_d, c[j])
    cdef object acc_n, acc_d, fn, fd, bn, bd, g, g2, s, t, num, den
    cdef list c_bar = []
    for kk in range(ell):
        x = c[nonbasis0[kk]]
        acc_n = x.numerator
        acc_d = x.denominator
        for i in range(m):
            fn = cb_n[i]
            if fn == 0:
                continue
            base = i * ncols + m + kk
            bn = nums[base]
            if bn == 0:
                continue
            fd = cb_d[i]
            bd = dens[base]
            g = gcd(fn, bd)
            if g != 1:
                num = fn // g
                bd = bd // g
            else:
                num = fn
            g2 = gcd(bn, fd)
            if g2 != 1:
                t = bn // g2
                den = fd // g2
            else:
                t = bn
                den = fd
            num = num * t
            den = den * bd
            if acc_n == 0:
                acc_n = -num
                acc_d = den
                continue
            g = gcd(acc_d, den)
            if g == 1:
                acc_n, acc_d = acc_n * den - num * acc_d, acc_d * den
            else:
                s = acc_d // g
                t = acc_n * (den // g) - num * s
                g2 = gcd(t, g)
                if g2 == 1:
                    acc_n = t
                    acc_d = s * den
                else:
                    acc_n = t // g2
                    acc_d = s * (den // g2)
        c_bar.append(Fraction(acc_n, acc_d))
    z0 = Fraction(0)
    for i in range(m):
        if cb_n[i] != 0:
            z0 += Fraction(cb_n[i], cb_d[i]) * b_bar[i]
    return b_bar, c_bar, a_bar, z0
