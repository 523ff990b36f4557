"""Exact linear algebra over the rationals.

Two tools: fraction-free (Bareiss) elimination for square systems, and a
dense two-phase simplex with Bland's rule for the nonnegative fallback.
Both work on lists of Fractions and never touch floating point.
"""

from fractions import Fraction
from math import lcm


def _integer_rows(matrix, rhs):
    """Clear the denominators of each matrix row; the right-hand side stays rational."""
    rows = []
    for row, b in zip(matrix, rhs):
        scale = lcm(*(Fraction(v).denominator for v in row))
        rows.append([int(Fraction(v) * scale) for v in row] + [Fraction(b) * scale])
    return rows


def solve_exact(matrix, rhs):
    """Solve ``matrix @ v = rhs``; return the solution or None if singular.

    Rows are cleared of denominators first, then eliminated with Bareiss'
    fraction-free scheme so every matrix entry stays an integer (a minor of
    the scaled matrix). Only the right-hand column is carried as Fractions,
    which keeps huge right-hand sides from inflating the matrix.
    """
    n = len(matrix)
    if n == 0:
        return []
    m = _integer_rows(matrix, rhs)
    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            return None
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
        mk = m[k]
        pkk = mk[k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            if mik == 0 and pkk == prev:
                continue
            for j in range(k + 1, n):
                mi[j] = (pkk * mi[j] - mik * mk[j]) // prev
            mi[n] = (pkk * mi[n] - mik * mk[n]) / prev
            mi[k] = 0
        prev = pkk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = m[i][n]
        for j in range(i + 1, n):
            if m[i][j]:
                acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return x


def _pivot(tableau, basis, row, col):
    pr = tableau[row]
    pv = pr[col]
    if pv != 1:
        tableau[row] = pr = [v / pv for v in pr]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            f = r[col]
            tableau[i] = [a - f * b for a, b in zip(r, pr)]
    basis[row] = col


def _simplex(tableau, basis, allowed):
    """Minimise the objective held in the last row (reduced costs); Bland's rule."""
    m = len(tableau) - 1
    ncols = len(tableau[0]) - 1
    while True:
        obj = tableau[m]
        col = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if col is None:
            return
        best = None
        for i in range(m):
            a = tableau[i][col]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise ArithmeticError("unbounded objective")
        _pivot(tableau, basis, best[1], col)


def least_nonnegative_solution(matrix, rhs):
    """Minimise ``sum(v)`` subject to ``matrix @ v = rhs`` and ``v >= 0``.

    Returns None when infeasible. When the feasible set has a componentwise
    least element this is it, since that element is the unique minimiser of
    the sum.
    """
    n = len(matrix[0]) if matrix else 0
    m = len(matrix)
    rows = []
    for row, b in zip(matrix, rhs):
        row = [Fraction(v) for v in row]
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row + [Fraction(0)] * m + [b])
    for i in range(m):
        rows[i][n + i] = Fraction(1)
    ncols = n + m
    # phase 1 objective: sum of artificials, expressed in reduced form
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            if j < n or j == ncols:
                obj[j] -= rows[i][j]
    tableau = rows + [obj]
    basis = [n + i for i in range(m)]
    _simplex(tableau, basis, [True] * ncols)
    if -tableau[m][-1] != 0:
        return None
    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, i, col)
    # phase 2: minimise sum(v) over original columns only
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        obj[j] = Fraction(1)
    for i in range(m):
        c = basis[i]
        if c < n and obj[c] != 0:
            f = obj[c]
            obj = [a - f * b for a, b in zip(obj, tableau[i])]
    tableau[m] = obj
    _simplex(tableau, basis, [j < n for j in range(ncols)])
    v = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            v[basis[i]] = tableau[i][-1]
    return v
