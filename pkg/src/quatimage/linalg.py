"""Exact Gaussian elimination over any of the supported fields.

Row reduction, linear solving and kernel computation on dense matrices whose
entries are :class:`~quatimage.fields.FieldElement` values.  Everything is
deterministic: pivots are chosen leftmost-first, topmost-first, and
underdetermined solves set free variables to zero (the lexicographically
least solution).
"""

from __future__ import annotations


def rref(rows):
    """Reduced row-echelon form.  Returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve(a_rows, b):
    """One exact solution of A x = b with free variables set to zero.

    Returns None when the system is inconsistent.
    """
    if not a_rows:
        return []
    ncols = len(a_rows[0])
    aug = [list(row) + [bi] for row, bi in zip(a_rows, b)]
    red, pivots = rref(aug)
    zero = b[0].field.zero() if b else None
    for row in red:
        if all(x.is_zero() for x in row[:ncols]) and not row[ncols].is_zero():
            return None
    solution = [zero] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None
        solution[c] = red[r][ncols]
    return solution


def kernel(a_rows, ncols=None, field=None):
    """Basis of the null space, one vector per free column, in column order."""
    if not a_rows:
        return []
    ncols = ncols if ncols is not None else len(a_rows[0])
    field = field if field is not None else a_rows[0][0].field
    red, pivots = rref(a_rows)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [field.zero()] * ncols
        vec[fc] = field.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def matrix_rank(a_rows):
    return len(rref(a_rows)[1])
