"""Exact linear algebra over tower elements.

Two independent rank algorithms are provided: fraction-free (Bareiss-style)
row reduction and a division-based greedy certificate with bordering minors.
They are cross-checked wherever a rank feeds a verified result.
"""
from __future__ import annotations


def det(rows):
    """Exact determinant of a square matrix of AlgebraicElement."""
    M = [row[:] for row in rows]
    n = len(M)
    assert all(len(r) == n for r in M)
    if n == 0:
        raise ValueError("empty matrix")
    tower = M[0][0].tower
    sign = 1
    prev = tower.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not M[r][k].is_zero()), None)
            if piv is None:
                return tower.zero()
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        prev_inv = prev.invert()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) * prev_inv
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return -d if sign < 0 else d


def rank_fraction_free(rows) -> int:
    """Rank by fraction-free row reduction (Bareiss pivoting)."""
    M = [row[:] for row in rows]
    if not M:
        return 0
    n, m = len(M), len(M[0])
    tower = M[0][0].tower
    prev = tower.one()
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = next((i for i in range(r, n) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        prev_inv = prev.invert()
        for i in range(r + 1, n):
            for j in range(c + 1, m):
                M[i][j] = (M[i][j] * M[r][c] - M[i][c] * M[r][j]) * prev_inv
            M[i][c] = tower.zero()
        prev = M[r][c]
        r += 1
    return r


def rank_certificate(rows) -> int:
    """Independent rank computation: division-based greedy pivot growth plus
    a full bordering-minor vanishing check of the final echelon complement.

    Processes columns right-to-left to decorrelate from rank_fraction_free.
    """
    M = [row[:] for row in rows]
    if not M:
        return 0
    n, m = len(M), len(M[0])
    used_rows = []
    used_cols = []
    free_rows = list(range(n))
    for c in range(m - 1, -1, -1):
        piv = next((i for i in free_rows if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        inv = M[piv][c].invert()
        for i in range(n):
            if i == piv or M[i][c].is_zero():
                continue
            f = M[i][c] * inv
            for j in range(m):
                M[i][j] = M[i][j] - f * M[piv][j]
        used_rows.append(piv)
        used_cols.append(c)
        free_rows.remove(piv)
    # bordering check: every remaining entry of the reduced matrix outside the
    # pivot rows must vanish, certifying that no (r+1)-minor survives
    for i in free_rows:
        for j in range(m):
            if not M[i][j].is_zero():
                raise AssertionError("rank certificate inconsistency")
    return len(used_rows)


def rank_checked(rows) -> int:
    """Rank with two-algorithm agreement (raises on disagreement)."""
    r1 = rank_fraction_free(rows)
    r2 = rank_certificate(rows)
    if r1 != r2:
        raise AssertionError(f"rank algorithms disagree: {r1} vs {r2}")
    return r1


def symmetric_rank(H) -> int:
    """Rank of a small symmetric matrix (same algorithms, convenience)."""
    return rank_checked([row[:] for row in H])
