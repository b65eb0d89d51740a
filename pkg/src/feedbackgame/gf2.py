"""Tiny GF(2) linear algebra on int bitsets.

A vector over GF(2) is a Python int whose bit v is coordinate v; a matrix
is a list of such row ints. Python's arbitrary-precision ints make XOR row
operations on <= 30 columns effectively free, so there is no need for
numpy here.
"""

from __future__ import annotations


def rref(rows, ncols: int):
    """Reduced row echelon form.

    Returns (reduced_rows, pivot_cols): the nonzero rows after full
    reduction, and the pivot column of each, in ascending column order.
    """
    rows = list(rows)
    pivot_cols: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i] >> col & 1:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] >> col & 1:
                rows[i] ^= rows[r]
        pivot_cols.append(col)
        r += 1
    return rows[:r], pivot_cols


def nullspace_basis(rows, ncols: int) -> list[int]:
    """Basis of {x : Ax = 0}, one vector per free column, ascending.

    Basis vector for free column f sets coordinate f to 1, all other free
    coordinates to 0, and each pivot coordinate to that pivot row's
    coefficient at f.
    """
    reduced, pivot_cols = rref(rows, ncols)
    pivot_set = set(pivot_cols)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = 1 << f
        for row, p in zip(reduced, pivot_cols):
            if row >> f & 1:
                vec |= 1 << p
        basis.append(vec)
    return basis


def combination(basis, coeff: int) -> int:
    """XOR of the basis vectors selected by the bits of ``coeff``."""
    x = 0
    i = 0
    while coeff:
        if coeff & 1:
            x ^= basis[i]
        coeff >>= 1
        i += 1
    return x
