"""Pure-Python (numpy-vectorised) row reduction over F_p.

Same contract as the compiled ``_rref`` extension: reduce ``a`` in place to
reduced row-echelon form and return the pivot columns.
"""

import numpy as np


def rref_inplace(a, p):
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i], c:] = a[[i, r], c:]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return pivots
