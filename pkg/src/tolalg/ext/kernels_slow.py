"""Pure-Python versions of the compiled kernels in ``kernels_fast.pyx``."""

import numpy as np


def support_matmul(a, b, mask):
    n = a.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    nbrs = [np.flatnonzero(mask[i]) for i in range(n)]
    for i in range(n):
        for j in nbrs[i]:
            aij = a[i, j]
            if aij == 0:
                continue
            for l in nbrs[j]:
                if mask[i, l]:
                    out[i, l] += aij * b[j, l]
    return out


def nonassociative_basis_triple(mask):
    n = mask.shape[0]
    nbrs = [np.flatnonzero(mask[i]) for i in range(n)]
    for i in range(n):
        for j in nbrs[i]:
            for l in nbrs[j]:
                for q in nbrs[l]:
                    if mask[i, q] and mask[i, l] != mask[j, q]:
                        return (int(i), int(j), int(l), int(q))
    return None
