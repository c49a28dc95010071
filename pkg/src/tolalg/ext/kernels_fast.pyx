# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the tolerance algebra.

Same signatures and results as :mod:`tolalg.ext.kernels_slow`.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def support_matmul(const double complex[:, ::1] a, const double complex[:, ::1] b,
                   const cnp.uint8_t[:, ::1] mask):
    """c[i, l] = sum_j a[i, j] b[j, l] over j with mask[i, j] and mask[j, l]; zero off mask."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, l
    cdef double complex aij
    out = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] c = out
    for i in range(n):
        for j in range(n):
            if not mask[i, j]:
                continue
            aij = a[i, j]
            if aij == 0:
                continue
            for l in range(n):
                if mask[j, l] and mask[i, l]:
                    c[i, l] += aij * b[j, l]
    return out


def nonassociative_basis_triple(const cnp.uint8_t[:, ::1] mask):
    """First (i, j, l, q), 0-indexed, with (E_ij * E_jl) * E_lq != E_ij * (E_jl * E_lq).

    Only triples whose middle indices chain can be non-zero; for those the two
    bracketings are [i~l][i~q] E_iq and [j~q][i~q] E_iq. Returns None if none exist.
    """
    cdef Py_ssize_t n = mask.shape[0]
    cdef Py_ssize_t i, j, l, q
    for i in range(n):
        for j in range(n):
            if not mask[i, j]:
                continue
            for l in range(n):
                if not mask[j, l]:
                    continue
                for q in range(n):
                    if mask[l, q] and mask[i, q] and mask[i, l] != mask[j, q]:
                        return (i, j, l, q)
    return None
