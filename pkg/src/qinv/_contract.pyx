# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled inner loop of the basic-invariant contraction.

One pass over the composite basis states, multiplying one matrix entry per
tensor copy.  Semantics match qinv._contract_py.contract_blocks exactly.
"""


def contract_blocks(const double complex[:, :, ::1] mats,
                    const unsigned int[:, ::1] rows,
                    const unsigned int[:, ::1] cols):
    cdef Py_ssize_t nstates = rows.shape[0]
    cdef Py_ssize_t k = rows.shape[1]
    cdef Py_ssize_t x, c
    cdef double complex acc = 0
    cdef double complex term
    for x in range(nstates):
        term = mats[0, rows[x, 0], cols[x, 0]]
        for c in range(1, k):
            term = term * mats[c, rows[x, c], cols[x, c]]
        acc = acc + term
    return acc
