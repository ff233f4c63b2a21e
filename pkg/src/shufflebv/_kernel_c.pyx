# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel: shuffle enumeration and Koszul sign parities.

Mirrors ``_kernel_py`` exactly (same functions, same output order).
"""

BACKEND = "c"


def koszul_parity(perm, parities):
    """Parity of the Koszul exponent of a permutation (see _kernel_py)."""
    cdef Py_ssize_t n = len(perm)
    cdef Py_ssize_t i, j
    cdef int acc = 0
    cdef long pi
    cdef long[64] p
    cdef int[64] q
    if n > 64:
        # fall back to object arithmetic for absurdly long permutations
        acc = 0
        for i in range(n):
            if parities[i]:
                for j in range(i + 1, n):
                    if parities[j] and perm[i] > perm[j]:
                        acc ^= 1
        return acc
    for i in range(n):
        p[i] = perm[i]
        q[i] = 1 if parities[i] else 0
    for i in range(n):
        if q[i]:
            pi = p[i]
            for j in range(i + 1, n):
                if q[j] and pi > p[j]:
                    acc ^= 1
    return acc


def merge_scaled(dict acc, dict terms, coeff):
    """acc[w] += coeff * c for every (w, c) in terms, dropping zero entries.

    Mutates and returns ``acc``; ``coeff`` must be nonzero.
    """
    cdef object w, c, val
    if coeff == 1:
        for w, c in terms.items():
            val = acc.get(w, 0) + c
            if val:
                acc[w] = val
            else:
                acc.pop(w, None)
    else:
        for w, c in terms.items():
            val = acc.get(w, 0) + coeff * c
            if val:
                acc[w] = val
            else:
                acc.pop(w, None)
    return acc


cdef void _rec(tuple u, tuple v, int* pv, int* su,
               Py_ssize_t n, Py_ssize_t m,
               Py_ssize_t i, Py_ssize_t j, int par,
               list word, list out):
    cdef Py_ssize_t k = i + j
    cdef Py_ssize_t t
    if i == n:
        for t in range(j, m):
            word[k + t - j] = v[t]
        out.append((tuple(word), -1 if par else 1))
        return
    if j == m:
        for t in range(i, n):
            word[k + t - i] = u[t]
        out.append((tuple(word), -1 if par else 1))
        return
    word[k] = u[i]
    _rec(u, v, pv, su, n, m, i + 1, j, par, word, out)
    word[k] = v[j]
    _rec(u, v, pv, su, n, m, i, j + 1, par ^ (pv[j] & su[i]), word, out)


def shuffle_signed(u, v, pu, pv):
    """All interleavings of u and v with Koszul signs (see _kernel_py)."""
    cdef tuple ut = tuple(u)
    cdef tuple vt = tuple(v)
    cdef Py_ssize_t n = len(ut)
    cdef Py_ssize_t m = len(vt)
    if n == 0:
        return [(vt, 1)]
    if m == 0:
        return [(ut, 1)]
    cdef int[64] cpu
    cdef int[64] cpv
    cdef int[65] su
    cdef Py_ssize_t i
    if n > 64 or m > 64:
        raise ValueError("word too long for the compiled kernel")
    for i in range(n):
        cpu[i] = 1 if pu[i] else 0
    for i in range(m):
        cpv[i] = 1 if pv[i] else 0
    su[n] = 0
    for i in range(n - 1, -1, -1):
        su[i] = su[i + 1] ^ cpu[i]
    cdef list out = []
    cdef list word = [None] * (n + m)
    _rec(ut, vt, cpv, su, n, m, 0, 0, 0, word, out)
    return out
