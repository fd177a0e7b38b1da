# cython: language_level=3
"""Compiled exponent-vector kernel; see _expvec_py for the contract."""


cpdef tuple exp_add(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    cdef long x
    for i in range(n):
        x = <long> a[i] + <long> b[i]
        out[i] = x
    return tuple(out)


cpdef tuple exp_sub(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    cdef long x
    for i in range(n):
        x = <long> a[i] - <long> b[i]
        out[i] = x
    return tuple(out)


cpdef bint exp_divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long> a[i] > <long> b[i]:
            return False
    return True


cpdef tuple exp_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    cdef long x, y
    for i in range(n):
        x = <long> a[i]
        y = <long> b[i]
        out[i] = x if x > y else y
    return tuple(out)


cpdef long exp_deg(tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef long s = 0
    for i in range(n):
        s += <long> a[i]
    return s


cpdef Py_ssize_t find_divisor(list lms, tuple m):
    cdef Py_ssize_t i, j, n = len(lms), k = len(m)
    cdef tuple lm
    cdef bint ok
    for i in range(n):
        lm = <tuple> lms[i]
        ok = True
        for j in range(k):
            if <long> lm[j] > <long> m[j]:
                ok = False
                break
        if ok:
            return i
    return -1


def axpy(dict f, list items, tuple u, c):
    cdef tuple m, k
    cdef Py_ssize_t i, j, n = len(u)
    cdef list buf
    cdef long x
    for m, g in items:
        buf = [None] * n
        for j in range(n):
            x = <long> m[j] + <long> u[j]
            buf[j] = x
        k = tuple(buf)
        prod = c * g
        v = f.get(k)
        if v is None:
            f[k] = prod
        else:
            s = v + prod
            if s:
                f[k] = s
            else:
                del f[k]
