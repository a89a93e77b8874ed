# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""int64 elimination kernels.

Same pivot sequence as ``_pure``. Every multiply/add is overflow-checked;
on overflow an ``OverflowError`` propagates and the caller reruns the
computation with Python integers.
"""
cimport cython
import numpy as np
from libc.stdint cimport int64_t

ctypedef int64_t i64

cdef i64 LIMIT = 4611686018427387904  # 2**62; keeps abs() and negation safe


cdef inline i64 _abs(i64 v) except? -1:
    if v >= LIMIT or v <= -LIMIT:
        raise OverflowError("entry too large for int64 kernel")
    return -v if v < 0 else v


cdef inline i64 _floordiv(i64 a, i64 b) except? -1:
    if a >= LIMIT or a <= -LIMIT:
        raise OverflowError("entry too large for int64 kernel")
    return a // b  # cdivision is off: Python floor semantics


@cython.overflowcheck(True)
cdef int _axpy(i64[:, ::1] M, Py_ssize_t dst, Py_ssize_t src, i64 c) except -1:
    cdef Py_ssize_t k, n = M.shape[1]
    cdef i64 v
    for k in range(n):
        v = M[src, k]
        if v:
            M[dst, k] = M[dst, k] + c * v
    return 0


cdef void _swap(i64[:, ::1] M, Py_ssize_t a, Py_ssize_t b):
    cdef Py_ssize_t k
    cdef i64 tmp
    if a == b:
        return
    for k in range(M.shape[1]):
        tmp = M[a, k]
        M[a, k] = M[b, k]
        M[b, k] = tmp


cdef int _negate(i64[:, ::1] M, Py_ssize_t a) except -1:
    cdef Py_ssize_t k
    for k in range(M.shape[1]):
        if M[a, k] <= -LIMIT:
            raise OverflowError("entry too large for int64 kernel")
        M[a, k] = -M[a, k]
    return 0


@cython.overflowcheck(True)
cdef int _add_row(i64[:, ::1] S, i64[:, ::1] L, i64[:, ::1] LinvT,
                  Py_ssize_t i, Py_ssize_t t, i64 c) except -1:
    _axpy(S, i, t, c)
    _axpy(L, i, t, c)
    _axpy(LinvT, t, i, -c)
    return 0


@cython.overflowcheck(True)
cdef int _add_col(i64[:, ::1] S, i64[:, ::1] RT, i64[:, ::1] Rinv,
                  Py_ssize_t j, Py_ssize_t t, i64 c) except -1:
    cdef Py_ssize_t i
    cdef i64 v
    for i in range(t, S.shape[0]):
        v = S[i, t]
        if v:
            S[i, j] = S[i, j] + c * v
    _axpy(RT, j, t, c)
    _axpy(Rinv, t, j, -c)
    return 0


cdef void _swap_cols(i64[:, ::1] S, i64[:, ::1] RT, i64[:, ::1] Rinv,
                     Py_ssize_t j, Py_ssize_t t):
    cdef Py_ssize_t i
    cdef i64 tmp
    if j == t:
        return
    for i in range(S.shape[0]):
        tmp = S[i, j]
        S[i, j] = S[i, t]
        S[i, t] = tmp
    _swap(RT, j, t)
    _swap(Rinv, j, t)


@cython.overflowcheck(True)
def smith_reduce(a, Py_ssize_t m, Py_ssize_t n):
    """int64 twin of ``_pure.smith_reduce``; same return layout."""
    S_arr = np.array(a, dtype=np.int64).reshape(m, n)
    L_arr = np.eye(m, dtype=np.int64)
    LinvT_arr = np.eye(m, dtype=np.int64)
    RT_arr = np.eye(n, dtype=np.int64)
    Rinv_arr = np.eye(n, dtype=np.int64)
    cdef i64[:, ::1] S = S_arr
    cdef i64[:, ::1] L = L_arr
    cdef i64[:, ::1] LinvT = LinvT_arr
    cdef i64[:, ::1] RT = RT_arr
    cdef i64[:, ::1] Rinv = Rinv_arr
    cdef Py_ssize_t t = 0, i, j, bi, bj, bad
    cdef Py_ssize_t k = m if m < n else n
    cdef i64 best, av, v, p, q

    while t < k:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                v = S[i, j]
                if v:
                    av = _abs(v)
                    if best == 0 or av < best:
                        best = av
                        bi = i
                        bj = j
                        if av == 1:
                            break
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            _swap(S, bi, t)
            _swap(L, bi, t)
            _swap(LinvT, bi, t)
        _swap_cols(S, RT, Rinv, bj, t)

        while True:
            p = S[t, t]
            for i in range(t + 1, m):
                v = S[i, t]
                if v:
                    q = _floordiv(v, p)
                    if q:
                        _add_row(S, L, LinvT, i, t, -q)
            for j in range(t + 1, n):
                v = S[t, j]
                if v:
                    q = _floordiv(v, p)
                    if q:
                        _add_col(S, RT, Rinv, j, t, -q)

            best = 0
            bi = -1
            bj = -1
            for i in range(t + 1, m):
                v = S[i, t]
                if v:
                    av = _abs(v)
                    if best == 0 or av < best:
                        best = av
                        bi = i
                        bj = t
            for j in range(t + 1, n):
                v = S[t, j]
                if v:
                    av = _abs(v)
                    if best == 0 or av < best:
                        best = av
                        bi = t
                        bj = j
            if best:
                if bi != t:
                    _swap(S, bi, t)
                    _swap(L, bi, t)
                    _swap(LinvT, bi, t)
                _swap_cols(S, RT, Rinv, bj, t)
                continue

            bad = -1
            if p == 1 or p == -1:
                break
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i, j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                _add_row(S, L, LinvT, t, bad, 1)
                continue
            break

        if S[t, t] < 0:
            _negate(S, t)
            _negate(L, t)
            _negate(LinvT, t)
        t += 1

    return (S_arr.tolist(), L_arr.tolist(), LinvT_arr.tolist(),
            RT_arr.tolist(), Rinv_arr.tolist())


@cython.overflowcheck(True)
def hermite_reduce(a, Py_ssize_t m, Py_ssize_t n):
    """int64 twin of ``_pure.hermite_reduce``."""
    H_arr = np.array(a, dtype=np.int64).reshape(m, n)
    U_arr = np.eye(m, dtype=np.int64)
    cdef i64[:, ::1] H = H_arr
    cdef i64[:, ::1] U = U_arr
    cdef Py_ssize_t p = 0, i, j, bi
    cdef i64 best, av, v, q, piv
    cdef bint done

    for j in range(n):
        if p == m:
            break
        while True:
            best = 0
            bi = -1
            for i in range(p, m):
                v = H[i, j]
                if v:
                    av = _abs(v)
                    if best == 0 or av < best:
                        best = av
                        bi = i
            if best == 0:
                break
            if bi != p:
                _swap(H, bi, p)
                _swap(U, bi, p)
            piv = H[p, j]
            done = True
            for i in range(p + 1, m):
                v = H[i, j]
                if v:
                    q = _floordiv(v, piv)
                    _axpy(H, i, p, -q)
                    _axpy(U, i, p, -q)
                    if H[i, j]:
                        done = False
            if done:
                break
        if H[p, j] == 0:
            continue
        if H[p, j] < 0:
            _negate(H, p)
            _negate(U, p)
        piv = H[p, j]
        for i in range(p):
            q = _floordiv(H[i, j], piv)
            if q:
                _axpy(H, i, p, -q)
                _axpy(U, i, p, -q)
        p += 1
    return H_arr.tolist(), U_arr.tolist()
