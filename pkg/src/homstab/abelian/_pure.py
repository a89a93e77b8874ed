"""Pure-Python elimination kernels over the integers.

These are the reference implementations. The compiled kernels in
``_kernels.pyx`` run the same pivot sequence on int64 storage and must
produce identical output whenever they do not overflow.

All matrices are lists of row lists of Python ints. Transforms that are
naturally updated by column operations are stored transposed so that
every update is a row operation.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _axpy(dst, src, c):
    # dst += c * src, in place
    for k, v in enumerate(src):
        if v:
            dst[k] += c * v


def smith_reduce(a, m, n):
    """Diagonalize the ``m x n`` matrix ``a``.

    Returns ``(S, L, LinvT, RT, Rinv)`` with ``L @ A @ R == S``; ``LinvT``
    and ``RT`` are the transposes of ``L^-1`` and ``R``. Pivot rule: the
    nonzero entry of smallest absolute value in the working submatrix,
    first in row-major order.
    """
    S = [list(row) for row in a]
    L = _identity(m)
    LinvT = _identity(m)
    RT = _identity(n)
    Rinv = _identity(n)

    def add_row(i, t, c):
        # row_i += c * row_t
        _axpy(S[i], S[t], c)
        _axpy(L[i], L[t], c)
        _axpy(LinvT[t], LinvT[i], -c)

    def add_col(j, t, c, t_rows):
        # col_j += c * col_t; only rows in t_rows have col_t nonzero
        for i in t_rows:
            S[i][j] += c * S[i][t]
        _axpy(RT[j], RT[t], c)
        _axpy(Rinv[t], Rinv[j], -c)

    def swap_rows(i, t):
        if i != t:
            S[i], S[t] = S[t], S[i]
            L[i], L[t] = L[t], L[i]
            LinvT[i], LinvT[t] = LinvT[t], LinvT[i]

    def swap_cols(j, t):
        if j != t:
            for row in S:
                row[j], row[t] = row[t], row[j]
            RT[j], RT[t] = RT[t], RT[j]
            Rinv[j], Rinv[t] = Rinv[t], Rinv[j]

    t = 0
    while t < min(m, n):
        best = 0
        bi = bj = -1
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    av = -v if v < 0 else v
                    if best == 0 or av < best:
                        best, bi, bj = av, i, j
                        if av == 1:
                            break
            if best == 1:
                break
        if best == 0:
            break
        swap_rows(bi, t)
        swap_cols(bj, t)

        while True:
            p = S[t][t]
            for i in range(t + 1, m):
                v = S[i][t]
                if v:
                    q = v // p
                    if q:
                        add_row(i, t, -q)
            t_rows = [i for i in range(t, m) if S[i][t]]
            for j in range(t + 1, n):
                v = S[t][j]
                if v:
                    q = v // p
                    if q:
                        add_col(j, t, -q, t_rows)

            best = 0
            bi = bj = -1
            for i in range(t + 1, m):
                v = S[i][t]
                if v:
                    av = -v if v < 0 else v
                    if best == 0 or av < best:
                        best, bi, bj = av, i, t
            for j in range(t + 1, n):
                v = S[t][j]
                if v:
                    av = -v if v < 0 else v
                    if best == 0 or av < best:
                        best, bi, bj = av, t, j
            if best:
                swap_rows(bi, t)
                swap_cols(bj, t)
                continue

            bad = -1
            for i in range(t + 1, m) if p not in (1, -1) else ():
                row = S[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                add_row(t, bad, 1)
                continue
            break

        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            L[t] = [-v for v in L[t]]
            LinvT[t] = [-v for v in LinvT[t]]
        t += 1

    return S, L, LinvT, RT, Rinv


def hermite_reduce(a, m, n):
    """Row-style Hermite normal form of the ``m x n`` matrix ``a``.

    Returns ``(H, U)`` with ``H == U @ A``, pivots positive and entries
    above each pivot reduced into ``[0, pivot)``.
    """
    H = [list(row) for row in a]
    U = _identity(m)
    p = 0
    for j in range(n):
        if p == m:
            break
        while True:
            best = 0
            bi = -1
            for i in range(p, m):
                v = H[i][j]
                if v:
                    av = -v if v < 0 else v
                    if best == 0 or av < best:
                        best, bi = av, i
            if best == 0:
                break
            if bi != p:
                H[bi], H[p] = H[p], H[bi]
                U[bi], U[p] = U[p], U[bi]
            piv = H[p][j]
            done = True
            for i in range(p + 1, m):
                v = H[i][j]
                if v:
                    q = v // piv
                    _axpy(H[i], H[p], -q)
                    _axpy(U[i], U[p], -q)
                    if H[i][j]:
                        done = False
            if done:
                break
        if H[p][j] == 0:
            continue
        if H[p][j] < 0:
            H[p] = [-v for v in H[p]]
            U[p] = [-v for v in U[p]]
        piv = H[p][j]
        for i in range(p):
            q = H[i][j] // piv
            if q:
                _axpy(H[i], H[p], -q)
                _axpy(U[i], U[p], -q)
        p += 1
    return H, U
