"""Independent reference computations used only by the tests.

None of these touch homstab's elimination code.
"""
from fractions import Fraction
from itertools import combinations, product
from math import atan2, gcd, pi

import numpy as np


def det_laplace(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * M[0][j] * det_laplace(minor)
    return total


def invariant_factors(A):
    """Invariant factors from determinantal divisors: d_k = D_k / D_{k-1},
    D_k the gcd of all k x k minors."""
    m = len(A)
    n = len(A[0]) if m else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det_laplace([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        divisors.append(g)
    return tuple(divisors[k] // divisors[k - 1] for k in range(1, len(divisors)))


def rational_rank(A):
    """Rank over Q by Gaussian elimination on Fractions."""
    M = [[Fraction(v) for v in row] for row in A]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


class BruteLattice:
    """Enumerate every coefficient vector in [-B, B]^k once, reuse per instance."""

    def __init__(self, k, bound):
        axis = np.arange(-bound, bound + 1, dtype=np.int16)
        self.grid = np.stack(np.meshgrid(*([axis] * k), indexing="ij"), -1).reshape(-1, k)

    def member(self, b, L):
        L = np.asarray(L, dtype=np.int16)
        images = self.grid @ L.T
        hits = np.flatnonzero(np.all(images == np.asarray(b, dtype=np.int16), axis=1))
        return len(hits) > 0


def brute_member_small(b, columns, bound):
    k = len(columns)
    for x in product(range(-bound, bound + 1), repeat=k):
        if all(sum(x[j] * columns[j][i] for j in range(k)) == b[i] for i in range(len(b))):
            return True
    return not k and not any(b)


def dense_winding(direction, n=64):
    """Winding of a plane field around the unit circle by summing the turning
    angle between consecutive samples on an n-gon."""
    pts = [(np.cos(2 * pi * i / n), np.sin(2 * pi * i / n)) for i in range(n)]
    vecs = [direction(x, y) for x, y in pts]
    total = 0.0
    for a, b in zip(vecs, vecs[1:] + vecs[:1]):
        total += atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1])
    return total / (2 * pi)
