import math

import numpy as np

from homstab.complex import SimplicialComplex, edge_loop


def annulus(n=16, radii=(1.0, 2.0)):
    """Triangulated annulus: ring r holds vertices r*n .. r*n+n-1.

    Returns the complex, the (x, y) positions and the inner boundary loop.
    """
    tris = []
    for r in range(len(radii) - 1):
        for i in range(n):
            a, b = r * n + i, r * n + (i + 1) % n
            c, d = a + n, b + n
            tris += [(a, b, d), (a, c, d)]
    K = SimplicialComplex.closure(tris, vertex_count=n * len(radii))
    pos = np.array([(rad * math.cos(2 * math.pi * i / n), rad * math.sin(2 * math.pi * i / n))
                    for rad in radii for i in range(n)])
    loop = edge_loop(K, list(range(n)))
    return K, pos, loop


def angles(pos):
    return np.arctan2(pos[:, 1], pos[:, 0])


def unit(theta):
    return np.column_stack([np.cos(theta), np.sin(theta)])
