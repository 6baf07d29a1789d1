"""Independent reference computations used by the tests.

Nothing here imports templeflow: the flux, its Jacobian and the
eigenvalues as functions of the invariants are recoded from scratch.
"""

import numpy as np


def flux(U, s):
    U = np.asarray(U, dtype=float)
    rho, m, n = U[..., 0], U[..., 1], U[..., 2]
    u = m / rho
    v = n / rho
    return np.stack([rho * u, rho * u * u + s * s * v, rho * u * v + u], axis=-1)


def fd_jacobian(U, s, rel_step=1e-3):
    """Fourth-order central-difference Jacobian of :func:`flux`; batched over leading axes."""
    U = np.asarray(U, dtype=float)
    s = np.asarray(s, dtype=float)
    # flux is polynomial in m, n and rational in rho, so rho sets the length scale
    h = rel_step * U[..., 0:1]
    cols = []
    for j in range(3):
        e = np.zeros(3)
        e[j] = 1.0
        step = h * e
        d = (-flux(U + 2 * step, s) + 8 * flux(U + step, s) - 8 * flux(U - step, s) + flux(U - 2 * step, s))
        cols.append(d / (12 * h))
    return np.stack(cols, axis=-1)


def random_conserved(rng, n):
    rho = rng.uniform(0.1, 10.0, n)
    m = rng.uniform(-10.0, 10.0, n)
    nn = rng.uniform(-10.0, 10.0, n)
    s = rng.uniform(0.5, 5.0, n)
    return np.stack([rho, m, nn], axis=-1), s


def primitive_from_invariants(R, s):
    R1, R2, R3 = R
    u = (R3 - R1) / (2 * s)
    v = (R1 + R3) / (2 * s * s)
    rho = 1.0 / (R2 - v)
    return rho, u, v


def lambdas_of_invariants(R, s):
    rho, u, _ = primitive_from_invariants(R, s)
    return np.array([u - s / rho, u, u + s / rho])


def _d5(f, x, e, h):
    return (-f(x + 2 * h * e) + 8 * f(x + h * e) - 8 * f(x - h * e) + f(x - 2 * h * e)) / (12 * h)


def richness_sides(R, s, i, j, k):
    """Both sides of the symmetric mixed-derivative identity for ``lambda(R)``.

    ``d/dR_j (dlam_i/dR_k / (lam_k - lam_i))`` and the same with ``j, k``
    swapped, all derivatives by five-point stencils.  Indices are 0-based.
    """
    R = np.asarray(R, dtype=float)
    rho, _, _ = primitive_from_invariants(R, s)
    # the eigenvalue gaps are s/rho, 2s/rho; their R-gradients are O(max(s, 1/s))
    h = 1e-2 * min(1.0, 2 * s * s) / rho
    eye = np.eye(3)

    def ratio(a, b):
        def g(x):
            dlam = _d5(lambda y: lambdas_of_invariants(y, s)[i], x, eye[b], h)
            lam = lambdas_of_invariants(x, s)
            return dlam / (lam[b] - lam[i])
        return _d5(g, R, eye[a], h)

    return ratio(j, k), ratio(k, j)

