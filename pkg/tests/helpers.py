"""Independent oracles shared by the test modules.

Nothing here reuses the closed forms under test: phases come from discrete
Fourier projection, dispersion roots from a damped Newton search on the
defining equations, commuting matrix pairs from polynomial construction.
"""

import math

import numpy as np


def fourier_phase(signal, omega, n=64):
    """Amplitude and phase of a pure sinusoid f(t) = F cos(omega t - psi).

    Projects one exact period onto cos/sin; for a single-harmonic signal the
    discrete projection is exact to rounding.  Returns (F, psi).
    """
    ts = np.arange(n) * (2.0 * math.pi / omega) / n
    f = np.asarray([signal(t) for t in ts], dtype=float)
    a = 2.0 * np.mean(f * np.cos(omega * ts))
    b = 2.0 * np.mean(f * np.sin(omega * ts))
    return math.hypot(a, b), math.atan2(b, a)


def phase_difference(psi_b, psi_e):
    """Wrap psi_b - psi_e into (-pi, pi]."""
    d = (psi_b - psi_e) % (2.0 * math.pi)
    return d - 2.0 * math.pi if d > math.pi else d


def random_direction(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def random_transverse_amplitude(rng, tau, scale=1.0):
    """Complex 3-vector orthogonal to tau, built in an explicit transverse basis."""
    seed = rng.standard_normal(3)
    e1 = seed - np.dot(seed, tau) * tau
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(tau, e1)
    c = rng.standard_normal(4)
    return scale * ((c[0] + 1j * c[1]) * e1 + (c[2] + 1j * c[3]) * e2)


def dispersion_root_search(epsilon, mu, sigma, omega, tol=1e-14, max_iter=500):
    """Damped Newton on the coupled (k, s) system, in scaled variables.

    Unknowns are (k, s)/(omega sqrt(eps mu)); the start is the non-conducting
    solution (1, 0).  Steps are halved until the residual norm decreases.
    Returns (k, s) in physical units.
    """
    q = sigma / (epsilon * omega)

    def residual(v):
        kk, ss = v
        return np.array([ss * ss - kk * kk + 1.0, q - 2.0 * kk * ss])

    v = np.array([1.0, 0.0])
    scale = max(1.0, q)
    for _ in range(max_iter):
        r = residual(v)
        if np.linalg.norm(r) <= tol * scale:
            break
        jac = np.array([[-2.0 * v[0], 2.0 * v[1]], [-2.0 * v[1], -2.0 * v[0]]])
        step = np.linalg.solve(jac, -r)
        lam, n0 = 1.0, np.linalg.norm(r)
        while lam > 1e-14:
            trial = v + lam * step
            if trial[0] > 0.0 and np.linalg.norm(residual(trial)) < n0:
                break
            lam *= 0.5
        v = v + lam * step
    else:
        raise RuntimeError(f"root search did not converge for loss tangent {q}")
    return tuple(v * omega * math.sqrt(epsilon * mu))


def random_commuting_pair(rng, n, scale=0.6):
    """Two commuting n x n complex matrices: B is a polynomial in A."""
    a = scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    coeffs = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    b = scale * (coeffs[0] * np.eye(n) + coeffs[1] * a + coeffs[2] * a @ a)
    return a, b


def random_matrix(rng, n, scale=0.6):
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def polynomial_degree(xs, ts, values, max_degree=6, tol=1e-6):
    """Total degree of a sampled polynomial surface by least-squares fitting.

    Fits monomials x^p t^q with p + q <= d for increasing d and returns the
    smallest degree whose fit residual falls below ``tol`` relative to the
    sample scale.  Returns None if no degree up to max_degree fits.
    """
    x = np.asarray(xs).ravel()
    t = np.asarray(ts).ravel()
    y = np.asarray(values).ravel()
    scale = max(float(np.max(np.abs(y))), 1e-30)
    for degree in range(max_degree + 1):
        cols = [
            x ** p * t ** q
            for p in range(degree + 1)
            for q in range(degree + 1 - p)
        ]
        basis = np.stack(cols, axis=1)
        coeffs, *_ = np.linalg.lstsq(basis, y, rcond=None)
        err = float(np.max(np.abs(basis @ coeffs - y)))
        if err < tol * scale:
            return degree
    return None
