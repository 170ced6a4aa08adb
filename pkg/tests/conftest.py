"""Shared random-ensemble helpers for the test suite.

All randomness is seeded per test through numpy Generators so the suite is
deterministic. Full-rank ensembles mix in a fraction of the maximally mixed
state; the spectral floor keeps the inverse roots well conditioned, matching
the full-rank assumption of the geodesic construction.
"""

from __future__ import annotations

import numpy as np


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases.conj()


def random_density(rng: np.random.Generator, n: int, floor: float = 0.0) -> np.ndarray:
    """Hilbert-Schmidt random state, optionally mixed with I/N for a spectral floor."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    if floor:
        rho = (1.0 - floor) * rho + floor * np.eye(n) / n
    return (rho + rho.conj().T) / 2


def random_state_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


def random_traceless_hermitian(rng: np.random.Generator, n: int,
                               norm: float | None = None) -> np.ndarray:
    h = random_hermitian(rng, n)
    h -= np.trace(h).real * np.eye(n) / n
    if norm is not None:
        h *= norm / np.linalg.norm(h)
    return h


def random_bloch(rng: np.random.Generator, basis, floor: float = 0.15) -> np.ndarray:
    """Coordinates of a random full-rank state, guaranteed inside the body."""
    from buresgeo import sun
    rho = random_density(rng, basis.dim, floor=floor)
    _, x = sun.coefficients(rho, basis)
    return x
