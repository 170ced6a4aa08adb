"""Generalized Gell-Mann generators of su(N) and the tangent-generator solvers.

The basis fixes the coordinates used everywhere else: a unit-trace state and a
Hermitian generator expand as

    rho = (1/N) (I + x . sigma),      G = (1/N) (g0 I + g . sigma),

with real coordinate vectors of length N^2 - 1. The structure-constant
tensors f (totally antisymmetric) and d (totally symmetric) are built once
per dimension from the trace formulas

    f_ijk = Tr([sigma_i, sigma_j] sigma_k) / (4 i),
    d_ijk = Tr({sigma_i, sigma_j} sigma_k) / 4,

and the module solves the linear systems that determine the Hermitian
generator G of the flow  drho/dt = G rho + rho G  from (x, dx/dt), plus the
unitary-evolution specialization and the characteristic-polynomial invariants
of a state (which need no diagonalization).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import matcore

MAX_DIM = 16
CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class GeneratorBasis:
    """Traceless Hermitian generators of su(N) with structure constants.

    Generator ordering: all symmetric off-diagonal pairs first (lexicographic
    in (j, k)), then all antisymmetric pairs, then the diagonal ladder. The
    ordering is part of the coordinate contract; f and d are stored dense.
    """

    dim: int
    sigmas: np.ndarray  # (N^2 - 1, N, N)
    f: np.ndarray       # antisymmetric structure constants
    d: np.ndarray       # symmetric structure constants

    @property
    def size(self) -> int:
        return self.dim * self.dim - 1


def _generator_matrices(n: int) -> np.ndarray:
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=np.complex128)
            m[j, k] = 1.0
            m[k, j] = 1.0
            mats.append(m)
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=np.complex128)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            mats.append(m)
    for k in range(1, n):
        diag = np.zeros(n)
        diag[:k] = 1.0
        diag[k] = -k
        mats.append(np.sqrt(2.0 / (k * (k + 1))) * np.diag(diag).astype(np.complex128))
    return np.array(mats)


@lru_cache(maxsize=None)
def generator_basis(n: int) -> GeneratorBasis:
    """Build (and cache) the su(N) generator basis for 2 <= N <= 16.

    For N = 2 the generators are the Pauli matrices in (x, y, z) order, with
    f the Levi-Civita symbol and d identically zero.
    """
    if not (2 <= n <= MAX_DIM):
        raise ValueError(f"dimension must be between 2 and {MAX_DIM}, got {n}")
    sig = _generator_matrices(n)
    m = sig.shape[0]
    # t[i, j, k] = Tr[sigma_i sigma_j sigma_k]; one BLAS product per i keeps
    # memory at O(m N^2) even when the full tensor is large.
    sig_flat_t = np.ascontiguousarray(sig.transpose(0, 2, 1).reshape(m, n * n))
    t = np.empty((m, m, m), dtype=np.complex128)
    for i in range(m):
        prod = sig[i] @ sig
        t[i] = prod.reshape(m, n * n) @ sig_flat_t.T
    f = (t - t.transpose(1, 0, 2)).imag / 4.0
    d = (t + t.transpose(1, 0, 2)).real / 4.0
    for arr in (sig, f, d):
        arr.setflags(write=False)
    return GeneratorBasis(dim=n, sigmas=sig, f=f, d=d)


def expand(coeff0: float, coeffs, basis: GeneratorBasis) -> np.ndarray:
    """Assemble (1/N) (coeff0 I + coeffs . sigma) as a matrix."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (basis.size,):
        raise ValueError(
            f"coefficient vector must have length {basis.size}, got {c.shape}")
    n = basis.dim
    out = np.tensordot(c, basis.sigmas, axes=(0, 0)).astype(np.complex128)
    out += coeff0 * np.eye(n)
    return out / n


def coefficients(m, basis: GeneratorBasis) -> tuple[float, np.ndarray]:
    """Project a matrix onto (coeff0, coeffs) with coeff_i = (N/2) Tr[m sigma_i]."""
    a = matcore.as_complex_matrix(m)
    if a.shape[0] != basis.dim:
        raise ValueError(f"matrix dimension {a.shape[0]} does not match basis "
                         f"dimension {basis.dim}")
    c0 = float(np.trace(a).real)
    c = 0.5 * basis.dim * np.einsum('iab,ba->i', basis.sigmas, a).real
    return c0, c


@dataclass(frozen=True)
class TangentGenerator:
    """Hermitian generator G = (1/N)(g0 I + g . sigma) of a state flow."""

    g0: float
    g: np.ndarray
    matrix: np.ndarray


def _coupling_matrix(x: np.ndarray, basis: GeneratorBasis) -> np.ndarray:
    """I + X(x) + D(x) with X_kj = -(2/N) x_k x_j and D_kj = sum_i x_i d_ikj."""
    n = basis.dim
    big_x = -(2.0 / n) * np.outer(x, x)
    big_d = np.einsum('i,ikj->kj', x, basis.d)
    return np.eye(basis.size) + big_x + big_d


def solve_tangent_G(x, xdot, basis: GeneratorBasis,
                    psd_tol: float = 1e-10) -> TangentGenerator:
    """Solve (I + X + D) g = (N/2) dx/dt for the generator of drho = G rho + rho G.

    The trace part follows from g0 = -(2/N) x . g. The coupling matrix is
    invertible for interior (full-rank) states; a condition number beyond
    1e12 is reported as an error, which happens when x sits on the pure-state
    boundary.
    """
    x = np.asarray(x, dtype=float)
    xdot = np.asarray(xdot, dtype=float)
    if x.shape != (basis.size,) or xdot.shape != (basis.size,):
        raise ValueError(f"coordinate vectors must have length {basis.size}")
    rho = expand(1.0, x, basis)
    min_eig = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0])
    if min_eig < -psd_tol:
        raise ValueError(f"not a state: most negative eigenvalue {min_eig:.6e}")
    a = _coupling_matrix(x, basis)
    cond = float(np.linalg.cond(a))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise ValueError(
            f"tangent system is singular beyond the conditioning threshold "
            f"(cond = {cond:.3e}); the state is on or beyond the boundary")
    g = np.linalg.solve(a, 0.5 * basis.dim * xdot)
    g0 = float(-(2.0 / basis.dim) * (x @ g) + 0.0)
    return TangentGenerator(g0=g0, g=g, matrix=expand(g0, g, basis))


def unitary_tangent(y, x, basis: GeneratorBasis) -> TangentGenerator:
    """Generator coordinates for unitary evolution driven by y.

    g = Dt y with Dt_kj = sum_i x_i f_ijk and g0 = 0; antisymmetry of f makes
    x . g vanish identically.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (basis.size,) or y.shape != (basis.size,):
        raise ValueError(f"coordinate vectors must have length {basis.size}")
    dt = np.einsum('i,ijk->kj', x, basis.f)
    g = dt @ y
    return TangentGenerator(g0=0.0, g=g, matrix=expand(0.0, g, basis))


def hamiltonian_from_Y(y, x, basis: GeneratorBasis
                       ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Effective field B = [I + X(x) + D(x)] y and its split along x.

    Returns (B, B_parallel, B_perp). The parallel part generates rotations
    about x (a dynamical phase); the perpendicular part drives the orbit.
    For x = 0 the split is (0, B).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (basis.size,) or y.shape != (basis.size,):
        raise ValueError(f"coordinate vectors must have length {basis.size}")
    b = _coupling_matrix(x, basis) @ y
    norm = float(np.linalg.norm(x))
    if norm < 1e-12:
        return b, np.zeros_like(b), b
    xhat = x / norm
    b_par = (b @ xhat) * xhat
    return b, b_par, b - b_par


def characteristic_invariants(rho) -> np.ndarray:
    """Elementary symmetric polynomials S_1..S_N of the spectrum of rho.

    Built from power traces through Newton's identities,

        S_k = (1/k) sum_{j=1..k} (-1)^(j-1) S_{k-j} Tr[rho^j],  S_0 = 1,

    so no diagonalization is involved. S_1 = Tr[rho] = 1 for any state, and
    S_N = det(rho).
    """
    r = matcore.require_hermitian(rho)
    n = r.shape[0]
    power = np.eye(n, dtype=np.complex128)
    ptraces = []
    for _ in range(n):
        power = power @ r
        ptraces.append(float(np.trace(power).real))
    s = [1.0]
    for k in range(1, n + 1):
        acc = 0.0
        for j in range(1, k + 1):
            acc += (-1.0) ** (j - 1) * s[k - j] * ptraces[j - 1]
        s.append(acc / k)
    return np.array(s[1:])
