"""Constructors for the named benchmark states and the seeded random samplers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DensityMatrix,
    Observable,
    ValidationError,
    gell_mann_basis,
    kron_chain,
    make_density_matrix,
    make_observable,
)


def paulis() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(sigma_x, sigma_y, sigma_z) as plain arrays."""
    b = gell_mann_basis(2)
    return b.generators[0].matrix, b.generators[1].matrix, b.generators[2].matrix


def qubit_state(r) -> np.ndarray:
    """(I + r . sigma)/2 for a Bloch vector with |r| <= 1."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValidationError(f"qubit Bloch vector must have 3 components, got {r.shape}")
    if np.linalg.norm(r) > 1 + 1e-12:
        raise ValidationError(f"qubit Bloch vector has norm {np.linalg.norm(r):.6f} > 1")
    sx, sy, sz = paulis()
    return (np.eye(2, dtype=complex) + r[0] * sx + r[1] * sy + r[2] * sz) / 2.0


def singlet() -> DensityMatrix:
    """The two-qubit singlet |01> - |10> (normalized) as a state."""
    v = np.zeros(4, dtype=complex)
    v[1], v[2] = 1.0, -1.0
    v /= np.sqrt(2.0)
    return make_density_matrix(np.outer(v, v.conj()), (2, 2))


def werner(p: float) -> DensityMatrix:
    """p |psi-><psi-| + (1-p) I/4; correlation tensor -p I_3."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"werner parameter must lie in [0, 1], got {p}")
    m = p * singlet().matrix + (1.0 - p) * np.eye(4, dtype=complex) / 4.0
    return make_density_matrix(m, (2, 2))


def canonical_example(alpha: float) -> DensityMatrix:
    """Two-qubit family with r1 = (0,0,2(1-a)/5), r2 = (0,0,-3(1-a)/5), T = -a I.

    Positivity is checked at construction rather than assumed from a range.
    """
    sx, sy, sz = paulis()
    eye2 = np.eye(2, dtype=complex)
    m = np.eye(4, dtype=complex)
    m += 0.4 * (1.0 - alpha) * np.kron(sz, eye2)
    m -= 0.6 * (1.0 - alpha) * np.kron(eye2, sz)
    for s in (sx, sy, sz):
        m -= alpha * np.kron(s, s)
    return make_density_matrix(m / 4.0, (2, 2))


def tiles_bound_entangled() -> DensityMatrix:
    """The 3x3 Tiles state: (I_9 - sum of the five tile projectors)/4.

    PPT-positive yet entangled (detected by the correlation-matrix criteria).
    """
    e = np.eye(3)
    s2 = np.sqrt(2.0)
    vecs = [
        np.kron(e[0], (e[0] - e[1]) / s2),
        np.kron((e[0] - e[1]) / s2, e[2]),
        np.kron(e[2], (e[1] - e[2]) / s2),
        np.kron((e[1] - e[2]) / s2, e[0]),
        np.kron(e[0] + e[1] + e[2], e[0] + e[1] + e[2]) / 3.0,
    ]
    proj = sum(np.outer(v, v.conj()) for v in vecs)
    return make_density_matrix((np.eye(9) - proj) / 4.0, (3, 3))


def schmidt_pure(lam: float) -> DensityMatrix:
    """sqrt(lam)|00> + sqrt(1-lam)|11>; concurrence 2 sqrt(lam(1-lam))."""
    if not 0.0 <= lam <= 1.0:
        raise ValidationError(f"schmidt coefficient must lie in [0, 1], got {lam}")
    v = np.zeros(4, dtype=complex)
    v[0] = np.sqrt(lam)
    v[3] = np.sqrt(1.0 - lam)
    return make_density_matrix(np.outer(v, v.conj()), (2, 2))


def nqubit_product(bloch_vectors) -> DensityMatrix:
    """Tensor product of qubit states (I + r_i . sigma)/2."""
    vecs = [np.asarray(r, dtype=float) for r in bloch_vectors]
    if not vecs:
        raise ValidationError("at least one Bloch vector is required")
    m = kron_chain([qubit_state(r) for r in vecs])
    return make_density_matrix(m, (2,) * len(vecs))


def ghz3() -> DensityMatrix:
    """Three-qubit GHZ state, used as the entangled fixture for the product test."""
    v = np.zeros(8, dtype=complex)
    v[0] = v[7] = 1.0 / np.sqrt(2.0)
    return make_density_matrix(np.outer(v, v.conj()), (2, 2, 2))


@dataclass(frozen=True)
class NamedState:
    """A constructed benchmark state together with its id and parameters."""

    name: str
    parameters: dict
    state: DensityMatrix


def named_state(name: str, parameters: dict | None = None) -> NamedState:
    """Resolve a CLI state id (werner, canonical, tiles, schmidt, nqubit-product)."""
    params = dict(parameters or {})

    def need(key):
        if key not in params:
            raise ValidationError(f"state '{name}' requires parameter '{key}'")
        return params[key]

    if name == "werner":
        state = werner(float(need("p")))
    elif name == "canonical":
        state = canonical_example(float(need("alpha")))
    elif name == "tiles":
        state = tiles_bound_entangled()
    elif name == "schmidt":
        state = schmidt_pure(float(need("lambda")))
    elif name == "nqubit-product":
        keys = sorted(k for k in params if k.startswith("r"))
        if not keys:
            raise ValidationError("state 'nqubit-product' requires parameters r1, r2, ...")
        state = nqubit_product([params[k] for k in keys])
    else:
        raise ValidationError(f"unknown state id '{name}'")
    return NamedState(name, params, state)


# ---------------------------------------------------------------------------
# Seeded samplers. All randomness flows through numpy's PCG64 generator so a
# given seed reproduces the same objects on every platform.
#
#   pure       normalized standard-Gaussian complex vector -> projector
#   mixed      convex mixture of 1-4 pure states, Dirichlet(1,..,1) weights
#   separable  convex mixture of 1-4 pure product states (bipartite d x d)
#   observable Hermitian part of a Gaussian complex matrix, largest entry
#              modulus scaled to 1
#   rotation   QR-orthogonalized Gaussian matrix (sign-fixed, Haar)
# ---------------------------------------------------------------------------

def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_pure(dim: int, rng: np.random.Generator, dims=None) -> DensityMatrix:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    return make_density_matrix(np.outer(v, v.conj()), dims if dims is not None else (dim,))


def random_mixed(dim: int, rng: np.random.Generator, dims=None) -> DensityMatrix:
    k = int(rng.integers(1, 5))
    weights = rng.dirichlet(np.ones(k))
    m = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v /= np.linalg.norm(v)
        m += w * np.outer(v, v.conj())
    return make_density_matrix(m, dims if dims is not None else (dim,))


def random_separable(local_dim: int, rng: np.random.Generator) -> DensityMatrix:
    k = int(rng.integers(1, 5))
    weights = rng.dirichlet(np.ones(k))
    m = np.zeros((local_dim**2, local_dim**2), dtype=complex)
    for w in weights:
        a = random_pure(local_dim, rng).matrix
        b = random_pure(local_dim, rng).matrix
        m += w * np.kron(a, b)
    return make_density_matrix(m, (local_dim, local_dim))


def random_observable(dim: int, rng: np.random.Generator) -> Observable:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = (g + g.conj().T) / 2.0
    peak = np.abs(h).max()
    if peak > 0:
        h /= peak
    return make_observable(h)


def random_rotation(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    return q


def random_sampler(kind: str, dim: int, seed: int):
    """One deterministic draw of the requested kind for (kind, dim, seed).

    For ``separable``, ``dim`` is the local dimension of a d x d bipartite
    state; for ``rotation`` it is the matrix size.
    """
    if dim < 2:
        raise ValidationError(f"sampler dimension must be >= 2, got {dim}")
    rng = rng_from_seed(seed)
    if kind == "pure":
        return random_pure(dim, rng)
    if kind == "mixed":
        return random_mixed(dim, rng)
    if kind == "separable":
        return random_separable(dim, rng)
    if kind == "observable":
        return random_observable(dim, rng)
    if kind == "rotation":
        return random_rotation(dim, rng)
    raise ValidationError(f"unknown sampler kind '{kind}'")
