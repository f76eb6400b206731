"""Bloch vectors, pairwise correlation tensors, Ky-Fan norms and complete
orthogonal observable sets.

Conventions (d-dimensional sites, generators with Tr[s_i s_j] = 2 delta_ij):

    r_k  = Tr[rho s_k(site)]                       local Bloch vector
    t_kl = Tr[rho s_k(site i) s_l(site j)]         pairwise correlation tensor

so a bipartite state expands as

    rho = I/d^2 + (1/2d)[r1.s (x) I + I (x) r2.s] + (1/4) sum_kl t_kl s_k (x) s_l
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DensityMatrix,
    GeneratorBasis,
    Observable,
    ValidationError,
    make_observable,
    partial_trace,
    real_svd,
)

SET_ORTHO_TOL = 1e-10
REALNESS_TOL = 1e-12
BLOCH_NORM_SLACK = 1e-9


def _check_uniform_dims(rho: DensityMatrix, basis: GeneratorBasis) -> None:
    if any(dd != basis.dim for dd in rho.dims):
        raise ValidationError(
            f"subsystem dims {rho.dims} do not all match generator dimension {basis.dim}"
        )


def _real_part(arr: np.ndarray, what: str) -> np.ndarray:
    imag = float(np.abs(arr.imag).max(initial=0.0))
    if imag > REALNESS_TOL:
        raise ValidationError(f"{what} has imaginary part {imag:.3e}")
    return np.asarray(arr.real)


def bloch_vector(rho: DensityMatrix, basis: GeneratorBasis, site: int) -> np.ndarray:
    """r_k = Tr[rho s_k] at ``site``; the reduced state is I/d + (1/2) r.s."""
    _check_uniform_dims(rho, basis)
    reduced = partial_trace(rho, [site])
    r = np.einsum("ab,kba->k", reduced.matrix, basis.stacked())
    return _real_part(r, "Bloch vector")


def pairwise_correlation_tensor(
    rho: DensityMatrix, basis: GeneratorBasis, sites: tuple[int, int]
) -> np.ndarray:
    """t_kl = Tr[rho s_k(site i) s_l(site j)] as a (d^2-1) x (d^2-1) real matrix."""
    _check_uniform_dims(rho, basis)
    i, j = sites
    if i == j:
        raise ValidationError(f"correlation tensor needs two distinct sites, got {sites}")
    swap = i > j
    reduced = partial_trace(rho, [min(i, j), max(i, j)])
    d = basis.dim
    r4 = reduced.matrix.reshape(d, d, d, d)
    s = basis.stacked()
    t = np.einsum("abcd,kca,ldb->kl", r4, s, s)
    t = _real_part(t, "correlation tensor")
    return t.T if swap else t


@dataclass(frozen=True)
class BlochDecomposition:
    """Local Bloch vectors and all pairwise correlation tensors of a state."""

    dim: int
    sites: int
    local_vectors: tuple[np.ndarray, ...]
    pairwise_tensors: dict


def bloch_decomposition(rho: DensityMatrix, basis: GeneratorBasis) -> BlochDecomposition:
    _check_uniform_dims(rho, basis)
    n = rho.n_subsystems
    d = basis.dim
    cap = 2.0 * (d - 1) / d + BLOCH_NORM_SLACK
    vectors = []
    for site in range(n):
        r = bloch_vector(rho, basis, site)
        if float(r @ r) > cap:
            raise ValidationError(f"Bloch vector at site {site} exceeds the purity bound")
        vectors.append(r)
    tensors = {
        (i, j): pairwise_correlation_tensor(rho, basis, (i, j))
        for i in range(n)
        for j in range(i + 1, n)
    }
    return BlochDecomposition(d, n, tuple(vectors), tensors)


def reconstruct_bipartite(r1, r2, t, basis: GeneratorBasis) -> np.ndarray:
    """Rebuild a bipartite density matrix from (r1, r2, t) in this convention."""
    d = basis.dim
    s = basis.stacked()
    eye = np.eye(d, dtype=complex)
    local1 = np.tensordot(np.asarray(r1, dtype=float), s, axes=(0, 0))
    local2 = np.tensordot(np.asarray(r2, dtype=float), s, axes=(0, 0))
    m = np.eye(d * d, dtype=complex) / (d * d)
    m += (np.kron(local1, eye) + np.kron(eye, local2)) / (2.0 * d)
    t = np.asarray(t, dtype=float)
    m += np.einsum("kl,kab,lcd->acbd", t, s, s).reshape(d * d, d * d) / 4.0
    return m


def ky_fan_norm(m) -> float:
    """Sum of the singular values (trace norm) of a real matrix."""
    _, s, _ = real_svd(m)
    return float(s.sum())


@dataclass(frozen=True)
class OrthogonalObservableSet:
    """A complete set A~_i = sum_j Theta_ij s_j with Tr[A~_i A~_j] = 2 delta_ij."""

    rotation: np.ndarray
    observables: tuple[Observable, ...]
    bloch_rows: np.ndarray

    @property
    def size(self) -> int:
        return len(self.observables)


def orthogonal_observable_set(basis: GeneratorBasis, theta) -> OrthogonalObservableSet:
    """Rotate the generator basis by an orthogonal Theta in R^(d^2-1)."""
    theta = np.asarray(theta, dtype=float)
    n = basis.size
    if theta.shape != (n, n):
        raise ValidationError(f"rotation must be {n} x {n}, got {theta.shape}")
    defect = float(np.abs(theta @ theta.T - np.eye(n)).max())
    if defect > SET_ORTHO_TOL:
        raise ValidationError(f"rotation is not orthogonal (defect {defect:.3e})")
    mats = np.tensordot(theta, basis.stacked(), axes=(1, 0))
    observables = tuple(make_observable(m) for m in mats)
    gram = np.einsum("iab,jba->ij", mats, mats).real
    if float(np.abs(gram - 2.0 * np.eye(n)).max()) > SET_ORTHO_TOL:
        raise ValidationError("rotated observables fail Tr[A_i A_j] = 2 delta_ij")
    return OrthogonalObservableSet(theta.copy(), observables, theta.copy())


def svd_aligned_observable_sets(
    t, basis: GeneratorBasis
) -> tuple[OrthogonalObservableSet, OrthogonalObservableSet]:
    """Sets aligned with the singular vectors of t: a_i = u_i, b_i = -v_i.

    This choice attains sum_i a_i^T t b_i = -||t||_KF, the extremal value used
    by the conditional-variance entanglement witness.
    """
    t = np.asarray(t, dtype=float)
    n = basis.size
    if t.shape != (n, n):
        raise ValidationError(f"correlation tensor must be {n} x {n}, got {t.shape}")
    u, s, v = real_svd(t)
    set_a = orthogonal_observable_set(basis, u.T)
    set_b = orthogonal_observable_set(basis, -v.T)
    achieved = float(np.einsum("ik,kl,il->", set_a.bloch_rows, t, set_b.bloch_rows))
    if abs(achieved + s.sum()) > 1e-10 * max(1.0, s.sum()):
        raise ValidationError("aligned sets failed to attain -||t||_KF")
    return set_a, set_b
