"""Entanglement detectors.

* conditional-variance witness over complete orthogonal observable sets
* correlation-matrix (Ky-Fan norm) criteria
* the Peres-Horodecki (PPT) reference test
* closed-form mutual-uncertainty tests for pure two-qubit / N-qubit states,
  including the concurrence readout

Correlation-tensor conventions: the witness, the ``condf`` criterion and the
pure-state closed forms all use t_kl = Tr[rho s_k (x) s_l] (the convention in
which <(a.s (x) I)(I (x) b.s)> = a^T t b). The ``dsep`` criterion is stated in
the literature for the unit-coefficient expansion
rho = (1/d^2)[I (x) I + ... + sum T_kl s_k (x) s_l], whose tensor is
(d^2/4) t; it is evaluated in that normalization, where its d(d-1)/2 bound
(and the 3x3 benchmark value 3.1603) live. For qubits the two conventions
coincide.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import (
    OrthogonalObservableSet,
    bloch_vector,
    ky_fan_norm,
    pairwise_correlation_tensor,
    svd_aligned_observable_sets,
)
from .linalg import (
    DensityMatrix,
    ValidationError,
    embed_at_site,
    gell_mann_basis,
    hermitian_eigendecomposition,
    make_observable,
    partial_transpose,
)
from .uncertainty import conditional_variance, mutual_uncertainty

VERDICT_MARGIN = 1e-10
PRODUCT_TEST_MARGIN = 1e-6
PURITY_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-10


@dataclass(frozen=True)
class DetectionVerdict:
    """Outcome of one criterion: ``Entangled`` only when the directional
    comparison of statistic vs threshold holds with margin."""

    criterion: str
    statistic: float
    threshold: float
    verdict: str
    direction: str  # 'below' | 'above' | 'differs'


def _verdict(criterion, statistic, threshold, direction, margin=VERDICT_MARGIN):
    if direction == "below":
        hit = statistic < threshold - margin
    elif direction == "above":
        hit = statistic > threshold + margin
    elif direction == "differs":
        hit = abs(statistic - threshold) > margin
    else:
        raise ValidationError(f"unknown verdict direction '{direction}'")
    return DetectionVerdict(
        criterion=criterion,
        statistic=float(statistic),
        threshold=float(threshold),
        verdict="Entangled" if hit else "Inconclusive",
        direction=direction,
    )


def _require_bipartite_equal(rho: DensityMatrix) -> int:
    if rho.n_subsystems != 2 or rho.dims[0] != rho.dims[1]:
        raise ValidationError(f"expected a bipartite d x d state, got dims {rho.dims}")
    return rho.dims[0]


def _require_pure(rho: DensityMatrix) -> None:
    purity = rho.purity()
    if purity < 1.0 - PURITY_TOL:
        raise ValidationError(f"state is not pure (Tr[rho^2] = {purity:.12f})")


def conditional_variance_witness(
    rho: DensityMatrix,
    set_a: OrthogonalObservableSet,
    set_b: OrthogonalObservableSet,
) -> DetectionVerdict:
    """sum_i D(A_i|B_i)^2 with A_i = A~_i (x) I, B_i = I (x) B~_i vs 2(d-1).

    Entangled when the statistic drops below 2(d-1). Product states satisfy
    the bound for every choice of sets; see the soundness tests for its
    behaviour on non-product separable mixtures.
    """
    d = _require_bipartite_equal(rho)
    n = d * d - 1
    if set_a.size != n or set_b.size != n:
        raise ValidationError(
            f"observable sets must have {n} elements, got {set_a.size} and {set_b.size}"
        )
    if set_a.observables[0].dim != d or set_b.observables[0].dim != d:
        raise ValidationError("observable sets do not match the local dimension")
    stat = 0.0
    for a_til, b_til in zip(set_a.observables, set_b.observables):
        a_full = make_observable(embed_at_site(a_til.matrix, rho.dims, 0))
        b_full = make_observable(embed_at_site(b_til.matrix, rho.dims, 1))
        stat += conditional_variance(rho, a_full, b_full)
    return _verdict("condvar", stat, 2.0 * (d - 1), "below")


def aligned_witness(rho: DensityMatrix) -> DetectionVerdict:
    """Witness evaluated with the SVD-aligned sets of the state's own tensor."""
    d = _require_bipartite_equal(rho)
    basis = gell_mann_basis(d)
    t = pairwise_correlation_tensor(rho, basis, (0, 1))
    set_a, set_b = svd_aligned_observable_sets(t, basis)
    return conditional_variance_witness(rho, set_a, set_b)


def kyfan_criterion(rho: DensityMatrix, which: str) -> DetectionVerdict:
    """Correlation-matrix criteria; Entangled when the norm exceeds the bound.

    which='condf': ||t||_KF vs 2(d-1)/d - (|r1| - |r2|)^2 / 2
    which='dsep' : ||(d^2/4) t||_KF vs d(d-1)/2
    """
    d = _require_bipartite_equal(rho)
    basis = gell_mann_basis(d)
    t = pairwise_correlation_tensor(rho, basis, (0, 1))
    if which == "condf":
        r1 = bloch_vector(rho, basis, 0)
        r2 = bloch_vector(rho, basis, 1)
        gap = np.linalg.norm(r1) - np.linalg.norm(r2)
        threshold = 2.0 * (d - 1) / d - 0.5 * gap * gap
        return _verdict("kyfan-condf", ky_fan_norm(t), threshold, "above")
    if which == "dsep":
        scaled = (d * d / 4.0) * t
        return _verdict("kyfan-dsep", ky_fan_norm(scaled), d * (d - 1) / 2.0, "above")
    raise ValidationError(f"unknown ky-fan criterion '{which}' (use 'condf' or 'dsep')")


def ppt_criterion(rho: DensityMatrix) -> DetectionVerdict:
    """Peres-Horodecki: entangled when the partial transpose has a negative
    eigenvalue. Necessary and sufficient only in 2x2 and 2x3."""
    if rho.n_subsystems != 2:
        raise ValidationError(f"PPT criterion expects a bipartite state, got dims {rho.dims}")
    pt = partial_transpose(rho, 1)
    eigenvalues, _ = hermitian_eigendecomposition(pt)
    return _verdict("ppt", float(eigenvalues[0]), 0.0, "below")


def _unit_vector(vec, name: str) -> np.ndarray:
    v = np.asarray(vec, dtype=float)
    if v.shape != (3,):
        raise ValidationError(f"{name} must be a real 3-vector")
    if abs(np.linalg.norm(v) - 1.0) > ORTHOGONALITY_TOL:
        raise ValidationError(f"{name} must be a unit vector (norm {np.linalg.norm(v):.12f})")
    return v


def _check_in_plane(a: np.ndarray, r: np.ndarray, name: str) -> None:
    if abs(float(a @ r)) > ORTHOGONALITY_TOL:
        raise ValidationError(f"{name} must be orthogonal to the local Bloch vector")


def perpendicular_unit(candidate, r_vec) -> np.ndarray:
    """Project a candidate direction onto the plane orthogonal to r and
    normalize; raises when the projection is degenerate (norm < 1e-12)."""
    c = np.asarray(candidate, dtype=float)
    r = np.asarray(r_vec, dtype=float)
    rn = float(r @ r)
    v = c - (float(c @ r) / rn) * r if rn > 0 else c.copy()
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        raise ValidationError("candidate direction is parallel to the Bloch vector")
    return v / norm


def pure_two_qubit_mutual(psi: DensityMatrix, a_vec, b_vec) -> float:
    """M(A:B) = 2 - sqrt(2 + 2 a^T t b) for a pure two-qubit state with
    A = a.sigma (x) I, B = I (x) b.sigma, a, b unit and orthogonal to the
    local Bloch vectors. Equals 2 - sqrt(2) exactly iff separable."""
    if psi.dims != (2, 2):
        raise ValidationError(f"expected a two-qubit state, got dims {psi.dims}")
    _require_pure(psi)
    a = _unit_vector(a_vec, "a")
    b = _unit_vector(b_vec, "b")
    basis = gell_mann_basis(2)
    _check_in_plane(a, bloch_vector(psi, basis, 0), "a")
    _check_in_plane(b, bloch_vector(psi, basis, 1), "b")
    t = pairwise_correlation_tensor(psi, basis, (0, 1))
    inner = 2.0 + 2.0 * float(a @ t @ b)
    return 2.0 - float(np.sqrt(max(inner, 0.0)))


def concurrence_from_mutual(m: float, t: float) -> float:
    """Invert M = 2 - sqrt(2 + 2 C t): C = [2 + M(M-4)] / (2t), t != 0."""
    if t == 0.0:
        raise ValidationError("concurrence readout is undefined for t = 0")
    return (2.0 + m * (m - 4.0)) / (2.0 * t)


def nqubit_product_test(psi: DensityMatrix, a_vectors) -> tuple[float, DetectionVerdict]:
    """Mutual uncertainty of single-site observables a_i.sigma on a pure
    N-qubit state; any deviation from N - sqrt(N) certifies pairwise
    entanglement (product states give N - sqrt(N) exactly)."""
    if any(dd != 2 for dd in psi.dims) or psi.n_subsystems < 2:
        raise ValidationError(f"expected an N-qubit state with N >= 2, got dims {psi.dims}")
    _require_pure(psi)
    n = psi.n_subsystems
    vecs = [_unit_vector(v, f"a_{i+1}") for i, v in enumerate(a_vectors)]
    if len(vecs) != n:
        raise ValidationError(f"need {n} observable directions, got {len(vecs)}")
    basis = gell_mann_basis(2)
    s = basis.stacked()
    observables = []
    for site, a in enumerate(vecs):
        _check_in_plane(a, bloch_vector(psi, basis, site), f"a_{site+1}")
        local = np.tensordot(a, s, axes=(0, 0))
        observables.append(make_observable(embed_at_site(local, psi.dims, site)))
    m = mutual_uncertainty(psi, observables)
    verdict = _verdict(
        "nqubit-product", m, n - float(np.sqrt(n)), "differs", margin=PRODUCT_TEST_MARGIN
    )
    return m, verdict
