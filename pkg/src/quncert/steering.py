"""Steering criteria based on inferred uncertainties.

Discrete side: Alice estimates Bob's observable A from her own observable C
with the optimal linear estimator

    A_est(c) = <A> + [Cov(A,C)/DC^2] (c - <C>),

giving the inferred uncertainty D_inf A = sqrt(DA^2 - Cov(A,C)^2 / DC^2)
(D_inf A = DA when DC^2 = 0: a dispersion-free C carries no information).
A state with a local-hidden-state description obeys
D_inf A + D_inf B >= D(A+B), so a negative inferred mutual uncertainty

    M_inf(A:B) = D_inf A + D_inf B - D(A+B)

certifies steering. D(A+B) is evaluated on Bob's reduced state.

Continuous-variable side: the two-mode squeezed vacuum with one photon
subtracted, squeezing parameter alpha. Its Wigner function is evaluated
directly; symmetric-ordered moments come from exact Gauss-Hermite quadrature
after rotating to normal modes u+- = (X1 +- X2)/sqrt(2),
v+- = (P1 +- P2)/sqrt(2), in which the Gaussian factor splits into four
independent one-dimensional Gaussians of widths cosh(2a) -+ sinh(2a).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .linalg import DensityMatrix, Observable, ValidationError, embed_at_site, make_observable, partial_trace
from .numeric import bisect_crossing
from .states import paulis, werner
from .uncertainty import covariance, std_dev, variance_and_std

STEERING_MARGIN = 1e-10
REID_BOUND = 0.25


@dataclass(frozen=True)
class SteeringVerdict:
    """criterion 'm_inf': Steerable iff statistic < -1e-10;
    criterion 'reid': Steerable iff statistic < 1/4 - 1e-10."""

    criterion: str
    statistic: float
    threshold: float
    verdict: str


def steering_verdict(criterion: str, statistic: float) -> SteeringVerdict:
    if criterion == "m_inf":
        threshold = 0.0
    elif criterion == "reid":
        threshold = REID_BOUND
    else:
        raise ValidationError(f"unknown steering criterion '{criterion}'")
    steerable = statistic < threshold - STEERING_MARGIN
    return SteeringVerdict(
        criterion=criterion,
        statistic=float(statistic),
        threshold=threshold,
        verdict="Steerable" if steerable else "Inconclusive",
    )


def _embed_pair(rho: DensityMatrix, bob_obs: Observable, alice_obs: Observable):
    if rho.n_subsystems != 2:
        raise ValidationError(f"steering quantities expect a bipartite state, got dims {rho.dims}")
    d1, d2 = rho.dims
    if bob_obs.dim != d2:
        raise ValidationError(f"Bob observable dim {bob_obs.dim} != subsystem dim {d2}")
    if alice_obs.dim != d1:
        raise ValidationError(f"Alice observable dim {alice_obs.dim} != subsystem dim {d1}")
    a_full = make_observable(embed_at_site(bob_obs.matrix, rho.dims, 1))
    c_full = make_observable(embed_at_site(alice_obs.matrix, rho.dims, 0))
    return a_full, c_full


def inferred_std(rho: DensityMatrix, bob_obs: Observable, alice_obs: Observable) -> float:
    """D_inf A for Bob's local observable A inferred from Alice's local C."""
    a_full, c_full = _embed_pair(rho, bob_obs, alice_obs)
    var_a = variance_and_std(rho, a_full)[0]
    var_c = variance_and_std(rho, c_full)[0]
    if var_c == 0.0:
        return float(np.sqrt(var_a))
    reduced = var_a - covariance(rho, a_full, c_full) ** 2 / var_c
    return float(np.sqrt(max(reduced, 0.0)))


def inferred_mutual_uncertainty(
    rho: DensityMatrix,
    bob_a: Observable,
    bob_b: Observable,
    alice_ca: Observable,
    alice_cb: Observable,
) -> SteeringVerdict:
    """M_inf(A:B) = D_inf A + D_inf B - D(A+B), D(A+B) on Bob's reduced state."""
    d_inf_a = inferred_std(rho, bob_a, alice_ca)
    d_inf_b = inferred_std(rho, bob_b, alice_cb)
    bob_state = partial_trace(rho, [1])
    d_sum = std_dev(bob_state, bob_a + bob_b)
    return steering_verdict("m_inf", d_inf_a + d_inf_b - d_sum)


def werner_minf_analytic(p: float) -> float:
    """Closed form sqrt(1 - p^2) - 1/sqrt(2) for the Werner state with
    A = sigma_x/2, B = sigma_z/2 and matching inferring observables."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"werner parameter must lie in [0, 1], got {p}")
    return float(np.sqrt(1.0 - p * p) - 1.0 / np.sqrt(2.0))


def werner_minf_matrix(p: float) -> float:
    """Matrix-level M_inf for the Werner state (same observables as the
    closed form); used to cross-check werner_minf_analytic."""
    sx, _, sz = paulis()
    a = make_observable(sx / 2.0)
    b = make_observable(sz / 2.0)
    return inferred_mutual_uncertainty(werner(p), a, b, a, b).statistic


# ---------------------------------------------------------------------------
# Photon-subtracted two-mode squeezed vacuum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PSSVState:
    """Two-mode squeezed vacuum with one photon subtracted; alpha > 0."""

    alpha: float

    def __post_init__(self):
        if not np.isfinite(self.alpha) or self.alpha <= 0.0:
            raise ValidationError(f"squeezing parameter must be finite and > 0, got {self.alpha}")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-product Gauss-Hermite rule in the rotated normal modes."""

    nodes: int = 24

    def __post_init__(self):
        if self.nodes < 5:
            raise ValidationError(f"quadrature needs at least 5 nodes per axis, got {self.nodes}")


def pssv_wigner_value(state: PSSVState, point) -> float:
    """W(X1, P1, X2, P2).

    The cosh(2a) prefactor term is read as (P1 - P2)^2, matching the
    (X1 - X2)^2 companion term; the quadrature oracle validates this reading
    against the closed-form Reid product.
    """
    x1, p1, x2, p2 = (float(c) for c in point)
    a2 = 2.0 * state.alpha
    gauss = np.exp(
        2.0 * np.sinh(a2) * (x1 * x2 - p1 * p2)
        - np.cosh(a2) * (x1 * x1 + p1 * p1 + x2 * x2 + p2 * p2)
    )
    poly = (
        -np.sinh(a2) * ((p1 - p2) ** 2 - (x1 - x2) ** 2)
        + np.cosh(a2) * ((p1 - p2) ** 2 + (x1 - x2) ** 2)
        - 1.0
    )
    return float(gauss * poly / np.pi**2)


@lru_cache(maxsize=8)
def _hermgauss(nodes: int):
    x, w = np.polynomial.hermite.hermgauss(nodes)
    return x, w


def wigner_moment(state: PSSVState, powers, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Symmetric-ordered moment <X1^n1 P1^m1 X2^n2 P2^m2> of the Wigner
    function, exact for the configured node count (polynomial x Gaussian)."""
    n1, m1, n2, m2 = (int(p) for p in powers)
    if min(n1, m1, n2, m2) < 0:
        raise ValidationError("moment powers must be non-negative")
    total = n1 + m1 + n2 + m2
    if total > 4:
        raise ValidationError(f"moment degree {total} exceeds the supported maximum 4")
    # bracket of W adds degree 2; Gauss-Hermite with n nodes is exact to 2n-1
    if total + 2 > 2 * quad.nodes - 1:
        raise ValidationError(f"{quad.nodes} nodes cannot integrate degree {total + 2} exactly")
    x, w = _hermgauss(quad.nodes)
    a2 = 2.0 * state.alpha
    cosh2, sinh2 = np.cosh(a2), np.sinh(a2)
    narrow, wide = cosh2 + sinh2, cosh2 - sinh2  # Gaussian widths exp(-c q^2)
    c_up, c_um, c_vp, c_vm = wide, narrow, narrow, wide
    up = (x / np.sqrt(c_up))[:, None, None, None]
    um = (x / np.sqrt(c_um))[None, :, None, None]
    vp = (x / np.sqrt(c_vp))[None, None, :, None]
    vm = (x / np.sqrt(c_vm))[None, None, None, :]
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    x1 = (up + um) * inv_sqrt2
    x2 = (up - um) * inv_sqrt2
    p1 = (vp + vm) * inv_sqrt2
    p2 = (vp - vm) * inv_sqrt2
    bracket = (
        -sinh2 * ((p1 - p2) ** 2 - (x1 - x2) ** 2)
        + cosh2 * ((p1 - p2) ** 2 + (x1 - x2) ** 2)
        - 1.0
    ) / np.pi**2
    integrand = x1**n1 * p1**m1 * x2**n2 * p2**m2 * bracket
    weights = (
        w[:, None, None, None]
        * w[None, :, None, None]
        * w[None, None, :, None]
        * w[None, None, None, :]
    )
    jacobian = 1.0 / np.sqrt(c_up * c_um * c_vp * c_vm)
    return float(np.sum(weights * integrand) * jacobian)


class PssvClosedForms(NamedTuple):
    eta_plus: float
    eta_minus: float
    m_inf_cv: float
    reid_product: float


def pssv_closed_forms(alpha: float) -> PssvClosedForms:
    """eta_+- = sqrt(cosh(2a) +- cosh(a) sinh(a)),
    M_inf(X1:P1) = (sqrt(3)/2)(1/eta_- + 1/eta_+) - (eta_+ + eta_-),
    Reid product D_inf X1^2 D_inf P1^2 = 9 / (2[3 cosh(4a) + 5])."""
    if not np.isfinite(alpha) or alpha <= 0.0:
        raise ValidationError(f"squeezing parameter must be finite and > 0, got {alpha}")
    half_sinh2 = np.cosh(alpha) * np.sinh(alpha)
    eta_plus = float(np.sqrt(np.cosh(2.0 * alpha) + half_sinh2))
    eta_minus = float(np.sqrt(np.cosh(2.0 * alpha) - half_sinh2))
    m_inf = float(np.sqrt(3.0) / 2.0 * (1.0 / eta_minus + 1.0 / eta_plus) - (eta_plus + eta_minus))
    reid = float(9.0 / (2.0 * (3.0 * np.cosh(4.0 * alpha) + 5.0)))
    return PssvClosedForms(eta_plus, eta_minus, m_inf, reid)


def reid_product_from_moments(state: PSSVState, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Quadrature oracle for D_inf X1^2 * D_inf P1^2 built from second moments."""

    def mom(n1, m1, n2, m2):
        return wigner_moment(state, (n1, m1, n2, m2), quad)

    var_x1 = mom(2, 0, 0, 0) - mom(1, 0, 0, 0) ** 2
    var_x2 = mom(0, 0, 2, 0) - mom(0, 0, 1, 0) ** 2
    cov_x = mom(1, 0, 1, 0) - mom(1, 0, 0, 0) * mom(0, 0, 1, 0)
    var_p1 = mom(0, 2, 0, 0) - mom(0, 1, 0, 0) ** 2
    var_p2 = mom(0, 0, 0, 2) - mom(0, 0, 0, 1) ** 2
    cov_p = mom(0, 1, 0, 1) - mom(0, 1, 0, 0) * mom(0, 0, 0, 1)
    inf_x = var_x1 - cov_x**2 / var_x2
    inf_p = var_p1 - cov_p**2 / var_p2
    return float(inf_x * inf_p)


def reid_threshold_solver() -> float:
    """Squeezing value where the Reid product crosses 1/4; equals
    (1/4) arccosh(13/3)."""
    return bisect_crossing(
        lambda a: pssv_closed_forms(a).reid_product - REID_BOUND, 0.1, 1.5, tol=1e-10
    )
