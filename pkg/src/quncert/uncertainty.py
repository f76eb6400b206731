"""Variance-based uncertainty calculus for observables in a quantum state.

Core quantities:

    variance        DA^2 = <A^2> - <A>^2
    mutual          M(A1:...:An) = sum_i DA_i - D(sum_i A_i)
    conditional     D(A|B) = D(A+B) - DB            (may be negative)
    cond. mutual    M(A:B|C) = D(A|C) + D(B|C) - D(A+B|C)
    cond. variance  D(A|B)^2 = D(A+B)^2 - DB^2  =  DA^2 + 2 Cov(A,B)

The mutual uncertainty is non-negative and vanishes for B = A; conditioning
on an extra observable never increases it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, Observable, ValidationError, expectation

VARIANCE_ROUNDOFF = 1e-12
MUTUAL_SLACK = 1e-10


def _check_dims(rho: DensityMatrix, *obs: Observable) -> None:
    for a in obs:
        if a.dim != rho.dim:
            raise ValidationError(
                f"dimension mismatch: state {rho.dim}, observable {a.dim}"
            )


def variance_and_std(rho: DensityMatrix, a: Observable) -> tuple[float, float]:
    """(variance, standard deviation) of A in rho.

    Negative variance within VARIANCE_ROUNDOFF is clamped to zero; anything
    more negative signals invalid inputs and raises.
    """
    _check_dims(rho, a)
    m2 = float(np.real(np.trace(rho.matrix @ a.matrix @ a.matrix)))
    m1 = expectation(rho, a)
    var = m2 - m1 * m1
    if var < 0.0:
        if var < -VARIANCE_ROUNDOFF:
            raise ValidationError(f"variance {var:.3e} is negative beyond roundoff")
        var = 0.0
    return var, float(np.sqrt(var))


def std_dev(rho: DensityMatrix, a: Observable) -> float:
    return variance_and_std(rho, a)[1]


def covariance(rho: DensityMatrix, a: Observable, b: Observable) -> float:
    """Cov(A,B) = Tr[rho (AB+BA)]/2 - Tr[rho A] Tr[rho B]."""
    _check_dims(rho, a, b)
    sym = float(np.real(np.trace(rho.matrix @ (a.matrix @ b.matrix + b.matrix @ a.matrix)))) / 2.0
    return sym - expectation(rho, a) * expectation(rho, b)


def mutual_uncertainty(rho: DensityMatrix, observables) -> float:
    """M(A1:...:An) = sum_i DA_i - D(sum_i A_i), n >= 2."""
    obs = list(observables)
    if len(obs) < 2:
        raise ValidationError(f"mutual uncertainty needs at least 2 observables, got {len(obs)}")
    _check_dims(rho, *obs)
    total = obs[0]
    for a in obs[1:]:
        total = total + a
    return sum(std_dev(rho, a) for a in obs) - std_dev(rho, total)


def conditional_uncertainty(rho: DensityMatrix, a: Observable, b: Observable) -> float:
    """D(A|B) = D(A+B) - DB; bounded above by DA, can go negative."""
    _check_dims(rho, a, b)
    return std_dev(rho, a + b) - std_dev(rho, b)


def conditional_mutual_uncertainty(
    rho: DensityMatrix, a: Observable, b: Observable, c: Observable
) -> float:
    """M(A:B|C) = D(A|C) + D(B|C) - D(A+B|C).

    By the chain rule this equals D(B|C) - D(B|C+A).
    """
    _check_dims(rho, a, b, c)
    return (
        conditional_uncertainty(rho, a, c)
        + conditional_uncertainty(rho, b, c)
        - conditional_uncertainty(rho, a + b, c)
    )


def conditional_variance(rho: DensityMatrix, a: Observable, b: Observable) -> float:
    """D(A|B)^2 = D(A+B)^2 - DB^2; equals DA^2 + 2 Cov(A,B)."""
    _check_dims(rho, a, b)
    return variance_and_std(rho, a + b)[0] - variance_and_std(rho, b)[0]


@dataclass(frozen=True)
class UncertaintyReport:
    """All pointwise uncertainty quantities for one (state, observables) input.

    The pairwise conditional entries refer to the first two observables.
    """

    std_devs: tuple[float, ...]
    std_sum_obs: float
    mutual: float
    conditional_a_given_b: float
    conditional_variance: float
    covariance: float


def uncertainty_report(rho: DensityMatrix, observables) -> UncertaintyReport:
    """Evaluate every report field; validates M >= -1e-10 and DA_i >= 0."""
    obs = list(observables)
    if len(obs) < 2:
        raise ValidationError(f"report needs at least 2 observables, got {len(obs)}")
    stds = tuple(std_dev(rho, a) for a in obs)
    total = obs[0]
    for a in obs[1:]:
        total = total + a
    std_sum = std_dev(rho, total)
    mutual = sum(stds) - std_sum
    if mutual < -MUTUAL_SLACK:
        raise ValidationError(f"mutual uncertainty {mutual:.3e} below -1e-10")
    return UncertaintyReport(
        std_devs=stds,
        std_sum_obs=std_sum,
        mutual=mutual,
        conditional_a_given_b=conditional_uncertainty(rho, obs[0], obs[1]),
        conditional_variance=conditional_variance(rho, obs[0], obs[1]),
        covariance=covariance(rho, obs[0], obs[1]),
    )
