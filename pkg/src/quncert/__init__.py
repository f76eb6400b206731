"""Variance-based uncertainty calculus with entanglement and steering detection."""

from .bloch import (
    BlochDecomposition,
    OrthogonalObservableSet,
    bloch_decomposition,
    bloch_vector,
    ky_fan_norm,
    orthogonal_observable_set,
    pairwise_correlation_tensor,
    reconstruct_bipartite,
    svd_aligned_observable_sets,
)
from .entanglement import (
    DetectionVerdict,
    aligned_witness,
    concurrence_from_mutual,
    conditional_variance_witness,
    kyfan_criterion,
    nqubit_product_test,
    perpendicular_unit,
    ppt_criterion,
    pure_two_qubit_mutual,
)
from .linalg import (
    DensityMatrix,
    GeneratorBasis,
    Observable,
    ValidationError,
    embed_at_site,
    expectation,
    gell_mann_basis,
    hermitian_eigendecomposition,
    load_matrix_file,
    make_density_matrix,
    make_observable,
    matrix_from_payload,
    matrix_to_payload,
    partial_trace,
    partial_transpose,
    real_svd,
    save_matrix_file,
    structure_constants,
    tensor_product,
)
from .numeric import bisect_crossing
from .states import (
    NamedState,
    canonical_example,
    ghz3,
    named_state,
    nqubit_product,
    random_sampler,
    rng_from_seed,
    schmidt_pure,
    singlet,
    tiles_bound_entangled,
    werner,
)
from .steering import (
    PSSVState,
    PssvClosedForms,
    QuadratureSpec,
    SteeringVerdict,
    inferred_mutual_uncertainty,
    inferred_std,
    pssv_closed_forms,
    pssv_wigner_value,
    reid_product_from_moments,
    reid_threshold_solver,
    werner_minf_analytic,
    werner_minf_matrix,
    wigner_moment,
)
from .uncertainty import (
    UncertaintyReport,
    conditional_mutual_uncertainty,
    conditional_uncertainty,
    conditional_variance,
    covariance,
    mutual_uncertainty,
    uncertainty_report,
    variance_and_std,
)

__version__ = "0.1.0"
