"""Validated operator types and the dense linear-algebra kernel.

Matrices are dense numpy arrays. Every public constructor validates its
domain invariants (hermiticity, unit trace, positivity, generator
orthogonality) and returns an immutable object, so downstream code can rely
on the invariants instead of re-checking them.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
MIN_EIGENVALUE_TOL = -1e-9
GENERATOR_ORTHO_TOL = 1e-12
DSYM_SUM_TOL = 1e-10
SINGULAR_VALUE_CLIP = 1e-13


class ValidationError(ValueError):
    """A matrix or parameter failed one of the domain invariants."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a finite complex 2-d array (a fresh, writable copy)."""
    arr = np.array(m, dtype=complex, copy=True)
    if arr.ndim != 2:
        raise ValidationError(f"expected a 2-d matrix, got array of ndim {arr.ndim}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValidationError("matrix entries must be finite")
    return arr


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation |M - M^dagger|."""
    return float(np.abs(m - m.conj().T).max(initial=0.0))


@dataclass(frozen=True, eq=False)
class Observable:
    """A validated Hermitian operator. Construct via :func:`make_observable`."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def _combine(self, other, sign):
        if not isinstance(other, Observable):
            return NotImplemented
        if other.dim != self.dim:
            raise ValidationError("observable dimensions differ")
        # Hermiticity is exact under entrywise +/-, no need to re-validate.
        return Observable(_freeze(self.matrix + sign * other.matrix))

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __neg__(self):
        return Observable(_freeze(-self.matrix))

    def __mul__(self, scalar):
        s = complex(scalar)
        if abs(s.imag) > 0:
            raise ValidationError("observables may only be scaled by real numbers")
        return Observable(_freeze(s.real * self.matrix))

    __rmul__ = __mul__


def make_observable(m) -> Observable:
    """Validate a square Hermitian matrix and wrap it as an :class:`Observable`."""
    arr = as_complex_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"observable must be square, got shape {arr.shape}")
    defect = hermiticity_defect(arr)
    if defect > HERMITICITY_TOL:
        raise ValidationError(f"matrix is not Hermitian (defect {defect:.3e})")
    return Observable(_freeze(arr))


def zero_observable(dim: int) -> Observable:
    return Observable(_freeze(np.zeros((dim, dim), dtype=complex)))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state. Construct via :func:`make_density_matrix`.

    ``dims`` holds the subsystem dimensions; their product equals the matrix
    dimension.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def make_density_matrix(m, dims) -> DensityMatrix:
    """Validate hermiticity, unit trace, positivity and the subsystem split."""
    arr = as_complex_matrix(m)
    d = arr.shape[0]
    if arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"density matrix must be square, got shape {arr.shape}")
    dims = tuple(int(x) for x in dims)
    if any(x < 1 for x in dims) or not dims:
        raise ValidationError(f"subsystem dimensions must be positive, got {dims}")
    if int(np.prod(dims)) != d:
        raise ValidationError(f"product of dims {dims} does not match matrix dimension {d}")
    defect = hermiticity_defect(arr)
    if defect > HERMITICITY_TOL:
        raise ValidationError(f"density matrix is not Hermitian (defect {defect:.3e})")
    tr = complex(np.trace(arr))
    if abs(tr - 1.0) > max(TRACE_TOL, 10 * d * np.finfo(float).eps):
        raise ValidationError(f"trace must be 1, got {tr}")
    min_eig = float(np.linalg.eigvalsh(arr)[0])
    if min_eig < MIN_EIGENVALUE_TOL:
        raise ValidationError(f"density matrix has negative eigenvalue {min_eig:.3e}")
    return DensityMatrix(_freeze(arr), dims)


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    """The d^2-1 generalized Gell-Mann generators with structure constants.

    Ordering: symmetric off-diagonal pairs (j<k lexicographic), antisymmetric
    off-diagonal pairs, then diagonal generators. Normalization
    Tr[s_i s_j] = 2 delta_ij.
    """

    dim: int
    generators: tuple[Observable, ...]
    f: np.ndarray
    d_sym: np.ndarray

    @property
    def size(self) -> int:
        return len(self.generators)

    def stacked(self) -> np.ndarray:
        """Generators as one (d^2-1, d, d) array."""
        return np.stack([g.matrix for g in self.generators])


def _gell_mann_matrices(d: int) -> list[np.ndarray]:
    gens = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = 1.0
            m[k, j] = 1.0
            gens.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            gens.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        for j in range(l):
            m[j, j] = 1.0
        m[l, l] = -float(l)
        gens.append(np.sqrt(2.0 / (l * (l + 1))) * m)
    return gens


def _structure_tensors(stacked: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    prod = np.einsum("iab,jbc->ijac", stacked, stacked)
    comm = prod - prod.transpose(1, 0, 2, 3)
    anti = prod + prod.transpose(1, 0, 2, 3)
    f = np.einsum("ijab,kba->ijk", comm, stacked) * (-0.25j)
    d_sym = np.einsum("ijab,kba->ijk", anti, stacked) * 0.25
    for name, t in (("f", f), ("d", d_sym)):
        imag = float(np.abs(t.imag).max(initial=0.0))
        if imag > 1e-12:
            raise ValidationError(f"structure tensor {name} has imaginary part {imag:.3e}")
    return f.real, d_sym.real


@lru_cache(maxsize=None)
def gell_mann_basis(d: int) -> GeneratorBasis:
    """Build the generalized Gell-Mann basis of su(d), d >= 2.

    For d=2 this is the Pauli triple (x, y, z); for d=3 the eight Gell-Mann
    matrices. The result is cached and immutable.
    """
    if d < 2:
        raise ValidationError(f"generator basis requires dimension >= 2, got {d}")
    mats = _gell_mann_matrices(d)
    stacked = np.stack(mats)
    for m in mats:
        if abs(np.trace(m)) > HERMITICITY_TOL:
            raise ValidationError("generator is not traceless")
    gram = np.einsum("iab,jba->ij", stacked, stacked)
    if np.abs(gram - 2.0 * np.eye(len(mats))).max() > GENERATOR_ORTHO_TOL:
        raise ValidationError("generators fail Tr[s_i s_j] = 2 delta_ij")
    f, d_sym = _structure_tensors(stacked)
    dsum = np.einsum("iik->k", d_sym)
    if np.abs(dsum).max(initial=0.0) > DSYM_SUM_TOL:
        raise ValidationError("sum_i d_iik does not vanish")
    gens = tuple(make_observable(m) for m in mats)
    return GeneratorBasis(d, gens, _freeze(f), _freeze(d_sym))


def structure_constants(basis: GeneratorBasis) -> tuple[np.ndarray, np.ndarray]:
    """Recompute (f_ijk, d_ijk) from the generators.

    f_ijk = -(i/4) Tr([s_i, s_j] s_k),  d_ijk = (1/4) Tr({s_i, s_j} s_k).
    """
    return _structure_tensors(basis.stacked())


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_chain(mats) -> np.ndarray:
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def embed_at_site(local, dims, site: int) -> np.ndarray:
    """I (x) ... (x) local (x) ... (x) I with ``local`` at ``site``."""
    dims = tuple(dims)
    if not 0 <= site < len(dims):
        raise ValidationError(f"site {site} out of range for {len(dims)} subsystems")
    local = np.asarray(local, dtype=complex)
    if local.shape != (dims[site], dims[site]):
        raise ValidationError(
            f"local operator shape {local.shape} does not match subsystem dim {dims[site]}"
        )
    mats = [np.eye(dd, dtype=complex) for dd in dims]
    mats[site] = local
    return kron_chain(mats)


def _check_sites(rho: DensityMatrix, sites) -> list[int]:
    n = rho.n_subsystems
    idx = list(sites)
    if not idx:
        raise ValidationError("at least one subsystem index is required")
    for s in idx:
        if not isinstance(s, (int, np.integer)) or not 0 <= s < n:
            raise ValidationError(f"invalid subsystem index {s} for {n} subsystems")
    if len(set(idx)) != len(idx):
        raise ValidationError(f"duplicate subsystem indices in {idx}")
    return idx


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state over the kept subsystems (ascending site order)."""
    keep = sorted(_check_sites(rho, keep))
    n = rho.n_subsystems
    dims = rho.dims
    letters = string.ascii_letters
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    spec = "".join(row) + "".join(col) + "->" + "".join(row[i] for i in keep) + "".join(
        letters[n + i] for i in keep
    )
    arr = rho.matrix.reshape(dims + dims)
    kept_dims = tuple(dims[i] for i in keep)
    out_dim = int(np.prod(kept_dims))
    reduced = np.einsum(spec, arr).reshape(out_dim, out_dim)
    return make_density_matrix(reduced, kept_dims)


def partial_transpose(rho: DensityMatrix, sys: int) -> np.ndarray:
    """Transpose one subsystem; Hermitian, trace 1, possibly non-positive."""
    _check_sites(rho, [sys])
    n = rho.n_subsystems
    dims = rho.dims
    arr = rho.matrix.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[sys], axes[n + sys] = axes[n + sys], axes[sys]
    return arr.transpose(axes).reshape(rho.dim, rho.dim)


def hermitian_eigendecomposition(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of H."""
    if isinstance(h, Observable):
        arr = h.matrix
    else:
        arr = as_complex_matrix(h)
        if arr.shape[0] != arr.shape[1]:
            raise ValidationError("eigendecomposition requires a square matrix")
        if hermiticity_defect(arr) > 1e-10 * max(1.0, float(np.abs(arr).max())):
            raise ValidationError("matrix is not Hermitian")
    try:
        w, v = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - pathological input
        raise ValidationError(f"eigensolver failed to converge: {exc}") from exc
    return w, v


def real_svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SVD of a real matrix: M = U diag(s) V^T, singular values descending.

    Values below SINGULAR_VALUE_CLIP * max(s) are clamped to zero.
    """
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2:
        raise ValidationError("real_svd requires a 2-d real matrix")
    if np.iscomplexobj(m) and np.abs(np.asarray(m).imag).max(initial=0.0) > 1e-12:
        raise ValidationError("real_svd requires real entries")
    try:
        u, s, vh = np.linalg.svd(arr, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - pathological input
        raise ValidationError(f"SVD failed to converge: {exc}") from exc
    if s.size and s[0] > 0:
        s = np.where(s < SINGULAR_VALUE_CLIP * s[0], 0.0, s)
    return u, s, vh.T


def expectation(rho: DensityMatrix, a: Observable) -> float:
    """<A> = Tr[rho A]; the (roundoff-level) imaginary part is discarded."""
    if rho.dim != a.dim:
        raise ValidationError(f"dimension mismatch: state {rho.dim}, observable {a.dim}")
    return float(np.real(np.trace(rho.matrix @ a.matrix)))


# ---------------------------------------------------------------------------
# Matrix file format shared with the CLI:
#   {"dims": [d1, ...], "re": [[...], ...], "im": [[...], ...]}  (row-major)
# ---------------------------------------------------------------------------

def matrix_to_payload(m, dims) -> dict:
    arr = np.asarray(m, dtype=complex)
    return {
        "dims": [int(x) for x in dims],
        "re": arr.real.tolist(),
        "im": arr.imag.tolist(),
    }


def matrix_from_payload(obj) -> tuple[np.ndarray, tuple[int, ...]]:
    """Parse the JSON matrix payload; rejects ragged or mismatched rows."""
    if not isinstance(obj, dict):
        raise ValidationError("matrix payload must be a JSON object")
    for key in ("dims", "re", "im"):
        if key not in obj:
            raise ValidationError(f"matrix payload missing key '{key}'")
    dims = obj["dims"]
    if not isinstance(dims, list) or not dims or not all(
        isinstance(x, int) and x >= 1 for x in dims
    ):
        raise ValidationError("'dims' must be a non-empty list of positive integers")
    parts = {}
    for key in ("re", "im"):
        rows = obj[key]
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise ValidationError(f"'{key}' must be a list of rows")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValidationError(f"'{key}' has ragged rows")
        try:
            parts[key] = np.array(rows, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"'{key}' contains non-numeric entries") from exc
    if parts["re"].shape != parts["im"].shape:
        raise ValidationError("'re' and 'im' shapes differ")
    arr = parts["re"] + 1j * parts["im"]
    if arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"matrix must be square, got shape {arr.shape}")
    if int(np.prod(dims)) != arr.shape[0]:
        raise ValidationError(f"product of dims {dims} does not match matrix dimension {arr.shape[0]}")
    return arr, tuple(int(x) for x in dims)


def load_matrix_file(path) -> tuple[np.ndarray, tuple[int, ...]]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON in {path}: {exc}") from exc
    return matrix_from_payload(obj)


def save_matrix_file(path, m, dims) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_payload(m, dims), fh)
        fh.write("\n")
