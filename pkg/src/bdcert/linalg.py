"""Dense complex linear algebra kernel.

Normalized DFT, circular convolution (two independent routes), numerical
rank, nullspace / orthogonal-complement bases, and subspace arithmetic.
Everything operates on plain numpy arrays of complex128: vectors are 1-D,
matrices 2-D, subspace bases are matrices with orthonormal columns (a
basis may have zero columns, meaning the trivial subspace).

All functions are pure; none mutate their inputs.
"""

import numpy as np

from .errors import DimensionMismatch

# Relative rank cutoff: max(rows, cols) * 2^-45 on the largest singular
# value, the conventional machine-epsilon-scaled SVD rank rule. Every
# rank-based check accepts an override.
RANK_RTOL_SCALE = 2.0 ** -45


def default_rank_rtol(rows, cols):
    """Default relative singular-value cutoff for an (rows, cols) matrix."""
    return max(rows, cols) * RANK_RTOL_SCALE


def _resolve_rtol(shape, rtol):
    if rtol is None:
        return default_rank_rtol(shape[0], shape[1])
    if not 0.0 < rtol < 1.0:
        raise ValueError(f"rank tolerance must lie in (0, 1), got {rtol}")
    return float(rtol)


def as_complex_vector(x, name="vector"):
    """Validate and convert to a 1-D complex128 array (finite, length > 0)."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionMismatch(f"{name} must have positive length")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_complex_matrix(M, name="matrix", allow_empty_cols=False):
    """Validate and convert to a 2-D complex128 array with finite entries."""
    arr = np.asarray(M, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    min_cols = 0 if allow_empty_cols else 1
    if arr.shape[0] < 1 or arr.shape[1] < min_cols:
        raise DimensionMismatch(f"{name} has invalid shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def dft(x):
    """Normalized DFT: multiply by the unitary matrix with forward kernel
    exp(-2*pi*i*j*k/n)/sqrt(n). Applies column-wise to 2-D input."""
    arr = np.asarray(x, dtype=np.complex128)
    return np.fft.fft(arr, axis=0, norm="ortho")


def idft(x):
    """Inverse of :func:`dft` (the conjugate-transpose unitary matrix)."""
    arr = np.asarray(x, dtype=np.complex128)
    return np.fft.ifft(arr, axis=0, norm="ortho")


def dft_matrix(n):
    """The n-by-n unitary DFT matrix itself."""
    return np.fft.fft(np.eye(n, dtype=np.complex128), axis=0, norm="ortho")


def circconv_direct(u, v):
    """Circular convolution by direct evaluation of the defining sum,
    z[i] = sum_j u[j] * v[(i - j) mod n]. No FFT involved; this is the
    independent oracle for :func:`circconv_fft`."""
    u = as_complex_vector(u, "u")
    v = as_complex_vector(v, "v")
    if u.shape != v.shape:
        raise DimensionMismatch(f"length mismatch: {u.size} vs {v.size}")
    n = u.size
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return (u[None, :] * v[idx]).sum(axis=1)


def circconv_fft(u, v):
    """Circular convolution via the frequency domain:
    sqrt(n) * F^*(Fu * Fv) with the normalized DFT F and entrywise product."""
    u = as_complex_vector(u, "u")
    v = as_complex_vector(v, "v")
    if u.shape != v.shape:
        raise DimensionMismatch(f"length mismatch: {u.size} vs {v.size}")
    n = u.size
    return np.sqrt(n) * idft(dft(u) * dft(v))


def numerical_rank(M, rtol=None):
    """Count of singular values above rtol * sigma_max.

    rtol defaults to the max(rows, cols) * 2^-45 rule. The zero matrix has
    rank 0. Accepts matrices with zero columns (rank 0).
    """
    M = as_complex_matrix(M, allow_empty_cols=True)
    rtol = _resolve_rtol(M.shape, rtol)
    if M.shape[1] == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def nullspace_basis(M, rtol=None):
    """Orthonormal basis of {w : M w ~ 0}, as a (cols, dim) matrix.

    dim = cols - numerical_rank(M); each basis column w satisfies
    ||M w|| <= rtol * sigma_max.
    """
    M = as_complex_matrix(M, allow_empty_cols=True)
    rtol = _resolve_rtol(M.shape, rtol)
    if M.shape[1] == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    rank = 0 if (s.size == 0 or s[0] == 0.0) else int(np.count_nonzero(s > rtol * s[0]))
    return vh[rank:].conj().T


def range_basis(M, rtol=None):
    """Orthonormal basis of the column space of M, as a (rows, rank) matrix."""
    M = as_complex_matrix(M, allow_empty_cols=True)
    rtol = _resolve_rtol(M.shape, rtol)
    if M.shape[1] == 0:
        return np.zeros((M.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(M, full_matrices=False)
    rank = 0 if s[0] == 0.0 else int(np.count_nonzero(s > rtol * s[0]))
    return u[:, :rank]


def orth_complement(M, rtol=None):
    """Orthonormal basis of the orthogonal complement of the column space
    of M inside its ambient row space C^rows."""
    M = as_complex_matrix(M, allow_empty_cols=True)
    rtol = _resolve_rtol(M.shape, rtol)
    rows = M.shape[0]
    if M.shape[1] == 0:
        return np.eye(rows, dtype=np.complex128)
    u, s, _ = np.linalg.svd(M, full_matrices=True)
    rank = 0 if s[0] == 0.0 else int(np.count_nonzero(s > rtol * s[0]))
    return u[:, rank:]


def subspace_sum_dimension(bases, rtol=None):
    """Dimension of the sum of the given subspaces: the numerical rank of
    the horizontal concatenation of their basis matrices."""
    bases = [as_complex_matrix(B, "basis", allow_empty_cols=True) for B in bases]
    if not bases:
        raise DimensionMismatch("need at least one basis")
    ambient = bases[0].shape[0]
    for B in bases:
        if B.shape[0] != ambient:
            raise DimensionMismatch(
                f"ambient dimensions differ: {ambient} vs {B.shape[0]}"
            )
    return numerical_rank(np.hstack(bases), rtol)


def subspace_intersection(A, B, rtol=None):
    """Orthonormal basis of the intersection of two subspaces.

    Uses the complement identity: the intersection of A and B equals the
    orthogonal complement of (complement of A + complement of B). This is
    equivalent to the nullspace of the stacked complement projectors and
    is numerically robust at small dimensions.
    """
    A = as_complex_matrix(A, "A", allow_empty_cols=True)
    B = as_complex_matrix(B, "B", allow_empty_cols=True)
    if A.shape[0] != B.shape[0]:
        raise DimensionMismatch(
            f"ambient dimensions differ: {A.shape[0]} vs {B.shape[0]}"
        )
    comp = np.hstack([orth_complement(A, rtol), orth_complement(B, rtol)])
    return orth_complement(comp, rtol)


def check_orthonormal(B, tol=1e-10):
    """True if the columns of B are orthonormal to within tol (max abs
    deviation of the Gram matrix from the identity)."""
    B = as_complex_matrix(B, "basis", allow_empty_cols=True)
    if B.shape[1] == 0:
        return True
    gram = B.conj().T @ B
    return float(np.max(np.abs(gram - np.eye(B.shape[1])))) <= tol
