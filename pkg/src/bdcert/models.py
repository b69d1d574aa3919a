"""Problem-instance builders.

Generic random bases/frames, Fourier-domain Kronecker-structured witness
pairs, sub-band structured bases (including partitioned ideal band-pass
banks), sparse coefficient vectors, and exhaustive spark verification on
small frames.

All samplers are pure functions of (dimensions, seed): they accept either
an integer seed or a numpy Generator, and never touch global RNG state.
"""

import itertools
import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import matio
from .errors import (
    DimensionMismatch,
    EmptyPassband,
    EnumerationTooLarge,
    InfeasibleDimensions,
    PartitionMismatch,
    ZeroColumn,
)
from .linalg import as_complex_matrix, as_complex_vector, dft, idft, numerical_rank

# Fourier-domain magnitudes below this count as zero when deriving
# sub-band supports. Constructed bases are exact in the DFT domain, so
# anything above round-off is real signal.
SUPPORT_TOL = 1e-12

# In-band spectral values and non-vanishing draws keep magnitude >= 0.1
# so entrywise inversion stays well-conditioned.
MIN_INBAND_MAGNITUDE = 0.1

SPARK_ENUMERATION_CAP = 10 ** 6


def _rng(seed):
    return np.random.default_rng(seed)


def sample_generic_matrix(n, m, seed):
    """n x m matrix with i.i.d. entries (g1 + i*g2)/sqrt(2), g1, g2 standard
    normal. Absolutely continuous, so it realizes "generic" draws."""
    if n < 1 or m < 1:
        raise DimensionMismatch(f"need positive dimensions, got {n}x{m}")
    rng = _rng(seed)
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2)


def sample_generic_vector(m, seed):
    """Length-m vector of i.i.d. standard complex Gaussian entries."""
    return sample_generic_matrix(m, 1, seed)[:, 0]


def sample_nonvanishing_vector(m, seed, min_magnitude=MIN_INBAND_MAGNITUDE):
    """Complex Gaussian entries redrawn until every magnitude is at least
    min_magnitude."""
    rng = _rng(seed)
    v = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / np.sqrt(2)
    while True:
        mask = np.abs(v) < min_magnitude
        if not mask.any():
            return v
        v[mask] = (rng.standard_normal(mask.sum()) + 1j * rng.standard_normal(mask.sum())) / np.sqrt(2)


def sample_sparse_vector(m, s, seed):
    """Exactly s nonzero entries; support uniform over size-s subsets,
    values complex Gaussian conditioned on magnitude > 1e-6."""
    if not 1 <= s <= m:
        raise DimensionMismatch(f"need 1 <= s <= m, got s={s}, m={m}")
    rng = _rng(seed)
    support = rng.choice(m, size=s, replace=False)
    values = sample_nonvanishing_vector(s, rng, min_magnitude=1e-6)
    x = np.zeros(m, dtype=np.complex128)
    x[support] = values
    return x


@dataclass(frozen=True)
class ConstraintSpec:
    """Constraint on one factor: membership in the column span (subspace)
    or an s-sparse combination of the columns (sparse)."""

    kind: str
    sparsity: int | None = None

    def __post_init__(self):
        if self.kind not in ("subspace", "sparse"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind == "sparse":
            if self.sparsity is None or self.sparsity < 1:
                raise ValueError("sparse constraint needs sparsity >= 1")
        elif self.sparsity is not None:
            raise ValueError("subspace constraint takes no sparsity level")

    @classmethod
    def subspace(cls):
        return cls("subspace")

    @classmethod
    def sparse(cls, s):
        return cls("sparse", s)


@dataclass
class BDInstance:
    """One blind deconvolution problem: recover (x, y) from
    (D x) circularly convolved with (E y)."""

    n: int
    D: np.ndarray
    E: np.ndarray
    x_constraint: ConstraintSpec
    y_constraint: ConstraintSpec

    def __post_init__(self):
        self.D = as_complex_matrix(self.D, "D")
        self.E = as_complex_matrix(self.E, "E")
        if self.D.shape[0] != self.n or self.E.shape[0] != self.n:
            raise DimensionMismatch(
                f"D/E must have n={self.n} rows, got {self.D.shape[0]} and {self.E.shape[0]}"
            )
        for name, M, spec in (("D", self.D, self.x_constraint), ("E", self.E, self.y_constraint)):
            if spec.kind == "subspace":
                if numerical_rank(M) < M.shape[1]:
                    raise ValueError(f"{name} must have full column rank under a subspace constraint")
            else:
                if spec.sparsity > M.shape[1]:
                    raise ValueError(
                        f"sparsity {spec.sparsity} exceeds {name}'s column count {M.shape[1]}"
                    )

    @property
    def m1(self):
        return self.D.shape[1]

    @property
    def m2(self):
        return self.E.shape[1]


@dataclass
class SubBandBasis:
    """Basis whose columns occupy Fourier-domain sub-bands.

    supports[k] is the set of frequencies where column k's spectrum is
    nonzero; passbands[k] are the frequencies exclusive to column k (must
    be nonempty for every k); bandwidths[k] = len(passbands[k]).
    """

    E: np.ndarray
    spectrum: np.ndarray
    supports: list = field(repr=False)
    passbands: list = field(repr=False)
    bandwidths: list

    @property
    def n(self):
        return self.E.shape[0]

    @property
    def m2(self):
        return self.E.shape[1]

    @property
    def bandwidth_sum(self):
        return int(sum(self.bandwidths))

    @classmethod
    def from_matrix(cls, E, support_tol=SUPPORT_TOL):
        """Derive sub-band structure from a basis matrix given in the time
        domain. Raises ZeroColumn / EmptyPassband when the structure is
        absent."""
        E = as_complex_matrix(E, "E")
        return cls._from_spectrum(E, dft(E), support_tol)

    @classmethod
    def _from_spectrum(cls, E, spectrum, support_tol=SUPPORT_TOL):
        n, m2 = spectrum.shape
        supports = []
        for k in range(m2):
            supp = np.flatnonzero(np.abs(spectrum[:, k]) > support_tol)
            if supp.size == 0:
                raise ZeroColumn(f"column {k} has an all-zero spectrum")
            supports.append(supp)
        passbands = []
        for k in range(m2):
            others = set()
            for k2 in range(m2):
                if k2 != k:
                    others.update(supports[k2].tolist())
            pb = np.array([i for i in supports[k] if i not in others], dtype=int)
            if pb.size == 0:
                raise EmptyPassband(k)
            passbands.append(pb)
        bandwidths = [int(pb.size) for pb in passbands]
        return cls(E=E, spectrum=spectrum, supports=supports,
                   passbands=passbands, bandwidths=bandwidths)

    def is_partition(self):
        """True when the supports are pairwise disjoint and cover every
        frequency 0..n-1."""
        seen = np.zeros(self.n, dtype=int)
        for supp in self.supports:
            seen[supp] += 1
        return bool(np.all(seen == 1))


def subband_basis_from_supports(n, spectra):
    """Build a sub-band basis from explicit column spectra.

    Each spectrum is a length-n vector; the basis column is its inverse
    DFT. Supports/passbands/bandwidths are derived and validated.
    """
    cols = []
    for k, spec in enumerate(spectra):
        col = as_complex_vector(spec, f"spectrum {k}")
        if col.size != n:
            raise DimensionMismatch(f"spectrum {k} has length {col.size}, expected {n}")
        if np.max(np.abs(col)) <= SUPPORT_TOL:
            raise ZeroColumn(f"spectrum {k} is all-zero")
        cols.append(col)
    if not cols:
        raise DimensionMismatch("need at least one spectrum")
    spectrum = np.column_stack(cols)
    return SubBandBasis._from_spectrum(idft(spectrum), spectrum)


def partitioned_subband_basis(n, bandwidths, seed):
    """Ideal band-pass bank: contiguous disjoint supports of the given
    sizes covering 0..n-1, in-band values drawn with magnitude >= 0.1."""
    bandwidths = [int(b) for b in bandwidths]
    if any(b < 1 for b in bandwidths):
        raise PartitionMismatch("bandwidths must be positive")
    if sum(bandwidths) != n:
        raise PartitionMismatch(
            f"bandwidths sum to {sum(bandwidths)}, expected n={n}"
        )
    rng = _rng(seed)
    spectrum = np.zeros((n, len(bandwidths)), dtype=np.complex128)
    start = 0
    for k, width in enumerate(bandwidths):
        spectrum[start:start + width, k] = sample_nonvanishing_vector(width, rng)
        start += width
    return SubBandBasis._from_spectrum(idft(spectrum), spectrum)


def even_bandwidths(n, m2):
    """Split n frequencies into m2 contiguous bands as evenly as possible,
    larger bands first."""
    if m2 < 1 or n < m2:
        raise PartitionMismatch(f"cannot split n={n} into {m2} nonempty bands")
    q, r = divmod(n, m2)
    return [q + 1] * r + [q] * (m2 - r)


def kronecker_structured_pair(n, m1, m2, seed):
    """Deterministic-structure witness pair whose lifted operator has full
    column rank m1*m2.

    In the Fourier domain, E's first m1*m2 spectrum rows are the Kronecker
    product I_{m2} (x) ones(m1, 1) and D's spectrum is generic; the lifted
    operator then contains a block-diagonal stack of m1 x m1 generic
    blocks, which is invertible.
    """
    if m1 < 1 or m2 < 1:
        raise DimensionMismatch(f"need positive m1, m2, got {m1}, {m2}")
    if n < m1 * m2:
        raise InfeasibleDimensions(f"need n >= m1*m2 = {m1 * m2}, got n={n}")
    rng = _rng(seed)
    Dt = sample_generic_matrix(n, m1, rng)
    Et = np.zeros((n, m2), dtype=np.complex128)
    Et[: m1 * m2, :] = np.kron(np.eye(m2), np.ones((m1, 1)))
    if n > m1 * m2:
        Et[m1 * m2:, :] = sample_generic_matrix(n - m1 * m2, m2, rng)
    # The structured argument uses the m2 stacked m1 x m1 blocks of Dt;
    # confirm the generic draw made them invertible.
    for k in range(m2):
        block = Dt[k * m1:(k + 1) * m1, :]
        if numerical_rank(block) < m1:
            raise ValueError("generic draw produced a singular structured block; reseed")
    return idft(Dt), idft(Et)


def kronecker_structured_sparsity_witness(n, s1, s2, t1, t2, seed):
    """Witness (D, E, support pattern) for the seven-block independence
    certificate at overlap sizes (t1, t2).

    D has 2*s1-t1 generic columns. E has 2*s2-t2 columns whose first
    2*s1*s2 spectrum rows hold three vertically stacked Kronecker blocks
    with disjoint row ranges, one per column group, so the grouped lifted
    columns land in disjoint row blocks. Returns the canonical support
    pattern selecting the column groups.
    """
    from .lifting import SupportPattern

    if not (0 <= t1 <= s1 and 0 <= t2 <= s2):
        raise DimensionMismatch(f"need 0 <= t1 <= s1 and 0 <= t2 <= s2, got {t1}, {t2}")
    if n < 2 * s1 * s2:
        raise InfeasibleDimensions(f"need n >= 2*s1*s2 = {2 * s1 * s2}, got n={n}")
    rng = _rng(seed)
    mD = 2 * s1 - t1
    mE = 2 * s2 - t2
    Dt = sample_generic_matrix(n, mD, rng)
    Et = np.zeros((n, mE), dtype=np.complex128)
    if t2 > 0:
        Et[: 2 * s1 * t2, :t2] = np.kron(np.eye(t2), np.ones((2 * s1, 1)))
    if s2 > t2:
        top = 2 * s1 * t2
        mid = top + s1 * (s2 - t2)
        Et[top:mid, t2:s2] = np.kron(np.eye(s2 - t2), np.ones((s1, 1)))
        Et[mid: 2 * s1 * s2, s2:] = np.kron(np.eye(s2 - t2), np.ones((s1, 1)))
    if n > 2 * s1 * s2:
        Et[2 * s1 * s2:, :] = sample_generic_matrix(n - 2 * s1 * s2, mE, rng)
    pattern = SupportPattern(
        J0=tuple(range(s1)),
        J=tuple(range(t1)) + tuple(range(s1, 2 * s1 - t1)),
        K0=tuple(range(s2)),
        K=tuple(range(t2)) + tuple(range(s2, 2 * s2 - t2)),
    )
    return idft(Dt), idft(Et), pattern


def verify_spark_condition(D, s, rtol=None):
    """True iff every set of 2s columns of D has full rank 2s, i.e. the
    smallest linearly dependent column set has more than 2s columns.

    Exhaustive over column subsets; guarded by an enumeration cap.
    """
    D = as_complex_matrix(D, "D")
    cols = D.shape[1]
    if 2 * s > cols:
        raise DimensionMismatch(f"need 2s <= cols, got s={s}, cols={cols}")
    count = math.comb(cols, 2 * s)
    if count > SPARK_ENUMERATION_CAP:
        raise EnumerationTooLarge(
            f"C({cols}, {2 * s}) = {count} exceeds the cap {SPARK_ENUMERATION_CAP}"
        )
    for subset in itertools.combinations(range(cols), 2 * s):
        if numerical_rank(D[:, subset], rtol) < 2 * s:
            return False
    return True


def save_instance(dirpath, instance, seed=None):
    """Write D.mat, E.mat and instance.cfg into a directory."""
    matio.ensure_dir(dirpath)
    matio.save_matrix(os.path.join(dirpath, "D.mat"), instance.D)
    matio.save_matrix(os.path.join(dirpath, "E.mat"), instance.E)
    cfg = {
        "n": instance.n,
        "m1": instance.m1,
        "m2": instance.m2,
        "x_kind": instance.x_constraint.kind,
        "y_kind": instance.y_constraint.kind,
    }
    if instance.x_constraint.kind == "sparse":
        cfg["s1"] = instance.x_constraint.sparsity
    if instance.y_constraint.kind == "sparse":
        cfg["s2"] = instance.y_constraint.sparsity
    if seed is not None:
        cfg["seed"] = seed
    matio.save_kv(os.path.join(dirpath, "instance.cfg"), cfg)


def load_instance(dirpath):
    """Read an instance directory back; returns (BDInstance, metadata)."""
    cfg = matio.load_kv(os.path.join(dirpath, "instance.cfg"))
    D = matio.load_matrix(os.path.join(dirpath, "D.mat"))
    E = matio.load_matrix(os.path.join(dirpath, "E.mat"))
    n = int(cfg["n"])
    if D.shape != (n, int(cfg["m1"])) or E.shape != (n, int(cfg["m2"])):
        raise DimensionMismatch(
            f"matrix shapes {D.shape}/{E.shape} disagree with instance.cfg"
        )
    x_kind = cfg.get("x_kind", "subspace")
    y_kind = cfg.get("y_kind", "subspace")
    x_spec = (ConstraintSpec.sparse(int(cfg["s1"])) if x_kind == "sparse"
              else ConstraintSpec.subspace())
    y_spec = (ConstraintSpec.sparse(int(cfg["s2"])) if y_kind == "sparse"
              else ConstraintSpec.subspace())
    instance = BDInstance(n=n, D=D, E=E, x_constraint=x_spec, y_constraint=y_spec)
    meta = {"seed": int(cfg["seed"])} if "seed" in cfg else {}
    return instance, meta
