"""Imperfect-measurement chain: cross-talk POVMs, photon-count sampling,
plug-in entropy estimation and Monte-Carlo spread analysis.

The cross-talk model mixes each channel's ideal projector uniformly with the
other channels' projectors of the same basis, parametrized by the probability
epsilon that an eigenstate fires a wrong channel. Arbitrary user-supplied
POVM element matrices (for example from detector tomography) are accepted
through the plain Povm constructor and its JSON import.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .entropy import (
    EntropyReport,
    ProbabilityVector,
    _clipped_probability_vector,
    bound_lookup,
    entropy_bits,
    shannon_entropy,
)
from .exceptions import DimensionError, PovmError
from .qstate import Basis, MubSet, PureState

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
COMPLETENESS_TOL = 1e-10

DEFAULT_SHOTS = 10**6
DEFAULT_RESAMPLES = 500


@dataclass(frozen=True)
class Povm:
    """d-outcome POVM: Hermitian PSD matrices summing to the identity, one
    per output channel gamma in [0, d)."""

    dim: int
    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        elements = []
        for gamma, element in enumerate(self.elements):
            mat = np.array(element, dtype=complex)
            if mat.shape != (self.dim, self.dim):
                raise DimensionError(
                    f"POVM element {gamma} has shape {mat.shape}, expected {(self.dim, self.dim)}"
                )
            if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL:
                raise PovmError(f"POVM element {gamma} is not Hermitian within {HERMITIAN_TOL}")
            if float(np.linalg.eigvalsh(mat)[0]) < -PSD_TOL:
                raise PovmError(f"POVM element {gamma} has a negative eigenvalue beyond {PSD_TOL}")
            mat.setflags(write=False)
            elements.append(mat)
        if len(elements) != self.dim:
            raise DimensionError(f"expected {self.dim} POVM elements, got {len(elements)}")
        total = sum(elements)
        if np.max(np.abs(total - np.eye(self.dim))) > COMPLETENESS_TOL:
            raise PovmError(f"POVM elements do not sum to the identity within {COMPLETENESS_TOL}")
        object.__setattr__(self, "elements", tuple(elements))

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "elements": [
                [[[float(v.real), float(v.imag)] for v in row] for row in element]
                for element in self.elements
            ],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "Povm":
        elements = tuple(
            np.array([[complex(re, im) for re, im in row] for row in element])
            for element in data["elements"]
        )
        return cls(dim=int(data["dim"]), elements=elements)

    @classmethod
    def from_json(cls, text: str) -> "Povm":
        return cls.from_dict(json.loads(text))


def build_ideal_povm(basis: Basis) -> Povm:
    """Rank-1 projectors onto the basis columns."""
    cols = basis.matrix.T
    return Povm(
        dim=basis.dim,
        elements=tuple(np.outer(c, c.conj()) for c in cols),
    )


def build_crosstalk_povm(basis: Basis, epsilon: float) -> Povm:
    """Uniform-confusion POVM: each channel keeps its own projector with
    weight 1-epsilon and picks up the remaining weight evenly from the other
    channels of the same basis. Completeness is preserved exactly."""
    if not 0.0 <= epsilon < 1.0:
        raise ValueError(f"epsilon must be in [0, 1), got {epsilon}")
    d = basis.dim
    projectors = [np.outer(c, c.conj()) for c in basis.matrix.T]
    identity = np.eye(d, dtype=complex)
    elements = tuple(
        (1.0 - epsilon) * p + (epsilon / (d - 1)) * (identity - p) for p in projectors
    )
    return Povm(dim=d, elements=elements)


def apply_povm(state: PureState, povm: Povm) -> ProbabilityVector:
    """Channel probabilities p_gamma = <psi|pi_gamma|psi>."""
    if state.dim != povm.dim:
        raise DimensionError(f"dimension mismatch: state {state.dim} vs POVM {povm.dim}")
    psi = state.amplitudes
    raw = np.array([float(np.real(np.vdot(psi, element @ psi))) for element in povm.elements])
    return _clipped_probability_vector(raw)


@dataclass(frozen=True)
class CountRecord:
    """Photon counts per output channel for one (state, basis) measurement."""

    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"negative counts: {counts}")
        if self.total != sum(counts):
            raise ValueError(f"total {self.total} does not match sum of counts {sum(counts)}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "CountRecord":
        counts = tuple(int(c) for c in counts)
        return cls(counts=counts, total=sum(counts))


def simulate_counts(probs: ProbabilityVector, n: int, seed: int) -> CountRecord:
    """One multinomial draw of n detection events; deterministic per seed."""
    if n < 1:
        raise ValueError("shot count must be >= 1")
    rng = np.random.default_rng(seed)
    p = probs.probs / probs.probs.sum()  # exact normalization for the sampler
    counts = rng.multinomial(n, p)
    return CountRecord(counts=tuple(int(c) for c in counts), total=n)


def estimate_entropy(counts: CountRecord) -> float:
    """Plug-in Shannon entropy (bits) of the normalized counts."""
    if counts.total <= 0:
        raise ValueError("cannot estimate entropy from zero total counts")
    freqs = np.asarray(counts.counts, dtype=float) / counts.total
    return entropy_bits(freqs)


@dataclass(frozen=True)
class SpreadEstimate:
    """Plug-in point estimate with the 10th/90th percentile band of the
    resampled-entropy distribution."""

    point: float
    low: float
    high: float
    n_resamples: int

    def __post_init__(self):
        if not self.low <= self.point <= self.high:
            raise ValueError(
                f"spread band [{self.low}, {self.high}] does not contain the point {self.point}"
            )

    @property
    def width(self) -> float:
        return self.high - self.low


def _resample_entropies(
    counts: CountRecord, n_resamples: int, seed: int, stream_tag: int = 0
) -> np.ndarray:
    empirical = np.asarray(counts.counts, dtype=float) / counts.total
    entropies = np.empty(n_resamples)
    for r in range(n_resamples):
        rng = np.random.default_rng((seed, stream_tag, r))
        entropies[r] = entropy_bits(rng.multinomial(counts.total, empirical) / counts.total)
    return entropies


def monte_carlo_spread(
    counts: CountRecord, n_resamples: int = DEFAULT_RESAMPLES, seed: int = 0
) -> SpreadEstimate:
    """Resample multinomial datasets of the same size from the empirical
    distribution and report the 10%-90% band of their plug-in entropies
    (linear interpolation between order statistics) around the point
    estimate. Degenerate counts yield a zero-width band."""
    if counts.total <= 0:
        raise ValueError("cannot resample zero total counts")
    if n_resamples < 2:
        raise ValueError("need at least 2 resamples")
    point = estimate_entropy(counts)
    entropies = _resample_entropies(counts, n_resamples, seed)
    low, high = np.percentile(entropies, [10.0, 90.0])
    # the plug-in estimate of the original counts always belongs to the band
    return SpreadEstimate(
        point=point,
        low=min(float(low), point),
        high=max(float(high), point),
        n_resamples=n_resamples,
    )


def monte_carlo_spread_sum(
    records: Sequence[CountRecord], n_resamples: int = DEFAULT_RESAMPLES, seed: int = 0
) -> SpreadEstimate:
    """Spread of the summed entropy over several simultaneously resampled
    count records (one per measured basis)."""
    if not records:
        raise ValueError("need at least one count record")
    if n_resamples < 2:
        raise ValueError("need at least 2 resamples")
    point = float(np.sum([estimate_entropy(rec) for rec in records]))
    sums = np.zeros(n_resamples)
    for tag, rec in enumerate(records):
        sums += _resample_entropies(rec, n_resamples, seed, stream_tag=tag)
    low, high = np.percentile(sums, [10.0, 90.0])
    return SpreadEstimate(
        point=point, low=min(float(low), point), high=max(float(high), point), n_resamples=n_resamples
    )


def predicted_entropy_sum(
    state: PureState,
    mub_set: MubSet,
    epsilon_per_basis: Sequence[float],
    variant: str | None = None,
    state_id: str = "state",
) -> EntropyReport:
    """Entropy sum one would observe measuring with cross-talk POVMs instead
    of ideal projections, reported against the same catalog bound."""
    if len(epsilon_per_basis) != mub_set.size:
        raise ValueError(
            f"need one epsilon per basis: got {len(epsilon_per_basis)} for {mub_set.size} bases"
        )
    entries = []
    for basis, eps in zip(mub_set.bases, epsilon_per_basis):
        povm = build_crosstalk_povm(basis, float(eps))
        entries.append((basis.label, shannon_entropy(apply_povm(state, povm))))
    total = float(np.sum([h for _, h in entries]))
    bound = bound_lookup(mub_set.dim, mub_set.size, variant)
    return EntropyReport(
        state_id=state_id,
        entries=tuple(entries),
        sum=total,
        bound=bound,
        saturation_gap=total - bound.value,
    )
