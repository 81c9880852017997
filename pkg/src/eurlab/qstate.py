"""Pure states, orthonormal bases and mutually unbiased basis (MUB) sets.

Complete MUB sets for dimensions 3, 4 and 5 are generated from Hadamard
matrices whose entries are integer powers of a primitive root of unity.
The exponent tables are stored exactly; the root is materialized from its
exponential definition only when a matrix is built, so no rounding
accumulates across powers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .exceptions import DimensionError, InvalidStateError, SelectionError

SUPPORTED_DIMS = (3, 4, 5)
MUB_LABELS = "ABCDEF"

NORM_TOL = 1e-12
ORTHO_TOL = 1e-12
UNBIASED_TOL = 1e-10

# Hadamard bases as integer exponent tables of omega = exp(2*pi*i/d),
# row-major, scaled by 1/sqrt(d) at materialization. Entries of the d=4
# matrices are powers of i = exp(2*pi*i/4): 1 -> 0, i -> 1, -1 -> 2, -i -> 3.
_HADAMARD_EXPONENTS: dict[int, dict[str, list[list[int]]]] = {
    3: {
        "B": [[0, 0, 0], [0, 1, 2], [0, 2, 1]],
        "C": [[0, 0, 0], [2, 1, 0], [0, 1, 2]],
        "D": [[0, 0, 0], [1, 2, 0], [0, 2, 1]],
    },
    4: {
        "B": [[0, 0, 0, 0], [0, 0, 2, 2], [0, 2, 2, 0], [0, 2, 0, 2]],
        "C": [[0, 0, 0, 0], [0, 0, 2, 2], [3, 1, 1, 3], [1, 3, 1, 3]],
        "D": [[0, 0, 0, 0], [1, 3, 1, 3], [2, 2, 0, 0], [1, 3, 3, 1]],
        "E": [[0, 0, 0, 0], [1, 3, 1, 3], [1, 3, 3, 1], [2, 2, 0, 0]],
    },
    5: {
        "B": [[0, 0, 0, 0, 0], [0, 1, 2, 3, 4], [0, 2, 4, 1, 3], [0, 3, 1, 4, 2], [0, 4, 3, 2, 1]],
        "C": [[0, 0, 0, 0, 0], [1, 2, 3, 4, 0], [4, 1, 3, 0, 2], [4, 2, 0, 3, 1], [1, 0, 4, 3, 2]],
        "D": [[0, 0, 0, 0, 0], [3, 4, 0, 1, 2], [2, 4, 1, 3, 0], [2, 0, 3, 1, 4], [3, 2, 1, 0, 4]],
        "E": [[0, 0, 0, 0, 0], [2, 3, 4, 0, 1], [3, 0, 2, 4, 1], [3, 1, 4, 2, 0], [2, 1, 0, 4, 3]],
        "F": [[0, 0, 0, 0, 0], [4, 0, 1, 2, 3], [1, 3, 0, 2, 4], [1, 4, 2, 0, 3], [4, 3, 2, 1, 0]],
    },
}


def full_set_labels(dim: int) -> tuple[str, ...]:
    """Labels of the complete MUB set in the given dimension (d+1 bases)."""
    _require_supported(dim)
    return tuple(MUB_LABELS[: dim + 1])


def _require_supported(dim: int) -> None:
    if dim not in SUPPORTED_DIMS:
        raise DimensionError(f"unsupported dimension {dim}; expected one of {SUPPORTED_DIMS}")


def _frozen_complex(values) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector of a d-level pure state.

    Immutable after construction; the amplitude array is read-only.
    Global phase is not canonicalized: phase-insensitive comparisons go
    through :meth:`fidelity`.
    """

    dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        arr = _frozen_complex(self.amplitudes)
        if arr.ndim != 1 or arr.shape[0] != self.dim:
            raise DimensionError(
                f"amplitude vector of length {arr.shape} does not match dim={self.dim}"
            )
        norm_sq = float(np.sum(np.abs(arr) ** 2))
        if abs(norm_sq - 1.0) > 1e-9:
            raise InvalidStateError(f"state norm**2 = {norm_sq!r} deviates from 1 beyond 1e-9")
        if abs(norm_sq - 1.0) > NORM_TOL:
            arr = _frozen_complex(arr / np.sqrt(norm_sq))
        object.__setattr__(self, "amplitudes", arr)

    @classmethod
    def normalized(cls, amplitudes: Iterable[complex]) -> "PureState":
        """Build a state from an arbitrary nonzero amplitude vector."""
        arr = np.asarray(list(amplitudes) if not isinstance(amplitudes, np.ndarray) else amplitudes, dtype=complex)
        norm = float(np.linalg.norm(arr))
        if norm < 1e-12:
            raise InvalidStateError("cannot normalize a (near-)zero amplitude vector")
        return cls(dim=arr.shape[0], amplitudes=arr / norm)

    def overlap(self, other: "PureState") -> complex:
        """Inner product <self|other>."""
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "PureState") -> float:
        """|<self|other>|**2, invariant under global phase."""
        return abs(self.overlap(other)) ** 2

    @property
    def moduli(self) -> np.ndarray:
        """Moduli of the polar decomposition of the amplitudes."""
        return np.abs(self.amplitudes)

    @property
    def phases(self) -> np.ndarray:
        """Phases of the polar decomposition, in (-pi, pi]."""
        return np.angle(self.amplitudes)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PureState":
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        return cls(dim=int(data["dim"]), amplitudes=amps)


def basis_state(dim: int, index: int) -> PureState:
    """Computational eigenstate |index> in dimension dim."""
    _require_supported(dim)
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return PureState(dim=dim, amplitudes=amps)


@dataclass(frozen=True)
class Basis:
    """Orthonormal basis stored as a d x d matrix whose columns are states."""

    dim: int
    label: str
    matrix: np.ndarray

    def __post_init__(self):
        mat = _frozen_complex(self.matrix)
        if mat.shape != (self.dim, self.dim):
            raise DimensionError(f"matrix shape {mat.shape} does not match dim={self.dim}")
        if self.label not in MUB_LABELS:
            raise SelectionError(f"label {self.label!r} not in {MUB_LABELS!r}")
        gram = mat.conj().T @ mat
        if np.max(np.abs(gram - np.eye(self.dim))) > ORTHO_TOL:
            raise InvalidStateError(
                f"columns of basis {self.label} are not orthonormal within {ORTHO_TOL}"
            )
        object.__setattr__(self, "matrix", mat)

    def column(self, j: int) -> PureState:
        return PureState(dim=self.dim, amplitudes=self.matrix[:, j])

    @property
    def columns(self) -> tuple[PureState, ...]:
        return tuple(self.column(j) for j in range(self.dim))

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "label": self.label,
            "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Basis":
        mat = np.array(
            [[complex(re, im) for re, im in row] for row in data["matrix"]], dtype=complex
        )
        return cls(dim=int(data["dim"]), label=str(data["label"]), matrix=mat)


class UnbiasednessCheck(NamedTuple):
    unbiased: bool
    max_deviation: float


def check_mutually_unbiased(b1: Basis, b2: Basis, tol: float = UNBIASED_TOL) -> UnbiasednessCheck:
    """Check |<a_k|b_j>| = 1/sqrt(d) for all cross overlaps of two bases.

    Returns the verdict together with the worst-case deviation of the
    overlap modulus from 1/sqrt(d).
    """
    if b1.dim != b2.dim:
        raise DimensionError(f"dimension mismatch: {b1.dim} vs {b2.dim}")
    overlaps = np.abs(b1.matrix.conj().T @ b2.matrix)
    dev = float(np.max(np.abs(overlaps - 1.0 / np.sqrt(b1.dim))))
    return UnbiasednessCheck(unbiased=dev < tol, max_deviation=dev)


@dataclass(frozen=True)
class MubSet:
    """Ordered collection of pairwise mutually unbiased bases."""

    dim: int
    bases: tuple[Basis, ...]

    def __post_init__(self):
        bases = tuple(self.bases)
        if not 2 <= len(bases) <= self.dim + 1:
            raise SelectionError(
                f"a MUB set in dimension {self.dim} must hold between 2 and {self.dim + 1} bases, "
                f"got {len(bases)}"
            )
        for b in bases:
            if b.dim != self.dim:
                raise DimensionError(f"basis {b.label} has dim {b.dim}, set has dim {self.dim}")
        for b1, b2 in combinations(bases, 2):
            result = check_mutually_unbiased(b1, b2)
            if not result.unbiased:
                raise InvalidStateError(
                    f"bases {b1.label} and {b2.label} are not mutually unbiased "
                    f"(max deviation {result.max_deviation:.3e})"
                )
        object.__setattr__(self, "bases", bases)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(b.label for b in self.bases)

    @property
    def size(self) -> int:
        return len(self.bases)

    def basis(self, label: str) -> Basis:
        for b in self.bases:
            if b.label == label:
                return b
        raise SelectionError(f"label {label!r} not in set {self.labels}")

    def to_dict(self) -> dict:
        return {"dim": self.dim, "bases": [b.to_dict() for b in self.bases]}

    @classmethod
    def from_dict(cls, data: dict) -> "MubSet":
        return cls(
            dim=int(data["dim"]),
            bases=tuple(Basis.from_dict(b) for b in data["bases"]),
        )

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "MubSet":
        return cls.from_dict(json.loads(text))


def build_computational_basis(d: int) -> Basis:
    """Identity-matrix basis, labeled A."""
    _require_supported(d)
    return Basis(dim=d, label="A", matrix=np.eye(d, dtype=complex))


def _hadamard_basis(d: int, label: str) -> Basis:
    exponents = np.array(_HADAMARD_EXPONENTS[d][label], dtype=np.int64)
    root_order = 4 if d == 4 else d
    matrix = np.exp(2j * np.pi * (exponents % root_order) / root_order) / np.sqrt(d)
    return Basis(dim=d, label=label, matrix=matrix)


def build_full_mub_set(d: int) -> MubSet:
    """Complete MUB set: 4 bases for d=3, 5 for d=4, 6 for d=5."""
    _require_supported(d)
    bases = [build_computational_basis(d)]
    bases.extend(_hadamard_basis(d, label) for label in full_set_labels(d)[1:])
    return MubSet(dim=d, bases=tuple(bases))


def select_subset(full: MubSet, labels: Sequence[str]) -> MubSet:
    """Sub-collection of a MUB set, in the order the labels are given."""
    labels = [str(l) for l in labels]
    if len(set(labels)) != len(labels):
        raise SelectionError(f"duplicate labels in selection {labels}")
    return MubSet(dim=full.dim, bases=tuple(full.basis(l) for l in labels))


def random_state(d: int, seed: int) -> PureState:
    """Seeded random state: amplitudes r_j * exp(i*theta_j) with r_j uniform
    on [0, 1] and theta_j uniform on [0, 2*pi), then normalized.

    Not uniform on the state space, which is irrelevant for bound scans;
    bit-reproducible for a fixed seed.
    """
    _require_supported(d)
    rng = np.random.default_rng(seed)
    while True:
        r = rng.random(d)
        theta = rng.uniform(0.0, 2.0 * np.pi, d)
        amps = r * np.exp(1j * theta)
        norm = np.linalg.norm(amps)
        if norm > 1e-6:  # guards the measure-zero all-tiny draw
            return PureState(dim=d, amplitudes=amps / norm)
