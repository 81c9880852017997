"""Generators for the closed-form families of minimum-uncertainty states.

Phases are stored as exact rational multiples of pi and materialized only
when a state is built. The d=5 four- and five-basis families are shipped as
refined parameter sets reconstructed numerically (see
:func:`reconstruct_d5_family`); the two-decimal moduli quoted for them are
recovered at full precision by local descent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .exceptions import RefinementRejectedError, SelectionError
from .minimizer import (
    MinimizationConfig,
    _descend,
    _resolve_bound,
    _stacked_measurement,
    batch_entropy_sums,
    minimize_entropy_sum,
    parametrize_state,
    state_parameters,
)
from .qstate import (
    MubSet,
    PureState,
    build_full_mub_set,
    full_set_labels,
    select_subset,
)


@dataclass(frozen=True)
class OptimalFamilySpec:
    """Identifying parameters of one generated minimum-uncertainty state."""

    dim: int
    m: int
    labels: tuple[str, ...]
    parameters: tuple[tuple[str, object], ...]

    def parameter_dict(self) -> dict:
        return dict(self.parameters)


def _pi(frac: Fraction | int) -> float:
    return float(Fraction(frac)) * math.pi


def two_term_state(dim: int, j1: int, j2: int, phase: float) -> PureState:
    """(|j1> + exp(i*phase)|j2>)/sqrt(2)."""
    amps = np.zeros(dim, dtype=complex)
    amps[j1] = 1.0
    amps[j2] = np.exp(1j * phase)
    return PureState(dim=dim, amplitudes=amps / np.sqrt(2.0))


def _sorted_key(labels: Iterable[str]) -> str:
    return "".join(sorted(str(l) for l in labels))


# --- d = 3 -----------------------------------------------------------------

D3_PAIRS = ((0, 1), (0, 2), (1, 2))
D3_PHASES = (Fraction(1, 3), Fraction(1, 1), Fraction(5, 3))


def optimal_states_d3() -> list[PureState]:
    """The nine d=3 optimizers: all index pairs with phases pi/3, pi, 5pi/3.

    The same family saturates every triple of the complete set and the full
    four-basis sum."""
    return [state for _, state in d3_family_records()]


def d3_family_records() -> list[tuple[OptimalFamilySpec, PureState]]:
    records = []
    for (j1, j2), frac in product(D3_PAIRS, D3_PHASES):
        spec = OptimalFamilySpec(
            dim=3,
            m=4,
            labels=full_set_labels(3),
            parameters=(("j1", j1), ("j2", j2), ("phase_pi", str(frac))),
        )
        records.append((spec, two_term_state(3, j1, j2, _pi(frac))))
    return records


# --- d = 4 -----------------------------------------------------------------

_HALF = (Fraction(1, 2), Fraction(-1, 2))
_ZERO_PI = (Fraction(0, 1), Fraction(1, 1))

D4_TRIPLES_WITH_A: dict[str, tuple[tuple[tuple[int, int], tuple[Fraction, Fraction]], ...]] = {
    "ABC": (((0, 1), _ZERO_PI), ((2, 3), _ZERO_PI)),
    "ABD": (((0, 2), _ZERO_PI), ((1, 3), _ZERO_PI)),
    "ABE": (((0, 3), _ZERO_PI), ((1, 2), _ZERO_PI)),
    "ACD": (((0, 3), _HALF), ((1, 2), _HALF)),
    "ACE": (((0, 2), _HALF), ((1, 3), _HALF)),
    "ADE": (((0, 1), _HALF), ((2, 3), _HALF)),
}

D4_TRIPLES_WITHOUT_A: dict[str, tuple[tuple[Fraction, Fraction, Fraction], ...]] = {
    "BCD": (
        (Fraction(1, 2), Fraction(1, 2), Fraction(0, 1)),
        (Fraction(-1, 2), Fraction(-1, 2), Fraction(0, 1)),
        (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 1)),
        (Fraction(-1, 2), Fraction(1, 2), Fraction(1, 1)),
    ),
    "BCE": (
        (Fraction(1, 2), Fraction(0, 1), Fraction(1, 2)),
        (Fraction(-1, 2), Fraction(0, 1), Fraction(-1, 2)),
        (Fraction(1, 2), Fraction(1, 1), Fraction(-1, 2)),
        (Fraction(-1, 2), Fraction(1, 1), Fraction(1, 2)),
    ),
    "BDE": (
        (Fraction(0, 1), Fraction(1, 2), Fraction(1, 2)),
        (Fraction(0, 1), Fraction(-1, 2), Fraction(-1, 2)),
        (Fraction(1, 1), Fraction(1, 2), Fraction(-1, 2)),
        (Fraction(1, 1), Fraction(-1, 2), Fraction(1, 2)),
    ),
    "CDE": (
        (Fraction(1, 1), Fraction(0, 1), Fraction(0, 1)),
        (Fraction(0, 1), Fraction(1, 1), Fraction(0, 1)),
        (Fraction(0, 1), Fraction(0, 1), Fraction(1, 1)),
        (Fraction(1, 1), Fraction(1, 1), Fraction(1, 1)),
    ),
}

D4_QUADRUPLES: dict[str, tuple[str, ...]] = {
    "ABCD": ("ABC", "ABD", "ACD", "BCD"),
    "ABCE": ("ABC", "ABE", "ACE", "BCE"),
    "ABDE": ("ABD", "ABE", "ADE", "BDE"),
    "ACDE": ("ACD", "ACE", "ADE", "CDE"),
    "BCDE": ("BCD", "BCE", "BDE", "CDE"),
}


def _phase_profile_state(phase_fracs: Sequence[Fraction]) -> PureState:
    """(1/2) * sum_j exp(i*phi_j)|j> with phi_0 = 0."""
    phases = [0.0] + [_pi(f) for f in phase_fracs]
    amps = np.exp(1j * np.array(phases)) / 2.0
    return PureState(dim=4, amplitudes=amps)


def d4_with_a_records(labels) -> list[tuple[OptimalFamilySpec, PureState]]:
    key = _sorted_key(labels)
    if key not in D4_TRIPLES_WITH_A:
        raise SelectionError(f"{labels!r} is not a known d=4 triple containing A")
    records = []
    for (j1, j2), phase_fracs in D4_TRIPLES_WITH_A[key]:
        for frac in phase_fracs:
            spec = OptimalFamilySpec(
                dim=4,
                m=3,
                labels=tuple(key),
                parameters=(("j1", j1), ("j2", j2), ("phase_pi", str(frac))),
            )
            records.append((spec, two_term_state(4, j1, j2, _pi(frac))))
    return records


def optimal_states_d4_with_A(labels) -> list[PureState]:
    """Four optimizers per triple containing the computational basis: two
    index pairs, each with the triple's two phases."""
    return [state for _, state in d4_with_a_records(labels)]


def d4_without_a_records(labels) -> list[tuple[OptimalFamilySpec, PureState]]:
    key = _sorted_key(labels)
    if key not in D4_TRIPLES_WITHOUT_A:
        raise SelectionError(f"{labels!r} is not a known d=4 triple excluding A")
    records = []
    for fracs in D4_TRIPLES_WITHOUT_A[key]:
        spec = OptimalFamilySpec(
            dim=4,
            m=3,
            labels=tuple(key),
            parameters=(("phases_pi", tuple(str(f) for f in fracs)),),
        )
        records.append((spec, _phase_profile_state(fracs)))
    return records


def optimal_states_d4_without_A(labels) -> list[PureState]:
    """Four equal-modulus optimizers per A-free triple, defined by three
    relative phases (the first phase fixed to zero)."""
    return [state for _, state in d4_without_a_records(labels)]


def optimal_states_d4_quadruple(labels) -> list[PureState]:
    """Optimizers of a d=4 quadruple: the union of the optimizers of the
    triples associated with it."""
    key = _sorted_key(labels)
    if key not in D4_QUADRUPLES:
        raise SelectionError(f"{labels!r} is not a d=4 quadruple of MUB labels")
    states: list[PureState] = []
    for triple in D4_QUADRUPLES[key]:
        if "A" in triple:
            states.extend(optimal_states_d4_with_A(triple))
        else:
            states.extend(optimal_states_d4_without_A(triple))
    return states


def _d4_all_triple_states() -> list[PureState]:
    states: list[PureState] = []
    for triple in D4_TRIPLES_WITH_A:
        states.extend(optimal_states_d4_with_A(triple))
    for triple in D4_TRIPLES_WITHOUT_A:
        states.extend(optimal_states_d4_without_A(triple))
    return states


# --- d = 5 -----------------------------------------------------------------

D5_M6_PHASES = (Fraction(1, 5), Fraction(3, 5), Fraction(1, 1), Fraction(-3, 5), Fraction(-1, 5))

# Refined members of the one-null-coefficient families, reconstructed and
# polished numerically by reconstruct_d5_family (regenerate it to audit).
# Each member is (null index z, small-modulus pair, large-modulus pair,
# relative phases of the four nonzero coefficients in units of pi/5, gauge:
# first nonzero phase 0). The pairs always sit at z+-1 and z+-2 mod 5; each
# (z, pairing) carries five phase patterns, 50 members in total per family,
# all certified at the same minimum to ~1e-14. The small modulus is polished
# to machine precision; the large one follows from normalization.
D5_M4_SMALL_MODULUS = 0.19322861479131517
D5_M4_MEMBERS = (
    (0, (1, 4), (2, 3), (0, 1, 4, 9)),
    (0, (1, 4), (2, 3), (0, 3, 8, 5)),
    (0, (1, 4), (2, 3), (0, 5, 2, 1)),
    (0, (1, 4), (2, 3), (0, 7, 6, 7)),
    (0, (1, 4), (2, 3), (0, 9, 0, 3)),
    (0, (2, 3), (1, 4), (0, 0, 7, 1)),
    (0, (2, 3), (1, 4), (0, 2, 1, 7)),
    (0, (2, 3), (1, 4), (0, 4, 5, 3)),
    (0, (2, 3), (1, 4), (0, 6, 9, 9)),
    (0, (2, 3), (1, 4), (0, 8, 3, 5)),
    (1, (0, 2), (3, 4), (0, 1, 2, 5)),
    (1, (0, 2), (3, 4), (0, 3, 0, 9)),
    (1, (0, 2), (3, 4), (0, 5, 8, 3)),
    (1, (0, 2), (3, 4), (0, 7, 6, 7)),
    (1, (0, 2), (3, 4), (0, 9, 4, 1)),
    (1, (3, 4), (0, 2), (0, 1, 7, 0)),
    (1, (3, 4), (0, 2), (0, 3, 5, 4)),
    (1, (3, 4), (0, 2), (0, 5, 3, 8)),
    (1, (3, 4), (0, 2), (0, 7, 1, 2)),
    (1, (3, 4), (0, 2), (0, 9, 9, 6)),
    (2, (0, 4), (1, 3), (0, 0, 1, 7)),
    (2, (0, 4), (1, 3), (0, 2, 7, 5)),
    (2, (0, 4), (1, 3), (0, 4, 3, 3)),
    (2, (0, 4), (1, 3), (0, 6, 9, 1)),
    (2, (0, 4), (1, 3), (0, 8, 5, 9)),
    (2, (1, 3), (0, 4), (0, 1, 4, 1)),
    (2, (1, 3), (0, 4), (0, 3, 0, 9)),
    (2, (1, 3), (0, 4), (0, 5, 6, 7)),
    (2, (1, 3), (0, 4), (0, 7, 2, 5)),
    (2, (1, 3), (0, 4), (0, 9, 8, 3)),
    (3, (0, 1), (2, 4), (0, 1, 9, 6)),
    (3, (0, 1), (2, 4), (0, 3, 3, 4)),
    (3, (0, 1), (2, 4), (0, 5, 7, 2)),
    (3, (0, 1), (2, 4), (0, 7, 1, 0)),
    (3, (0, 1), (2, 4), (0, 9, 5, 8)),
    (3, (2, 4), (0, 1), (0, 1, 4, 1)),
    (3, (2, 4), (0, 1), (0, 3, 8, 9)),
    (3, (2, 4), (0, 1), (0, 5, 2, 7)),
    (3, (2, 4), (0, 1), (0, 7, 6, 5)),
    (3, (2, 4), (0, 1), (0, 9, 0, 3)),
    (4, (0, 3), (1, 2), (0, 1, 4, 9)),
    (4, (0, 3), (1, 2), (0, 3, 8, 5)),
    (4, (0, 3), (1, 2), (0, 5, 2, 1)),
    (4, (0, 3), (1, 2), (0, 7, 6, 7)),
    (4, (0, 3), (1, 2), (0, 9, 0, 3)),
    (4, (1, 2), (0, 3), (0, 0, 7, 1)),
    (4, (1, 2), (0, 3), (0, 2, 1, 7)),
    (4, (1, 2), (0, 3), (0, 4, 5, 3)),
    (4, (1, 2), (0, 3), (0, 6, 9, 9)),
    (4, (1, 2), (0, 3), (0, 8, 3, 5)),
)
D5_M5_SMALL_MODULUS = 0.10908316114667169
D5_M5_MEMBERS = (
    (0, (1, 4), (2, 3), (0, 0, 1, 3)),
    (0, (1, 4), (2, 3), (0, 2, 5, 9)),
    (0, (1, 4), (2, 3), (0, 4, 9, 5)),
    (0, (1, 4), (2, 3), (0, 6, 3, 1)),
    (0, (1, 4), (2, 3), (0, 8, 7, 7)),
    (0, (2, 3), (1, 4), (0, 1, 8, 1)),
    (0, (2, 3), (1, 4), (0, 3, 2, 7)),
    (0, (2, 3), (1, 4), (0, 5, 6, 3)),
    (0, (2, 3), (1, 4), (0, 7, 0, 9)),
    (0, (2, 3), (1, 4), (0, 9, 4, 5)),
    (1, (0, 2), (3, 4), (0, 1, 3, 6)),
    (1, (0, 2), (3, 4), (0, 3, 1, 0)),
    (1, (0, 2), (3, 4), (0, 5, 9, 4)),
    (1, (0, 2), (3, 4), (0, 7, 7, 8)),
    (1, (0, 2), (3, 4), (0, 9, 5, 2)),
    (1, (3, 4), (0, 2), (0, 1, 8, 1)),
    (1, (3, 4), (0, 2), (0, 3, 6, 5)),
    (1, (3, 4), (0, 2), (0, 5, 4, 9)),
    (1, (3, 4), (0, 2), (0, 7, 2, 3)),
    (1, (3, 4), (0, 2), (0, 9, 0, 7)),
    (2, (0, 4), (1, 3), (0, 1, 6, 5)),
    (2, (0, 4), (1, 3), (0, 3, 2, 3)),
    (2, (0, 4), (1, 3), (0, 5, 8, 1)),
    (2, (0, 4), (1, 3), (0, 7, 4, 9)),
    (2, (0, 4), (1, 3), (0, 9, 0, 7)),
    (2, (1, 3), (0, 4), (0, 0, 3, 1)),
    (2, (1, 3), (0, 4), (0, 2, 9, 9)),
    (2, (1, 3), (0, 4), (0, 4, 5, 7)),
    (2, (1, 3), (0, 4), (0, 6, 1, 5)),
    (2, (1, 3), (0, 4), (0, 8, 7, 3)),
    (3, (0, 1), (2, 4), (0, 1, 8, 5)),
    (3, (0, 1), (2, 4), (0, 3, 2, 3)),
    (3, (0, 1), (2, 4), (0, 5, 6, 1)),
    (3, (0, 1), (2, 4), (0, 7, 0, 9)),
    (3, (0, 1), (2, 4), (0, 9, 4, 7)),
    (3, (2, 4), (0, 1), (0, 1, 3, 0)),
    (3, (2, 4), (0, 1), (0, 3, 7, 8)),
    (3, (2, 4), (0, 1), (0, 5, 1, 6)),
    (3, (2, 4), (0, 1), (0, 7, 5, 4)),
    (3, (2, 4), (0, 1), (0, 9, 9, 2)),
    (4, (0, 3), (1, 2), (0, 0, 1, 3)),
    (4, (0, 3), (1, 2), (0, 2, 5, 9)),
    (4, (0, 3), (1, 2), (0, 4, 9, 5)),
    (4, (0, 3), (1, 2), (0, 6, 3, 1)),
    (4, (0, 3), (1, 2), (0, 8, 7, 7)),
    (4, (1, 2), (0, 3), (0, 1, 8, 1)),
    (4, (1, 2), (0, 3), (0, 3, 2, 7)),
    (4, (1, 2), (0, 3), (0, 5, 6, 3)),
    (4, (1, 2), (0, 3), (0, 7, 0, 9)),
    (4, (1, 2), (0, 3), (0, 9, 4, 5)),
)


def _eq7_state(null_index, small_pair, large_pair, moduli, phase_fracs) -> PureState:
    amps = np.zeros(5, dtype=complex)
    small, large = moduli
    order = [j for j in range(5) if j != null_index]
    phases = {j: _pi(f) for j, f in zip(order, phase_fracs)}
    for j in small_pair:
        amps[j] = small * np.exp(1j * phases[j])
    for j in large_pair:
        amps[j] = large * np.exp(1j * phases[j])
    return PureState.normalized(amps)


def d5_family_records(m: int) -> list[tuple[OptimalFamilySpec, PureState]]:
    if m == 3:
        labels = ("A", "B", "C")
        records = []
        full = build_full_mub_set(5)
        for label in labels:
            basis = full.basis(label)
            for j in range(5):
                spec = OptimalFamilySpec(
                    dim=5, m=3, labels=labels, parameters=(("eigenstate", f"{label}{j}"),)
                )
                records.append((spec, basis.column(j)))
        return records
    if m in (4, 5):
        members = D5_M4_MEMBERS if m == 4 else D5_M5_MEMBERS
        small = D5_M4_SMALL_MODULUS if m == 4 else D5_M5_SMALL_MODULUS
        moduli = (small, math.sqrt(0.5 - small * small))
        labels = full_set_labels(5)[:m]
        records = []
        for null_index, small_pair, large_pair, ks in members:
            fracs = tuple(Fraction(k, 5) for k in ks)
            spec = OptimalFamilySpec(
                dim=5,
                m=m,
                labels=labels,
                parameters=(
                    ("null_index", null_index),
                    ("small_pair", small_pair),
                    ("large_pair", large_pair),
                    ("moduli", moduli),
                    ("phases_pi", tuple(str(f) for f in fracs)),
                ),
            )
            records.append((spec, _eq7_state(null_index, small_pair, large_pair, moduli, fracs)))
        return records
    if m == 6:
        records = []
        for (j1, j2), frac in product(combinations(range(5), 2), D5_M6_PHASES):
            spec = OptimalFamilySpec(
                dim=5,
                m=6,
                labels=full_set_labels(5),
                parameters=(("j1", j1), ("j2", j2), ("phase_pi", str(frac))),
            )
            records.append((spec, two_term_state(5, j1, j2, _pi(frac))))
        return records
    raise SelectionError(f"no d=5 optimal-state family for m={m}; expected m in 3..6")


def optimal_states_d5(m: int) -> list[PureState]:
    """d=5 optimizers: the 15 eigenstates of an m=3 class1 triple (A, B, C);
    the refined one-null-coefficient families for m=4 (set ABCD) and m=5
    (ABCDE), 50 states each; the odd-fifth-phase two-term superpositions
    for the complete set (m=6)."""
    return [state for _, state in d5_family_records(m)]


# --- shared catalog --------------------------------------------------------


def catalog_states(dim: int, labels: Sequence[str]) -> list[PureState]:
    """Known closed-form optimizers for a (dim, labels) cell; empty when the
    catalog has none (for example class2 d=5 triples, whose optimizers the
    catalog only certifies through minimization)."""
    key = _sorted_key(labels)
    m = len(key)
    if m == 2:
        full = build_full_mub_set(dim)
        return [full.basis(l).column(j) for l in key for j in range(dim)]
    if dim == 3:
        return optimal_states_d3()
    if dim == 4:
        if m == 3:
            return (
                optimal_states_d4_with_A(key) if "A" in key else optimal_states_d4_without_A(key)
            )
        if m == 4:
            return optimal_states_d4_quadruple(key)
        if m == 5:
            return _d4_all_triple_states()
    if dim == 5:
        if m == 3:
            from .minimizer import D5_TRIPLE_CLASSES

            if D5_TRIPLE_CLASSES.get(tuple(key)) == "class1":
                full = build_full_mub_set(5)
                return [full.basis(l).column(j) for l in key for j in range(5)]
            return []
        if m == 4:
            return optimal_states_d5(4) if key == "ABCD" else []
        if m == 5:
            return optimal_states_d5(5) if key == "ABCDE" else []
        if m == 6:
            return optimal_states_d5(6)
    return []


def family_records(dim: int, labels: Sequence[str]) -> list[tuple[OptimalFamilySpec, PureState]]:
    """Parameter records of the catalog family for a cell, for JSON export."""
    key = _sorted_key(labels)
    m = len(key)
    if dim == 3 and m in (3, 4):
        return d3_family_records()
    if dim == 4 and m == 3:
        return d4_with_a_records(key) if "A" in key else d4_without_a_records(key)
    if dim == 5 and m in (3, 4, 5, 6):
        return d5_family_records(m)
    specless = catalog_states(dim, labels)
    return [
        (
            OptimalFamilySpec(dim=dim, m=m, labels=tuple(key), parameters=(("member", i),)),
            state,
        )
        for i, state in enumerate(specless)
    ]


def records_to_json_payload(records) -> list[dict]:
    return [
        {
            "dim": spec.dim,
            "m": spec.m,
            "labels": list(spec.labels),
            "parameters": {k: (list(v) if isinstance(v, tuple) else v) for k, v in spec.parameters},
            "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
        }
        for spec, state in records
    ]


# --- eigenstate categories ---------------------------------------------------


def internal_eigenstates(mub_set: MubSet) -> list[tuple[str, PureState]]:
    """Eigenstates of the bases inside the set, tagged label+index."""
    return [
        (f"{basis.label}{j}", basis.column(j))
        for basis in mub_set.bases
        for j in range(mub_set.dim)
    ]


def external_eigenstates(mub_set: MubSet) -> list[tuple[str, PureState]]:
    """Eigenstates of the complete-set bases outside the set."""
    full = build_full_mub_set(mub_set.dim)
    inside = set(mub_set.labels)
    return [
        (f"{basis.label}{j}", basis.column(j))
        for basis in full.bases
        if basis.label not in inside
        for j in range(mub_set.dim)
    ]


# --- refinement --------------------------------------------------------------

REFINE_WINDOW = 0.05


def refine_optimal_state(
    candidate: PureState,
    mub_set: MubSet,
    tol: float = 1e-10,
    variant: str | None = None,
) -> PureState:
    """Polish a near-optimal state by local descent until the accepted step
    shrinks below tol. The candidate must start within 0.05 bits of the cell
    bound and the result must stay in its neighborhood (fidelity >= 0.99)."""
    start_sum = float(
        batch_entropy_sums(candidate.amplitudes[None, :], _stacked_measurement(mub_set))[0]
    )
    bound = _resolve_bound(mub_set.dim, mub_set.size, variant, start_sum)
    if abs(start_sum - bound.value) > REFINE_WINDOW:
        raise RefinementRejectedError(
            f"candidate entropy sum {start_sum:.6f} is {abs(start_sum - bound.value):.6f} bits "
            f"from the bound {bound.value:.6f}; refinement accepts at most {REFINE_WINDOW}"
        )
    config = MinimizationConfig(
        restarts=1, max_iterations=20000, step_tolerance=min(tol, 1e-10), value_tolerance=1e-9
    )
    x0 = state_parameters(candidate)
    outcome = _descend(x0[None, :], _stacked_measurement(mub_set), config)
    if float(np.max(np.abs(outcome.params[0] - x0))) <= 1e-9:
        return candidate
    refined = parametrize_state(outcome.params[0])
    if refined.fidelity(candidate) < 0.99:
        raise RefinementRejectedError(
            "local descent left the candidate's neighborhood (fidelity < 0.99)"
        )
    return refined


# --- d=5 family reconstruction ----------------------------------------------


def _pair_structures():
    indices = list(range(5))
    for null_index in indices:
        rest = [j for j in indices if j != null_index]
        anchor = rest[0]
        for partner in rest[1:]:
            pair1 = (anchor, partner)
            pair2 = tuple(j for j in rest if j not in pair1)
            for small, large in ((pair1, pair2), (pair2, pair1)):
                yield null_index, small, large


def reconstruct_d5_family(
    m: int,
    config: MinimizationConfig | None = None,
    capture_window: float = 0.02,
) -> list[dict]:
    """Rebuild the refined d=5 m=4 or m=5 family from the quoted two-decimal
    moduli and the pi/5 phase grid.

    Enumerates every admissible assignment (null position, modulus pairing,
    relative phases on the pi/5 grid), keeps the grid states near the
    certified minimum, refines one representative per fidelity cluster, and
    returns the refined parameter records. This is the procedure that froze
    D5_M4_MEMBERS and D5_M5_MEMBERS (50 members each); kept callable for
    audits.
    """
    if m not in (4, 5):
        raise SelectionError("only the m=4 and m=5 families are reconstructed from the grid")
    printed_moduli = (0.19, 0.68) if m == 4 else (0.11, 0.70)
    labels = full_set_labels(5)[:m]
    mub_set = select_subset(build_full_mub_set(5), labels)
    stacked = _stacked_measurement(mub_set)

    certified = minimize_entropy_sum(
        mub_set, config=config, include_catalog_warm_starts=False
    )

    grid = [Fraction(k, 5) for k in range(10)]  # relative phases: k*pi/5 around the circle
    structures = list(_pair_structures())
    states = []
    params = []
    for null_index, small_pair, large_pair in structures:
        for fracs in product(grid, repeat=3):
            full_fracs = (Fraction(0, 1),) + fracs
            params.append((null_index, small_pair, large_pair, full_fracs))
            states.append(
                _eq7_state(null_index, small_pair, large_pair, printed_moduli, full_fracs)
            )
    amps = np.vstack([s.amplitudes for s in states])
    sums = batch_entropy_sums(amps, stacked)

    keep = np.where(sums <= certified.min_value + capture_window)[0]
    keep = keep[np.argsort(sums[keep], kind="stable")]

    clusters: list[dict] = []
    for idx in keep:
        state = states[idx]
        if any(state.fidelity(c["state"]) > 0.999 for c in clusters):
            continue
        clusters.append({"state": state, "params": params[idx], "grid_sum": float(sums[idx])})

    results = []
    for cluster in clusters:
        refined = refine_optimal_state(cluster["state"], mub_set)
        refined_sum = float(batch_entropy_sums(refined.amplitudes[None, :], stacked)[0])
        if refined_sum > certified.min_value + 1e-6:
            continue
        if any(refined.fidelity(r["state"]) > 0.9999 for r in results):
            continue
        null_index, small_pair, large_pair, fracs = cluster["params"]
        moduli = np.sort(np.unique(np.round(refined.moduli, 12)))
        results.append(
            {
                "state": refined,
                "null_index": null_index,
                "small_pair": small_pair,
                "large_pair": large_pair,
                "grid_phases": fracs,
                "refined_sum": refined_sum,
                "refined_moduli": moduli,
                "certified_min": certified.min_value,
            }
        )
    return results
