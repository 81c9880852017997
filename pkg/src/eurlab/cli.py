"""Command-line surface: MUB verification, bound certification, triple
classification, synthetic-experiment datasets and the fast self-test.

Exit codes: 0 success, 2 bound or validity violation, 3 non-convergence,
4 I/O or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from . import __version__
from .entropy import born_probabilities, bound_lookup, entropy_sum, shannon_entropy
from .exceptions import (
    BoundViolationError,
    ClassificationAmbiguousError,
    ConfigError,
    EurlabError,
    NonConvergenceError,
)
from .minimizer import (
    D5_TRIPLE_CLASSES,
    MinimizationConfig,
    minimize_entropy_sum,
    variant_for_minimum,
)
from .optstates import (
    catalog_states,
    external_eigenstates,
    family_records,
    internal_eigenstates,
    records_to_json_payload,
)
from .povmsim import (
    DEFAULT_RESAMPLES,
    DEFAULT_SHOTS,
    apply_povm,
    build_crosstalk_povm,
    estimate_entropy,
    monte_carlo_spread_sum,
    predicted_entropy_sum,
    simulate_counts,
)
from .qstate import (
    Basis,
    MubSet,
    build_full_mub_set,
    check_mutually_unbiased,
    full_set_labels,
    random_state,
    select_subset,
)

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_NO_CONVERGENCE = 3
EXIT_CONFIG = 4

CATEGORIES = ("optimal", "internal", "external", "random")

CSV_COLUMNS = (
    ["state_id", "category", "dim", "labels"]
    + [f"H_{l}" for l in "ABCDEF"]
    + [
        "sum",
        "bound",
        "gap",
        "predicted_sum",
        "est_sum",
        "spread_low",
        "spread_high",
        "seed",
        "version",
        "config_hash",
    ]
)


@dataclass(frozen=True)
class RunConfig:
    """Resolved configuration of one evaluate run."""

    dim: int
    labels: tuple[str, ...]
    categories: tuple[str, ...]
    shots: int | None
    epsilons: tuple[float, ...] | None
    seed: int
    n_random: int
    output_format: str
    output_path: str
    resamples: int = DEFAULT_RESAMPLES

    def __post_init__(self):
        if not self.categories:
            raise ConfigError("at least one state category is required")
        for cat in self.categories:
            if cat not in CATEGORIES:
                raise ConfigError(f"unknown category {cat!r}; expected one of {CATEGORIES}")
        if self.shots is not None and self.shots < 1:
            raise ConfigError("shots must be >= 1")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.n_random < 0:
            raise ConfigError("n-random must be >= 0")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")

    def hash(self) -> str:
        blob = "\n".join(
            f"{k}={getattr(self, k)!r}"
            for k in (
                "dim",
                "labels",
                "categories",
                "shots",
                "epsilons",
                "seed",
                "n_random",
                "output_format",
                "resamples",
            )
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _derived_seed(*parts: int) -> int:
    """Deterministic child seed for independent sampling streams."""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1, np.uint64)[0])


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def _parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("_", "-")] = value.strip()
    return values


_FILE_KEYS = {
    "dim",
    "labels",
    "categories",
    "shots",
    "epsilon",
    "seed",
    "restarts",
    "format",
    "out",
    "n-random",
    "variant",
}


def _setting(args, name: str, file_values: dict[str, str], default=None):
    """Flag value if given, else config-file value, else default."""
    flag = getattr(args, name.replace("-", "_"), None)
    if flag is not None:
        return flag
    if name in file_values:
        return file_values[name]
    return default


def _resolve_seed(args, file_values) -> int:
    value = _setting(args, "seed", file_values)
    if value is None:
        value = os.environ.get("EURLAB_SEED")
    if value is None:
        return 0
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid seed {value!r}") from exc


def _resolve_int(args, name, file_values, default):
    value = _setting(args, name, file_values, default)
    if value is None:
        return None
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid integer for {name}: {value!r}") from exc


def _resolve_labels(args, file_values, dim: int) -> tuple[str, ...]:
    raw = _setting(args, "labels", file_values)
    if raw is None:
        return full_set_labels(dim)
    labels = tuple(str(raw).replace(",", "").strip().upper())
    allowed = set(full_set_labels(dim))
    for l in labels:
        if l not in allowed:
            raise ConfigError(f"label {l!r} is not valid for dimension {dim}")
    if len(set(labels)) != len(labels):
        raise ConfigError(f"duplicate labels in {raw!r}")
    return labels


def _resolve_epsilons(args, file_values, n_bases: int) -> tuple[float, ...] | None:
    raw = getattr(args, "epsilon", None)
    if raw is None and "epsilon" in file_values:
        raw = [v for v in file_values["epsilon"].replace(",", " ").split()]
    if raw is None:
        return None
    try:
        eps = tuple(float(v) for v in raw)
    except ValueError as exc:
        raise ConfigError(f"invalid epsilon values {raw!r}") from exc
    if len(eps) == 1:
        eps = eps * n_bases
    if len(eps) != n_bases:
        raise ConfigError(f"got {len(eps)} epsilon values for {n_bases} bases")
    for e in eps:
        if not 0.0 <= e < 1.0:
            raise ConfigError(f"epsilon {e} outside [0, 1)")
    return eps


def _set_variant(mub_set: MubSet, explicit: str | None) -> str | None:
    """Bound variant for a set: explicit flag, else the shipped triple
    classification for d=5 triples, else None (unique cells)."""
    if explicit is not None:
        return explicit
    if mub_set.dim == 5 and mub_set.size == 3:
        key = tuple(sorted(mub_set.labels))
        if key in D5_TRIPLE_CLASSES:
            return D5_TRIPLE_CLASSES[key]
        raise ConfigError(
            f"no shipped classification for triple {''.join(mub_set.labels)}; pass --variant"
        )
    return None


# --- verify-mubs -------------------------------------------------------------


def cmd_verify_mubs(args, file_values) -> int:
    dim = _resolve_int(args, "dim", file_values, None)
    if dim is None:
        raise ConfigError("--dim is required for verify-mubs")
    bases = list(build_full_mub_set(dim).bases)
    if args.override:
        try:
            data = json.loads(Path(args.override).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read override file: {exc}") from exc
        replacement = Basis.from_dict(data)
        bases = [replacement if b.label == replacement.label else b for b in bases]
        print(f"override: basis {replacement.label} loaded from {args.override}")

    worst_unitarity = 0.0
    for b in bases:
        dev = float(np.max(np.abs(b.matrix.conj().T @ b.matrix - np.eye(dim))))
        worst_unitarity = max(worst_unitarity, dev)
    failures = []
    worst_pair, worst_dev = None, 0.0
    n_pairs = 0
    for b1, b2 in combinations(bases, 2):
        result = check_mutually_unbiased(b1, b2)
        n_pairs += 1
        if result.max_deviation > worst_dev:
            worst_pair, worst_dev = (b1.label, b2.label), result.max_deviation
        if not result.unbiased:
            failures.append((b1.label, b2.label, result.max_deviation))
        if args.verbose:
            print(
                f"pair {b1.label}{b2.label}: max | |overlap| - 1/sqrt({dim}) | = {result.max_deviation:.3e}"
            )
    print(f"checked {n_pairs} pairs in dimension {dim}")
    print(f"worst unitarity deviation: {worst_unitarity:.3e}")
    print(f"worst unbiasedness deviation: {worst_dev:.3e} (pair {''.join(worst_pair)})")
    if failures:
        for l1, l2, dev in failures:
            print(f"FAIL: pair {l1}{l2} deviates by {dev:.3e}")
        return EXIT_VIOLATION
    print("all pairs mutually unbiased")
    return EXIT_OK


# --- certify -----------------------------------------------------------------


def _certify_cell(dim, labels, config, variant):
    mub_set = select_subset(build_full_mub_set(dim), labels)
    certified = minimize_entropy_sum(mub_set, config=config, variant=variant)
    return certified


def cmd_certify(args, file_values) -> int:
    seed = _resolve_seed(args, file_values)
    restarts = _resolve_int(args, "restarts", file_values, MinimizationConfig.restarts)
    config = MinimizationConfig(restarts=restarts, seed=seed)
    out = _setting(args, "out", file_values)

    if args.all:
        report = {"version": __version__, "seed": seed, "cells": []}
        cells: list[tuple[int, str, str | None]] = []
        for dim in (3, 4, 5):
            labels = full_set_labels(dim)
            for m in range(2, dim + 2):
                if (dim, m) == (5, 3):
                    cells.append((5, "ABC", "class1"))
                    cells.append((5, "ABD", "class2"))
                else:
                    cells.append((dim, "".join(labels[:m]), None))
        ok = True
        for dim, labels, variant in cells:
            certified = _certify_cell(dim, tuple(labels), config, variant)
            within = abs(certified.catalog_gap) <= certified.bound.saturation_tol
            ok = ok and within
            print(
                f"d={dim} m={certified.m} {labels}: certified {certified.min_value:.6f} "
                f"catalog {certified.bound.value:.6f} ({certified.bound.variant}) "
                f"gap {certified.catalog_gap:+.2e} [{'ok' if within else 'OUT OF TOLERANCE'}]"
            )
            report["cells"].append(certified.to_dict())
        if out:
            Path(out).write_text(json.dumps(report, indent=2) + "\n")
            print(f"wrote {out}")
        return EXIT_OK if ok else EXIT_VIOLATION

    dim = _resolve_int(args, "dim", file_values, None)
    if dim is None:
        raise ConfigError("--dim is required for certify")
    labels = _resolve_labels(args, file_values, dim)
    variant = _setting(args, "variant", file_values)
    certified = _certify_cell(dim, labels, config, variant)
    print(
        f"certified minimum over {''.join(labels)}: {certified.min_value:.9f} bits\n"
        f"catalog value: {certified.bound.value:.9f} ({certified.bound.variant})\n"
        f"gap: {certified.catalog_gap:+.3e} (cell tolerance {certified.bound.saturation_tol})\n"
        f"restarts within value tolerance of best: {certified.restarts_converged}"
    )
    if out:
        Path(out).write_text(json.dumps(certified.to_dict(), indent=2) + "\n")
        print(f"wrote {out}")
    return EXIT_OK if abs(certified.catalog_gap) <= certified.bound.saturation_tol else EXIT_VIOLATION


# --- classify-triples --------------------------------------------------------


def cmd_classify_triples(args, file_values) -> int:
    seed = _resolve_seed(args, file_values)
    restarts = _resolve_int(args, "restarts", file_values, MinimizationConfig.restarts)
    config = MinimizationConfig(restarts=restarts, seed=seed)
    full = build_full_mub_set(5)
    raw = _setting(args, "labels", file_values)
    triples = (
        [tuple(str(raw).upper())] if raw is not None else list(combinations(full.labels, 3))
    )
    results = {}
    for combo in triples:
        certified = minimize_entropy_sum(select_subset(full, combo), config=config)
        tag = variant_for_minimum(certified.min_value)
        results["".join(combo)] = (tag, certified.min_value)
        print(f"{''.join(combo)}: {tag} (certified minimum {certified.min_value:.6f})")
    n1 = sum(1 for tag, _ in results.values() if tag == "class1")
    print(f"classified {len(results)} triples: {n1} class1, {len(results) - n1} class2")
    out = _setting(args, "out", file_values)
    if out:
        payload = {t: {"class": tag, "min_value": mv} for t, (tag, mv) in results.items()}
        Path(out).write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {out}")
    return EXIT_OK


# --- evaluate ----------------------------------------------------------------


def _gather_states(config: RunConfig, mub_set: MubSet) -> list[tuple[str, str, object]]:
    rows = []
    if "optimal" in config.categories:
        states = catalog_states(config.dim, config.labels)
        if not states:
            print(
                f"note: no catalog optimal states for {''.join(config.labels)}; "
                "optimal rows omitted",
                file=sys.stderr,
            )
        rows.extend((f"opt{i}", "optimal", s) for i, s in enumerate(states))
    if "internal" in config.categories:
        rows.extend((tag, "internal", s) for tag, s in internal_eigenstates(mub_set))
    if "external" in config.categories:
        rows.extend((tag, "external", s) for tag, s in external_eigenstates(mub_set))
    if "random" in config.categories:
        rows.extend(
            (f"rnd{i}", "random", random_state(config.dim, config.seed + i))
            for i in range(config.n_random)
        )
    return rows


def evaluate_dataset(config: RunConfig) -> list[dict]:
    """Rows of the synthetic-experiment dataset for one run configuration."""
    mub_set = select_subset(build_full_mub_set(config.dim), config.labels)
    variant = _set_variant(mub_set, None) if (config.dim, len(config.labels)) == (5, 3) else None
    config_hash = config.hash()
    rows = []
    for state_index, (state_id, category, state) in enumerate(_gather_states(config, mub_set)):
        report = entropy_sum(state, mub_set, variant=variant, state_id=state_id)
        row = {
            "state_id": state_id,
            "category": category,
            "dim": config.dim,
            "labels": "".join(config.labels),
            "sum": report.sum,
            "bound": report.bound.value,
            "gap": report.saturation_gap,
            "predicted_sum": None,
            "est_sum": None,
            "spread_low": None,
            "spread_high": None,
            "seed": config.seed,
            "version": __version__,
            "config_hash": config_hash,
        }
        for label in "ABCDEF":
            row[f"H_{label}"] = None
        for label, h in report.entries:
            row[f"H_{label}"] = h

        if config.epsilons is not None:
            predicted = predicted_entropy_sum(
                state, mub_set, config.epsilons, variant=variant, state_id=state_id
            )
            row["predicted_sum"] = predicted.sum

        if config.shots is not None:
            records = []
            for basis_index, basis in enumerate(mub_set.bases):
                if config.epsilons is not None:
                    probs = apply_povm(
                        state, build_crosstalk_povm(basis, config.epsilons[basis_index])
                    )
                else:
                    probs = born_probabilities(state, basis)
                records.append(
                    simulate_counts(
                        probs, config.shots, _derived_seed(config.seed, 1, state_index, basis_index)
                    )
                )
            row["est_sum"] = float(np.sum([estimate_entropy(r) for r in records]))
            spread = monte_carlo_spread_sum(
                records, config.resamples, _derived_seed(config.seed, 2, state_index)
            )
            row["spread_low"] = spread.low
            row["spread_high"] = spread.high
        rows.append(row)
    return rows


def _write_rows(config: RunConfig, rows: list[dict]) -> None:
    path = Path(config.output_path)
    if config.output_format == "json":
        payload = {
            "provenance": {
                "seed": config.seed,
                "version": __version__,
                "config_hash": config.hash(),
            },
            "rows": rows,
        }
        path.write_text(json.dumps(payload, indent=2) + "\n")
        return
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row["state_id"],
                    row["category"],
                    row["dim"],
                    row["labels"],
                ]
                + [_fmt(row[f"H_{l}"]) for l in "ABCDEF"]
                + [
                    _fmt(row["sum"]),
                    _fmt(row["bound"]),
                    _fmt(row["gap"]),
                    _fmt(row["predicted_sum"]),
                    _fmt(row["est_sum"]),
                    _fmt(row["spread_low"]),
                    _fmt(row["spread_high"]),
                    row["seed"],
                    row["version"],
                    row["config_hash"],
                ]
            )


def cmd_evaluate(args, file_values) -> int:
    dim = _resolve_int(args, "dim", file_values, None)
    if dim is None:
        raise ConfigError("--dim is required for evaluate")
    labels = _resolve_labels(args, file_values, dim)
    raw_categories = _setting(args, "categories", file_values, ",".join(CATEGORIES))
    categories = tuple(c.strip() for c in str(raw_categories).split(",") if c.strip())
    shots = _resolve_int(args, "shots", file_values, None)
    out = _setting(args, "out", file_values)
    if out is None:
        raise ConfigError("--out is required for evaluate")
    fmt = _setting(args, "format", file_values, "csv")
    config = RunConfig(
        dim=dim,
        labels=labels,
        categories=categories,
        shots=shots,
        epsilons=_resolve_epsilons(args, file_values, len(labels)),
        seed=_resolve_seed(args, file_values),
        n_random=_resolve_int(args, "n-random", file_values, 100),
        output_format=str(fmt),
        output_path=str(out),
    )
    parent = Path(config.output_path).resolve().parent
    if not parent.is_dir() or not os.access(parent, os.W_OK):
        raise ConfigError(f"output directory {parent} is not writable")
    rows = evaluate_dataset(config)
    _write_rows(config, rows)
    print(f"wrote {len(rows)} rows to {config.output_path}")
    return EXIT_OK


# --- state-catalog -----------------------------------------------------------


def cmd_state_catalog(args, file_values) -> int:
    dim = _resolve_int(args, "dim", file_values, None)
    if dim is None:
        raise ConfigError("--dim is required for state-catalog")
    labels = _resolve_labels(args, file_values, dim)
    payload = records_to_json_payload(family_records(dim, labels))
    text = json.dumps(payload, indent=2)
    out = _setting(args, "out", file_values)
    if out:
        Path(out).write_text(text + "\n")
        print(f"wrote {len(payload)} catalog states to {out}")
    else:
        print(text)
    return EXIT_OK


# --- selftest ----------------------------------------------------------------


def _selftest_checks(verbose: bool):
    for dim in (3, 4, 5):
        full = build_full_mub_set(dim)
        for b1, b2 in combinations(full.bases, 2):
            result = check_mutually_unbiased(b1, b2)
            yield (
                f"d={dim} pair {b1.label}{b2.label} unbiased",
                result.unbiased,
                f"deviation {result.max_deviation:.3e}",
            )
    # saturation of every Table-I cell by the catalog optimal states
    for dim in (3, 4, 5):
        full = build_full_mub_set(dim)
        for m in range(2, dim + 2):
            for labels in combinations(full.labels, m):
                variant = None
                if (dim, m) == (5, 3):
                    variant = D5_TRIPLE_CLASSES[tuple(sorted(labels))]
                    if variant == "class2":
                        continue  # no closed-form catalog family; certified via minimizer
                states = catalog_states(dim, labels)
                if not states:
                    continue
                sub = select_subset(full, labels)
                bound = bound_lookup(dim, m, variant)
                worst = max(
                    abs(entropy_sum(s, sub, variant=variant).saturation_gap) for s in states
                )
                yield (
                    f"d={dim} m={m} {''.join(labels)} catalog saturation ({len(states)} states, "
                    f"bound {bound.value:.4f})",
                    worst <= bound.saturation_tol,
                    f"worst |gap| {worst:.3e} vs tolerance {bound.saturation_tol}",
                )
    # Maassen-Uffink scan on random states
    for dim in (3, 4, 5):
        full = build_full_mub_set(dim)
        floor = math.log2(dim) - 1e-9
        ok = True
        worst = math.inf
        for i in range(100):
            state = random_state(dim, 90_000 + i)
            entropies = {
                b.label: shannon_entropy(born_probabilities(state, b)) for b in full.bases
            }
            for b1, b2 in combinations(full.bases, 2):
                pair_sum = entropies[b1.label] + entropies[b2.label]
                worst = min(worst, pair_sum)
                ok = ok and pair_sum >= floor
        yield (
            f"d={dim} Maassen-Uffink scan (100 random states, all pairs)",
            ok,
            f"smallest pair sum {worst:.6f} vs log2({dim}) = {math.log2(dim):.6f}",
        )


def cmd_selftest(args, file_values) -> int:
    start = time.time()
    failures = 0
    for name, passed, detail in _selftest_checks(args.verbose):
        if args.verbose or not passed:
            print(f"{'PASS' if passed else 'FAIL'}: {name} ({detail})")
        if not passed:
            failures += 1
    elapsed = time.time() - start
    print(f"selftest: {'ok' if failures == 0 else f'{failures} failures'} in {elapsed:.1f} s")
    return EXIT_OK if failures == 0 else EXIT_VIOLATION


# --- argument parsing ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eurlab",
        description="Entropy-sum uncertainty bounds over mutually unbiased bases in d=3..5.",
    )
    parser.add_argument("--version", action="version", version=f"eurlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, labels=True, seed=True, out=True):
        p.add_argument("--dim", type=int, help="Hilbert-space dimension (3, 4 or 5)")
        if labels:
            p.add_argument("--labels", help="basis labels, e.g. ABC")
        if seed:
            p.add_argument("--seed", type=int, help="seed (fallback: EURLAB_SEED, then 0)")
        if out:
            p.add_argument("--out", help="output file path")
        p.add_argument("--config", help="flat key=value config file; flags override it")
        p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("verify-mubs", help="check unbiasedness and unitarity of a full MUB set")
    add_common(p, labels=False, seed=False, out=False)
    p.add_argument("--override", help="JSON basis file replacing the same-label basis")

    p = sub.add_parser("certify", help="certify a bound by global minimization")
    add_common(p)
    p.add_argument("--restarts", type=int, help="random restarts (default 200)")
    p.add_argument("--variant", choices=["class1", "class2"], help="d=5 triple bound variant")
    p.add_argument("--all", action="store_true", help="certify every Table cell")

    p = sub.add_parser("classify-triples", help="classify d=5 triples into bound classes")
    add_common(p)
    p.add_argument("--restarts", type=int, help="random restarts (default 200)")

    p = sub.add_parser("evaluate", help="write the synthetic-experiment dataset")
    add_common(p)
    p.add_argument("--categories", help="comma list from optimal,internal,external,random")
    p.add_argument("--shots", type=int, help=f"photon counts per measurement (e.g. {DEFAULT_SHOTS})")
    p.add_argument(
        "--epsilon",
        action="append",
        help="cross-talk per basis; repeat per basis or give once to broadcast",
    )
    p.add_argument("--n-random", type=int, help="number of random states (default 100)")
    p.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")

    p = sub.add_parser("state-catalog", help="export a closed-form optimal family as JSON")
    add_common(p, seed=False)

    p = sub.add_parser("selftest", help="fast acceptance subset")
    add_common(p, labels=False, out=False)
    return parser


_COMMANDS = {
    "verify-mubs": cmd_verify_mubs,
    "certify": cmd_certify,
    "classify-triples": cmd_classify_triples,
    "evaluate": cmd_evaluate,
    "state-catalog": cmd_state_catalog,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        file_values = _parse_config_file(args.config) if getattr(args, "config", None) else {}
        for key in file_values:
            if key not in _FILE_KEYS:
                raise ConfigError(f"unknown config file key {key!r}")
        return _COMMANDS[args.command](args, file_values)
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (BoundViolationError, ClassificationAmbiguousError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except EurlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
