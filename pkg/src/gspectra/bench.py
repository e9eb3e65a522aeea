"""Wall-clock scaling measurements for the pooling modes.

All modes for a given size are timed on the identical random signal; a
warmup call precedes the timed repeats.  Timings use the monotonic
high-resolution clock, and slope fits run on log(time) against log(|G|).
Absolute times are machine specific; only the asymptotic ordering is
meaningful.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .fourier import fft_cyclic, gft
from .groups import group_from_kind, random_signal
from .irreps import irreps_for, kronecker_table
from .spectra import (
    avg_pool,
    commutative_bispectrum,
    full_bispectrum,
    max_pool,
    selection_plan,
    selective_bispectrum,
    triple_correlation,
)

MODES = ("tc", "full", "selective", "selective_fft", "max", "avg")


@dataclass(frozen=True)
class BenchRecord:
    family: str
    n: int
    mode: str
    mean_seconds: float
    std_seconds: float
    median_seconds: float
    repeats: int
    scalar_output_count: int


def _make_group(family: str, n: int):
    if family == "cyclic":
        return group_from_kind(f"cyclic:{n}")
    if family == "dihedral":
        return group_from_kind(f"dihedral:{n}")
    if family in ("octahedral", "full_octahedral"):
        return group_from_kind(family)
    raise InvalidParameterError(f"unsupported bench family {family!r}")


def _mode_runner(group, mode, irrep_set, kt, plan):
    if mode == "tc":
        return lambda sig: triple_correlation(sig), group.order ** 2
    if mode == "full":
        if group.family == "cyclic":
            return (lambda sig: commutative_bispectrum(gft(sig, irrep_set), irrep_set),
                    group.order ** 2)
        return (lambda sig: full_bispectrum(gft(sig, irrep_set), irrep_set, kt),
                sum(
                    (a * b) ** 2
                    for a in irrep_set.dims for b in irrep_set.dims
                ))
    if mode == "selective":
        return (lambda sig: selective_bispectrum(gft(sig, irrep_set), plan, irrep_set, kt),
                plan.scalar_count)
    if mode == "selective_fft":
        if group.family != "cyclic":
            raise InvalidParameterError("selective_fft is only defined on cyclic groups")
        return (lambda sig: selective_bispectrum(fft_cyclic(sig, irrep_set), plan,
                                                 irrep_set, kt),
                plan.scalar_count)
    if mode == "max":
        return (lambda sig: max_pool(sig)), 1
    if mode == "avg":
        return (lambda sig: avg_pool(sig)), 1
    raise InvalidParameterError(f"unknown mode {mode!r}")


def bench_suite(family: str, sizes, modes, repeats: int = 5, seed: int = 0):
    """Time each mode on each size; returns a list of BenchRecord."""
    if repeats < 3:
        raise InvalidParameterError("repeats must be at least 3")
    records = []
    for n in sizes:
        group = _make_group(family, n)
        irrep_set = irreps_for(group)
        kt = kronecker_table(irrep_set)
        plan = selection_plan(kt, irrep_set)
        signal = random_signal(group, seed)
        for mode in modes:
            if mode not in MODES:
                raise InvalidParameterError(f"unknown mode {mode!r}")
            run, out_count = _mode_runner(group, mode, irrep_set, kt, plan)
            run(signal)  # warmup, excluded
            times = []
            for _ in range(repeats):
                t0 = time.perf_counter()
                run(signal)
                times.append(time.perf_counter() - t0)
            times = np.array(times)
            records.append(BenchRecord(
                family=family,
                n=group.order,
                mode=mode,
                mean_seconds=float(times.mean()),
                std_seconds=float(times.std()),
                median_seconds=float(np.median(times)),
                repeats=repeats,
                scalar_output_count=int(out_count),
            ))
    return records


def fit_scaling(records) -> float:
    """Least-squares slope of log(median time) against log(|G|) for the
    records of one mode."""
    records = list(records)
    if len(records) < 4:
        raise InvalidParameterError("need at least 4 sizes to fit a slope")
    ns = np.array([r.n for r in records], dtype=float)
    if ns.max() / ns.min() < 8.0:
        raise InvalidParameterError("sizes must span at least an 8x range")
    ts = np.array([r.median_seconds for r in records], dtype=float)
    slope, _ = np.polyfit(np.log(ns), np.log(ts), 1)
    return float(slope)


def write_csv(path, records):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([
            "family", "n", "mode", "mean_seconds", "std_seconds",
            "median_seconds", "repeats", "scalar_output_count",
        ])
        for r in records:
            writer.writerow([
                r.family, r.n, r.mode,
                f"{r.mean_seconds:.9f}", f"{r.std_seconds:.9f}",
                f"{r.median_seconds:.9f}", r.repeats, r.scalar_output_count,
            ])
