"""Acceptance suite: one test per gate criterion, each printing a
PASS/FAIL line.  Run with `pytest tests/test_acceptance.py -v -s`."""

import numpy as np
import pytest

from gspectra import (
    FourierCoefficients,
    GroupSignal,
    NonGenericSignalError,
    RecoveryConfig,
    act,
    avg_pool,
    bench_suite,
    fft_cyclic,
    fit_scaling,
    full_bispectrum,
    generic_signal,
    get_cg,
    gft,
    group_from_kind,
    igft,
    invert,
    irreps_for,
    kronecker_table,
    max_pool,
    orbit_distance,
    random_signal,
    recover_multistart,
    recovery_gradient,
    recovery_loss,
    selection_plan,
    selective_bispectrum,
    triple_correlation,
)
from gspectra.clebsch import verification_residual

OCTA_TABLE = [
    "10000 01000 00100 00010 00001",
    "01000 11110 01111 01100 00100",
    "00100 01111 11110 01100 01000",
    "00010 01100 01100 10011 00010",
    "00001 00100 01000 00010 10000",
]
FULL_OCTA_TABLE = [
    "1000000000 0100000000 0010000000 0001000000 0000100000 0000010000 0000001000 0000000100 0000000010 0000000001",
    "0100000000 1111000000 0111100000 0110000000 0010000000 0000001000 0000011110 0000001111 0000001100 0000000100",
    "0010000000 0111100000 1111000000 0110000000 0100000000 0000000100 0000001111 0000011110 0000001100 0000001000",
    "0001000000 0110000000 0110000000 1001100000 0001000000 0000000010 0000001100 0000001100 0000010011 0000000010",
    "0000100000 0010000000 0100000000 0001000000 1000000000 0000000001 0000000100 0000001000 0000000010 0000010000",
    "0000010000 0000001000 0000000100 0000000010 0000000001 1000000000 0100000000 0010000000 0001000000 0000100000",
    "0000001000 0000011110 0000001111 0000001100 0000000100 0100000000 1111000000 0111100000 0110000000 0010000000",
    "0000000100 0000001111 0000011110 0000001100 0000001000 0010000000 0111100000 1111000000 0110000000 0100000000",
    "0000000010 0000001100 0000001100 0000010011 0000000010 0001000000 0110000000 0110000000 1001100000 0001000000",
    "0000000001 0000000100 0000001000 0000000010 0000010000 0000100000 0010000000 0100000000 0001000000 1000000000",
]


def _setup(kind):
    g = group_from_kind(kind)
    s = irreps_for(g)
    kt = kronecker_table(s)
    return g, s, kt, selection_plan(kt, s)


def _report(name, ok, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"{name} failed: {detail}"


def test_coefficient_counts():
    ok = True
    details = []
    for n in (4, 8, 30, 128):
        _, _, _, plan = _setup(f"cyclic:{n}")
        ok &= plan.scalar_count == n and len(plan.pairs) == n
        details.append(f"C_{n}:{plan.scalar_count}")
    for n in (4, 5, 8, 16):
        _, _, _, plan = _setup(f"dihedral:{n}")
        m = (n - 1) // 2
        ok &= len(plan.pairs) == m + 2
        ok &= plan.scalar_count == 1 + 4 + 16 * m
        details.append(f"D_{n}:{len(plan.pairs)}/{plan.scalar_count}")
    _, _, _, plan = _setup("octahedral")
    ok &= len(plan.pairs) == 4 and plan.scalar_count == 172
    details.append(f"octa:{len(plan.pairs)}/{plan.scalar_count}")
    _, _, _, plan = _setup("full_octahedral")
    ok &= len(plan.pairs) == 6 and plan.scalar_count == 334
    details.append(f"full:{len(plan.pairs)}/{plan.scalar_count}")
    _report("coefficient-counts", ok, " ".join(details))


def test_kronecker_tables_exact():
    octa = kronecker_table(irreps_for(group_from_kind("octahedral"))).binary_rows()
    full = kronecker_table(irreps_for(group_from_kind("full_octahedral"))).binary_rows()
    _report("kronecker-tables", octa == OCTA_TABLE and full == FULL_OCTA_TABLE)


def test_completeness_commutative():
    worst = 0.0
    for kind in ("cyclic:4", "cyclic:8", "cyclic:30", "cyclic:128",
                 "commutative:3x3", "commutative:4x2x2"):
        g, s, kt, plan = _setup(kind)
        for seed in range(100):
            sig = random_signal(g, seed)
            result = invert(selective_bispectrum(gft(sig, s), plan, s, kt))
            rel = orbit_distance(result.signal, sig) / sig.norm()
            worst = max(worst, rel)
    _report("completeness-commutative", worst <= 1e-7,
            f"worst orbit distance {worst:.2e} (600 round trips)")


def test_completeness_noncommutative():
    worst = 0.0
    resolved = {}
    for kind in ("dihedral:4", "dihedral:5", "dihedral:8", "dihedral:16",
                 "octahedral", "full_octahedral"):
        g, s, kt, plan = _setup(kind)
        hits = 0
        for seed in range(25):
            sig = random_signal(g, seed)
            coeffs = gft(sig, s)
            result = invert(selective_bispectrum(coeffs, plan, s, kt))
            base = full_bispectrum(coeffs, s, kt)
            recovered = full_bispectrum(result.fourier, s, kt)
            for pair in base.pairs:
                denom = max(np.linalg.norm(base[pair]), 1e-30)
                worst = max(worst, np.linalg.norm(recovered[pair] - base[pair]) / denom)
            if result.signal is not None and (
                orbit_distance(result.signal, sig) < 1e-5 * sig.norm()
            ):
                hits += 1
        resolved[kind] = hits
    rates = " ".join(f"{k}:{v}/25" for k, v in resolved.items())
    print(f"  factor-resolution success rates (informational): {rates}")
    _report("completeness-noncommutative", worst <= 1e-6,
            f"worst full-bispectrum relative error {worst:.2e}")


def test_invariance_suite():
    worst = 0.0
    kinds = ("cyclic:4", "cyclic:7", "cyclic:16", "commutative:2x2",
             "commutative:4x2", "commutative:2x2x2", "dihedral:4",
             "dihedral:6", "dihedral:8")
    for kind in kinds:
        g, s, kt, plan = _setup(kind)
        assert g.order <= 16
        sig = random_signal(g, 17)
        tc = triple_correlation(sig).values
        coeffs = gft(sig, s)
        full = full_bispectrum(coeffs, s, kt)
        sel = selective_bispectrum(coeffs, plan, s, kt)
        mx, av = max_pool(sig), avg_pool(sig)
        for h in range(g.order):
            moved = act(g, h, sig)
            worst = max(worst, float(np.max(np.abs(triple_correlation(moved).values - tc))))
            moved_coeffs = gft(moved, s)
            full_h = full_bispectrum(moved_coeffs, s, kt)
            sel_h = selective_bispectrum(moved_coeffs, plan, s, kt)
            for pair in full.pairs:
                worst = max(worst, float(np.max(np.abs(full_h[pair] - full[pair]))))
            for pair in sel.pairs:
                worst = max(worst, float(np.max(np.abs(sel_h[pair] - sel[pair]))))
            worst = max(worst, abs(max_pool(moved) - mx), abs(avg_pool(moved) - av))
    _report("invariance-suite", worst <= 1e-9, f"worst deviation {worst:.2e}")


def test_oracle_equivalences():
    # (a) general Clebsch-Gordan form vs scalar closed form
    worst_a = 0.0
    for kind in ("cyclic:8", "cyclic:12", "cyclic:32", "commutative:2x3",
                 "commutative:3x3", "commutative:4x2x2", "commutative:2x2x2"):
        g, s, kt, _ = _setup(kind)
        assert g.order <= 32
        coeffs = gft(random_signal(g, 23), s)
        from gspectra import commutative_bispectrum

        general = full_bispectrum(coeffs, s, kt)
        scalar = commutative_bispectrum(coeffs, s)
        for pair in general.pairs:
            worst_a = max(worst_a, float(np.max(np.abs(general[pair] - scalar[pair]))))
    # (b) fast vs dense transform on every cyclic order
    worst_b = 0.0
    for n in range(2, 257):
        g, s, _, _ = _setup(f"cyclic:{n}")
        sig = random_signal(g, n)
        fast = fft_cyclic(sig, s)
        dense = gft(sig, s)
        for k in range(n):
            worst_b = max(worst_b, abs(fast[f"rho_{k}"][0, 0] - dense[f"rho_{k}"][0, 0]))
    # (c) bispectrum as 2D transform of the triple correlation
    worst_c = 0.0
    for n in range(3, 13):
        g, s, _, _ = _setup(f"cyclic:{n}")
        sig = random_signal(g, n)
        from gspectra import commutative_bispectrum

        bisp = commutative_bispectrum(gft(sig, s), s)
        tc = triple_correlation(sig).values
        grid = np.arange(n)
        for j in range(n):
            for k in range(n):
                kernel = np.exp(-2j * np.pi * (j * grid[:, None] + k * grid[None, :]) / n)
                worst_c = max(worst_c, abs(np.sum(tc * kernel)
                                           - bisp[(f"rho_{j}", f"rho_{k}")][0, 0]))
    ok = worst_a <= 1e-9 and worst_b <= 1e-10 and worst_c <= 1e-8
    _report("oracle-equivalences", ok,
            f"forms {worst_a:.2e} fft {worst_b:.2e} tc-transform {worst_c:.2e}")


def test_clebsch_gordan_contract():
    worst_block = 0.0
    worst_unitary = 0.0
    kinds = ("cyclic:4", "cyclic:8", "commutative:3x3", "commutative:4x2x2",
             "dihedral:4", "dihedral:5", "dihedral:8", "dihedral:16",
             "octahedral", "full_octahedral")
    for kind in kinds:
        g, s, kt, _ = _setup(kind)
        assert g.order <= 48
        for l1 in s.labels:
            for l2 in s.labels:
                decomp = get_cg(s, kt, l1, l2)
                c = decomp.matrix
                worst_unitary = max(worst_unitary, float(np.max(np.abs(
                    c.conj().T @ c - np.eye(c.shape[0])))))
                worst_block = max(worst_block, verification_residual(decomp, s))
    ok = worst_block <= 1e-9 and worst_unitary <= 1e-10
    _report("clebsch-gordan-contract", ok,
            f"block {worst_block:.2e} unitarity {worst_unitary:.2e}")


def test_recovery_experiment():
    g, s, kt, plan = _setup("cyclic:30")
    cfg = RecoveryConfig(seed=0, max_iters=100000, grad_tol=1e-6)
    all_recovered = True
    worst_best = 0.0
    worst_moduli = 0.0
    for t in range(15):
        original = generic_signal(g, 10_000 + t)
        coeffs = gft(original, s)
        target = selective_bispectrum(coeffs, plan, s, kt)
        runs = recover_multistart(target, plan, cfg, restarts=5)
        dists = [orbit_distance(sig, original) / original.norm() for sig, _ in runs]
        best_idx = int(np.argmin(dists))
        best = dists[best_idx]
        worst_best = max(worst_best, best)
        all_recovered &= best < 1e-3
        base = full_bispectrum(coeffs, s, kt)
        rec = full_bispectrum(gft(runs[best_idx][0], s), s, kt)
        for pair in base.pairs:
            denom = max(abs(base[pair][0, 0]), 1.0)
            worst_moduli = max(worst_moduli,
                               abs(abs(rec[pair][0, 0]) - abs(base[pair][0, 0])) / denom)
    # analytic gradient against central differences at a random point
    target = selective_bispectrum(gft(generic_signal(g, 1), s), plan, s, kt)
    point = random_signal(g, 2)
    grad = recovery_gradient(point, target, plan)
    eps = 1e-6
    fd = np.zeros(30)
    for i in range(30):
        up, dn = point.values.copy(), point.values.copy()
        up[i] += eps
        dn[i] -= eps
        fd[i] = (recovery_loss(GroupSignal(g, up), target, plan)
                 - recovery_loss(GroupSignal(g, dn), target, plan)) / (2 * eps)
    grad_rel = float(np.linalg.norm(grad - fd) / np.linalg.norm(fd))
    ok = all_recovered and worst_moduli <= 1e-3 and grad_rel <= 1e-5
    _report("recovery-experiment", ok,
            f"worst best-of-5 {worst_best:.2e}, moduli {worst_moduli:.2e}, "
            f"gradient {grad_rel:.2e}")


def test_scaling_benchmark():
    sizes = [8, 16, 32, 64, 128]
    records = bench_suite("cyclic", sizes, ["tc", "full", "selective_fft"],
                          repeats=5, seed=0)
    tc_records = [r for r in records if r.mode == "tc"]
    tc_slope = fit_scaling(tc_records)
    full_slope = fit_scaling([r for r in records if r.mode == "full"])
    sel_slope = fit_scaling([r for r in records if r.mode == "selective_fft"])
    counts_ok = all(r.scalar_output_count == r.n ** 2 for r in tc_records)
    counts_ok &= all(r.scalar_output_count == r.n
                     for r in records if r.mode == "selective_fft")
    ok = 2.5 <= tc_slope <= 3.5 and (full_slope - sel_slope) >= 0.5 and counts_ok
    _report("scaling-benchmark", ok,
            f"tc slope {tc_slope:.2f}, full {full_slope:.2f}, "
            f"selective_fft {sel_slope:.2f}")


def _zeroed(sig, s, label):
    """Remove one isotypic component, keeping the signal real."""
    coeffs = {k: v.copy() for k, v in gft(sig, s).coeffs.items()}
    group = sig.group
    coeffs[label] = np.zeros_like(coeffs[label])
    if group.family in ("cyclic", "commutative"):
        # also zero the conjugate-mirror coefficient so the signal stays real
        from gspectra.spectra import _commutative_labels

        labels_by_coord, sizes = _commutative_labels(group)
        coord = next(c for c, l in labels_by_coord.items() if l == label)
        mirror = labels_by_coord[tuple((-x) % m for x, m in zip(coord, sizes))]
        coeffs[mirror] = np.zeros_like(coeffs[mirror])
    out = igft(FourierCoefficients(group, coeffs), s)
    return GroupSignal(group, out.values)


def test_non_genericity_paths():
    tested = 0
    for kind in ("cyclic:8", "commutative:3x3", "dihedral:8", "octahedral",
                 "full_octahedral"):
        g, s, kt, plan = _setup(kind)
        base = random_signal(g, 31)
        for rho in s:
            broken = _zeroed(base, s, rho.label)
            with pytest.raises(NonGenericSignalError):
                invert(selective_bispectrum(gft(broken, s), plan, s, kt))
            tested += 1
    _report("non-genericity", True, f"{tested} single-coefficient deletions all raised")
