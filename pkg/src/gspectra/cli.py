"""Command-line front end.

Subcommands:
  compute     triple correlation or a bispectrum of a signal file
  invert      reconstruct a signal from selective coefficients
  recover     gradient-descent recovery experiment, report as JSON
  bench       scaling benchmark, CSV output
  kron-table  print the Kronecker table as binary words
  cg          print a Clebsch-Gordan block layout and residual
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io as gio
from .clebsch import get_cg, verification_residual
from .errors import GSpectraError
from .fourier import gft
from .groups import group_from_kind, orbit_distance
from .inversion import invert
from .irreps import irreps_for, kronecker_table
from .recovery import RecoveryConfig, generic_signal, recover_multistart
from .spectra import (
    commutative_bispectrum,
    full_bispectrum,
    selection_plan,
    selective_bispectrum,
    triple_correlation,
)
from .bench import bench_suite, write_csv


def _cmd_compute(args):
    signal = gio.read_signal(args.signal)
    group = signal.group
    irrep_set = irreps_for(group)
    kt = kronecker_table(irrep_set)
    if args.mode == "tc":
        tc = triple_correlation(signal)
        doc = {"group": group.kind, "mode": "tc",
               "values": [[float(v) for v in row] for row in tc.values]}
    else:
        coeffs = gft(signal, irrep_set)
        if args.mode == "full":
            bisp = full_bispectrum(coeffs, irrep_set, kt)
        elif args.mode == "commutative":
            bisp = commutative_bispectrum(coeffs, irrep_set)
        else:
            plan = selection_plan(kt, irrep_set)
            bisp = selective_bispectrum(coeffs, plan, irrep_set, kt)
        doc = gio.bispectrum_to_json(bisp)
    gio.save_json(args.out, doc)
    print(f"wrote {args.out}")


def _cmd_invert(args):
    bisp = gio.bispectrum_from_json(gio.load_json(args.spectra))
    result = invert(bisp)
    if result.signal is None:
        print("factor resolution failed; no signal emitted", file=sys.stderr)
    else:
        gio.write_signal(args.out, result.signal)
        print(f"wrote {args.out}")
    if args.report:
        report = {
            "residual_imag": result.residual_imag,
            "indeterminacy_note": result.indeterminacy_note,
            "chain_residual": result.chain_residual,
            "condition_numbers": result.condition_numbers,
        }
        gio.save_json(args.report, report)
        print(f"wrote {args.report}")


def _cmd_recover(args):
    group = group_from_kind(args.group)
    irrep_set = irreps_for(group)
    kt = kronecker_table(irrep_set)
    plan = selection_plan(kt, irrep_set)
    cfg = RecoveryConfig(seed=args.seed, max_iters=args.max_iters, grad_tol=1e-6)
    report = {"group": group.kind, "targets": [], "restarts": args.restarts}
    for t in range(args.targets):
        original = generic_signal(group, 10_000 + t)
        target = selective_bispectrum(gft(original, irrep_set), plan, irrep_set, kt)
        runs = recover_multistart(target, plan, cfg, restarts=args.restarts)
        dists = [orbit_distance(sig, original) / original.norm() for sig, _ in runs]
        losses = [trace[-1] for _, trace in runs]
        iters = [len(trace) - 1 for _, trace in runs]
        report["targets"].append({
            "target": t,
            "best_orbit_distance": min(dists),
            "restart_orbit_distances": dists,
            "final_losses": losses,
            "iterations": iters,
            "successes": sum(d < 1e-3 for d in dists),
        })
    gio.save_json(args.out, report)
    print(f"wrote {args.out}")


def _cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",")]
    modes = args.modes.split(",")
    records = bench_suite(args.family, sizes, modes, repeats=args.repeats,
                          seed=args.seed)
    write_csv(args.out, records)
    print(f"wrote {args.out}")


def _cmd_kron_table(args):
    irrep_set = irreps_for(group_from_kind(args.group))
    kt = kronecker_table(irrep_set)
    for row in kt.binary_rows():
        print(row)


def _cmd_cg(args):
    irrep_set = irreps_for(group_from_kind(args.group))
    kt = kronecker_table(irrep_set)
    label1, label2 = args.pair.split(",")
    decomp = get_cg(irrep_set, kt, label1.strip(), label2.strip())
    residual = verification_residual(decomp, irrep_set)
    print(f"pair: {decomp.pair[0]} (x) {decomp.pair[1]}")
    print(f"blocks: {' + '.join(decomp.blocks)}")
    print(f"block dims: {decomp.block_dims}")
    print(f"max verification residual: {residual:.3e}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gspectra")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute a spectrum of a signal file")
    p.add_argument("--mode", choices=("tc", "full", "selective", "commutative"),
                   required=True)
    p.add_argument("--signal", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("invert", help="invert selective coefficients")
    p.add_argument("--spectra", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("recover", help="gradient-descent recovery experiment")
    p.add_argument("--group", required=True)
    p.add_argument("--targets", type=int, default=15)
    p.add_argument("--restarts", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("bench", help="scaling benchmark")
    p.add_argument("--family", required=True)
    p.add_argument("--sizes", required=True)
    p.add_argument("--modes", required=True)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("kron-table", help="print the Kronecker table")
    p.add_argument("--group", required=True)
    p.set_defaults(func=_cmd_kron_table)

    p = sub.add_parser("cg", help="print a Clebsch-Gordan block layout")
    p.add_argument("--group", required=True)
    p.add_argument("--pair", required=True, metavar="rho_i,rho_j")
    p.set_defaults(func=_cmd_cg)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except GSpectraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
