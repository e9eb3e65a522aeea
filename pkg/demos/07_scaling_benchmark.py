"""Measured scaling of the pooling modes on cyclic groups."""

from gspectra import bench_suite, fit_scaling

sizes = [8, 16, 32, 64, 128]
modes = ["tc", "full", "selective", "selective_fft", "max"]
records = bench_suite("cyclic", sizes, modes, repeats=5, seed=0)

print(f"{'mode':14s}" + "".join(f"{n:>11d}" for n in sizes) + "      slope")
for mode in modes:
    rows = [r for r in records if r.mode == mode]
    slope = fit_scaling(rows)
    times = "".join(f"{r.median_seconds * 1e3:10.3f}m" for r in rows)
    print(f"{mode:14s}{times}   {slope:8.2f}")

print("\noutput scalar counts (per signal):")
for mode in modes:
    rows = [r for r in records if r.mode == mode]
    print(f"  {mode:14s}" + "".join(f"{r.scalar_output_count:>11d}" for r in rows))
