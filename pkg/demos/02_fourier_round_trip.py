"""Transform, invert, and check equivariance on several groups."""

import numpy as np

from gspectra import (
    check_equivariance,
    fft_cyclic,
    gft,
    group_from_kind,
    igft,
    irreps_for,
    plancherel_gap,
    random_signal,
)

for kind in ["cyclic:8", "dihedral:4", "octahedral"]:
    group = group_from_kind(kind)
    irreps = irreps_for(group)
    sig = random_signal(group, seed=3)
    coeffs = gft(sig, irreps)
    back = igft(coeffs, irreps)
    print(f"{kind}: round-trip error {np.max(np.abs(back.values - sig.values)):.2e}, "
          f"Plancherel gap {plancherel_gap(sig, coeffs, irreps):.2e}")
    worst = max(check_equivariance(sig, h, irreps) for h in range(group.order))
    print(f"  worst equivariance deviation over all shifts: {worst:.2e}")

g128 = group_from_kind("cyclic:128")
s128 = irreps_for(g128)
sig = random_signal(g128, seed=4)
fast = fft_cyclic(sig, s128)
dense = gft(sig, s128)
gap = max(abs(fast[f"rho_{k}"][0, 0] - dense[f"rho_{k}"][0, 0]) for k in range(128))
print(f"\ncyclic:128 fast vs dense transform gap: {gap:.2e}")
