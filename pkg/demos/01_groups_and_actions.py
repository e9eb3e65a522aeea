"""Build the supported groups, act on signals, and measure orbit distances."""

import numpy as np

from gspectra import (
    act,
    make_cyclic,
    make_dihedral,
    make_full_octahedral,
    make_octahedral,
    orbit_distance,
    random_signal,
)

for group in [make_cyclic(8), make_dihedral(4), make_octahedral(), make_full_octahedral()]:
    print(f"{group.kind}: order {group.order}, generators {group.generators}")

g = make_cyclic(6)
signal = random_signal(g, seed=0)
print("\nsignal on C_6:", np.round(signal.values, 3))
shifted = act(g, 2, signal)
print("shifted by 2: ", np.round(shifted.values, 3))
print("orbit distance signal vs shifted:", orbit_distance(signal, shifted))

other = random_signal(g, seed=1)
print("orbit distance signal vs unrelated:", round(orbit_distance(signal, other), 4))

d4 = make_dihedral(4)
sig = random_signal(d4, seed=2)
composed = act(d4, 1, act(d4, 4, sig))              # rotate after reflecting
direct = act(d4, int(d4.mult[1, 4]), sig)           # one combined action
print("\naction composition law holds:", np.allclose(composed.values, direct.values))
