"""Forward and inverse Fourier transforms on finite groups.

The forward transform maps a signal to one matrix coefficient per irrep,
F_rho = sum_g signal(g) rho(g)^dagger.  Inversion uses the
dimension-weighted trace formula signal(g) = (1/|G|) sum_rho d_rho
Tr(rho(g) F_rho), which is pinned by a Plancherel consistency test.
Cyclic groups get a radix-2 fast path for power-of-two orders.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IncompleteInputError, InvalidParameterError
from .groups import FiniteGroup, GroupSignal, act
from .irreps import IrrepSet


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class FourierCoefficients:
    """One complex d x d matrix per irrep, keyed by irrep label."""

    group: FiniteGroup
    coeffs: dict  # label -> (d, d) complex ndarray

    def __post_init__(self):
        for mat in self.coeffs.values():
            _frozen(mat)

    def __getitem__(self, label: str) -> np.ndarray:
        return self.coeffs[label]

    def __contains__(self, label: str) -> bool:
        return label in self.coeffs


def gft(signal: GroupSignal, irrep_set: IrrepSet) -> FourierCoefficients:
    """Forward transform: F_rho = sum_g signal(g) rho(g)^dagger."""
    if signal.group != irrep_set.group:
        raise InvalidParameterError("signal and irreps live on different groups")
    coeffs = {}
    for rho in irrep_set:
        coeffs[rho.label] = np.einsum(
            "g,gij->ji", signal.values, rho.matrices.conj()
        )
    return FourierCoefficients(signal.group, coeffs)


def igft_complex(coeffs: FourierCoefficients, irrep_set: IrrepSet) -> np.ndarray:
    """Inverse transform without discarding the imaginary part."""
    if coeffs.group != irrep_set.group:
        raise InvalidParameterError("coefficients and irreps live on different groups")
    order = irrep_set.group.order
    out = np.zeros(order, dtype=complex)
    for rho in irrep_set:
        if rho.label not in coeffs:
            raise IncompleteInputError(f"missing Fourier coefficient for {rho.label}")
        out += rho.dim * np.einsum("gij,ji->g", rho.matrices, coeffs[rho.label])
    return out / order


def igft(coeffs: FourierCoefficients, irrep_set: IrrepSet) -> GroupSignal:
    """Inverse transform; any residual imaginary part is dropped (callers
    that need it use igft_complex)."""
    return GroupSignal(irrep_set.group, igft_complex(coeffs, irrep_set).real)


def _radix2(values: np.ndarray) -> np.ndarray:
    """Iterative radix-2 transform, X_k = sum_g x_g exp(-2 pi i k g / n)."""
    n = len(values)
    x = values.astype(complex)
    # bit-reversal permutation
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            x[i], x[j] = x[j], x[i]
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        for start in range(0, n, size):
            top = x[start:start + half].copy()
            bottom = x[start + half:start + size] * twiddle
            x[start:start + half] = top + bottom
            x[start + half:start + size] = top - bottom
        size *= 2
    return x


def fft_cyclic(signal: GroupSignal, irrep_set: IrrepSet) -> FourierCoefficients:
    """Fast transform for cyclic groups: radix-2 when the order is a power
    of two, dense fallback otherwise.  Output matches gft."""
    group = signal.group
    if group.family != "cyclic":
        raise InvalidParameterError("fft_cyclic requires a cyclic group")
    n = group.order
    if n & (n - 1) != 0:
        return gft(signal, irrep_set)
    spectrum = _radix2(signal.values)
    coeffs = {f"rho_{k}": spectrum[k].reshape(1, 1) for k in range(n)}
    return FourierCoefficients(group, coeffs)


def check_equivariance(signal: GroupSignal, h: int, irrep_set: IrrepSet) -> float:
    """max over irreps of || gft(act(h, signal))_rho - gft(signal)_rho rho(h)^dagger ||.

    With the daggered transform kernel, a left translation of the signal
    right-multiplies each coefficient by rho(h)^dagger."""
    group = signal.group
    before = gft(signal, irrep_set)
    after = gft(act(group, h, signal), irrep_set)
    dev = 0.0
    for rho in irrep_set:
        delta = after[rho.label] - before[rho.label] @ rho.matrices[h].conj().T
        dev = max(dev, float(np.max(np.abs(delta))))
    return dev


def plancherel_gap(signal: GroupSignal, coeffs: FourierCoefficients,
                   irrep_set: IrrepSet) -> float:
    """| ||signal||^2 - (1/|G|) sum_rho d_rho ||F_rho||_F^2 |."""
    total = sum(
        rho.dim * float(np.sum(np.abs(coeffs[rho.label]) ** 2))
        for rho in irrep_set
    )
    return abs(float(np.sum(signal.values ** 2)) - total / irrep_set.group.order)
