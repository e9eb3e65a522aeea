"""Batched forward passes of the invariant poolings over arrays shaped
(batch, channels, |G|), for embedding the invariant layer in equivariant
network stacks.

A handle wraps the canonical selective pair list of one group.  The
bispectrum forward returns real vectors with the complex entries
interleaved: for each pair in plan order, the coefficient matrix in
row-major order, each entry contributing its real part then its
imaginary part.  Forward passes are pure functions of the handle and the
batch; no gradients are provided.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gspectra import (
    InvalidParameterError,
    group_from_kind,
    irreps_for,
    kronecker_table,
    selection_plan,
)
from gspectra.clebsch import get_cg

MODES = ("bispectrum", "max", "avg")


@dataclass(frozen=True)
class PoolingHandle:
    group_kind: str
    mode: str
    pair_labels: tuple
    output_scalar_count: int
    _tables: tuple = None

    def __repr__(self):
        return (f"PoolingHandle({self.group_kind}, {self.mode}, "
                f"out={self.output_scalar_count})")


def _kind_string(group_kind: str, params) -> str:
    if params in (None, (), []):
        return group_kind
    if isinstance(params, int):
        return f"{group_kind}:{params}"
    return f"{group_kind}:" + "x".join(str(p) for p in params)


def make_pooling(group_kind: str, params=None, mode: str = "bispectrum") -> PoolingHandle:
    """Build a handle for one group and pooling mode.

    ``group_kind`` is one of cyclic, commutative, dihedral, octahedral,
    full_octahedral; ``params`` the order parameter(s) where applicable.
    """
    if mode not in MODES:
        raise InvalidParameterError(f"unknown pooling mode {mode!r}")
    kind = _kind_string(group_kind, params)
    group = group_from_kind(kind)
    if mode in ("max", "avg"):
        return PoolingHandle(kind, mode, (), 1, (group.order,))
    irrep_set = irreps_for(group)
    kt = kronecker_table(irrep_set)
    plan = selection_plan(kt, irrep_set)
    conj_tables = {
        rho.label: rho.matrices.conj() for rho in irrep_set
    }
    pair_data = []
    for pair in plan.pairs:
        cg = get_cg(irrep_set, kt, pair[0], pair[1])
        pair_data.append((pair, cg.matrix, tuple(cg.blocks), tuple(cg.block_dims)))
    tables = (group.order, conj_tables, tuple(pair_data))
    return PoolingHandle(kind, mode, plan.pairs, 2 * plan.scalar_count, tables)


def forward(handle: PoolingHandle, batch: np.ndarray) -> np.ndarray:
    """Apply the pooling to every (sample, channel) signal of ``batch``.

    ``batch`` has shape (B, C, |G|); the result has shape
    (B, C, output_scalar_count)."""
    batch = np.asarray(batch, dtype=float)
    order = handle._tables[0]
    if batch.ndim != 3 or batch.shape[-1] != order:
        raise InvalidParameterError(
            f"expected batch of shape (B, C, {order}), got {batch.shape}"
        )
    b, c, _ = batch.shape
    flat = batch.reshape(b * c, order)
    if handle.mode == "max":
        return flat.max(axis=1).reshape(b, c, 1)
    if handle.mode == "avg":
        return flat.mean(axis=1).reshape(b, c, 1)
    _, conj_tables, pair_data = handle._tables
    coeffs = {
        label: np.einsum("ng,gij->nji", flat, table)
        for label, table in conj_tables.items()
    }
    outputs = []
    for (l1, l2), cmat, blocks, block_dims in pair_data:
        fa, fb = coeffs[l1], coeffs[l2]
        da, db = fa.shape[1], fb.shape[1]
        dim = da * db
        kron = np.einsum("nab,ncd->nacbd", fa, fb).reshape(-1, dim, dim)
        stack = np.zeros((flat.shape[0], dim, dim), dtype=complex)
        start = 0
        for label, d in zip(blocks, block_dims):
            stack[:, start:start + d, start:start + d] = (
                coeffs[label].conj().transpose(0, 2, 1)
            )
            start += d
        beta = kron @ cmat @ stack @ cmat.conj().T
        flat_beta = beta.reshape(flat.shape[0], dim * dim)
        interleaved = np.empty((flat.shape[0], 2 * dim * dim))
        interleaved[:, 0::2] = flat_beta.real
        interleaved[:, 1::2] = flat_beta.imag
        outputs.append(interleaved)
    out = np.concatenate(outputs, axis=1)
    assert out.shape[1] == handle.output_scalar_count
    return out.reshape(b, c, handle.output_scalar_count)
