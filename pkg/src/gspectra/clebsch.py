"""Clebsch-Gordan matrices: the unitary change of basis taking a tensor
product of irreps to the direct sum of its irreducible blocks,

    (rho_i (x) rho_j)(g) = C [ direct-sum of rho(g) over blocks ] C^dagger.

Two constructions are provided.  ``cg_general`` works for any supported
group with binary tensor multiplicities: it projects onto each isotypic
subspace and then builds the basis with matrix-element projectors so the
diagonal blocks come out as the exact stored representatives (an
orthonormal basis of the isotypic image alone would only give equivalent
blocks).  ``cg_dihedral_2d`` follows the real-Schur route available for
pairs of 2D dihedral irreps, with fix-ups for the degenerate eigenvalue
pairs and the per-block rotation freedom that a single-element Schur form
leaves behind.

Decompositions are cached per (group, pair) so every spectrum computed in
a process shares one basis choice; the bispectrum depends on that choice,
so determinism matters.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConsistencyError, InvalidParameterError, UnsupportedError
from .irreps import IrrepSet, KroneckerTable

UNITARITY_TOL = 1e-10
BLOCK_TOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class CGDecomposition:
    """Unitary C and the ordered irreducible block layout it realizes."""

    pair: tuple          # (label_i, label_j)
    matrix: np.ndarray   # (d_i*d_j, d_i*d_j) complex
    blocks: tuple        # irrep labels in block order
    block_dims: tuple

    def __post_init__(self):
        _frozen(self.matrix)

    def block_slices(self):
        slices = []
        start = 0
        for d in self.block_dims:
            slices.append(slice(start, start + d))
            start += d
        return slices


def _tensor_table(rho_i, rho_j) -> np.ndarray:
    """(|G|, di*dj, di*dj) Kronecker products rho_i(g) (x) rho_j(g)."""
    di, dj = rho_i.dim, rho_j.dim
    t = np.einsum("gab,gcd->gacbd", rho_i.matrices, rho_j.matrices)
    return t.reshape(-1, di * dj, di * dj)


def _verify(decomp: CGDecomposition, tensor: np.ndarray, irrep_set: IrrepSet) -> float:
    c = decomp.matrix
    if np.max(np.abs(c.conj().T @ c - np.eye(c.shape[0]))) > UNITARITY_TOL:
        raise ConsistencyError(f"{decomp.pair}: C is not unitary")
    reduced = np.einsum("ai,gab,bj->gij", c.conj(), tensor, c)
    residual = 0.0
    for label, sl in zip(decomp.blocks, decomp.block_slices()):
        rho = irrep_set.by_label(label)
        residual = max(residual, float(np.max(np.abs(reduced[:, sl, sl] - rho.matrices))))
        reduced[:, sl, sl] = 0.0
    residual = max(residual, float(np.max(np.abs(reduced))))
    if residual > BLOCK_TOL:
        raise ConsistencyError(
            f"{decomp.pair}: block-diagonalization residual {residual:.2e}"
        )
    return residual


def _fix_vector_phase(v: np.ndarray) -> np.ndarray:
    """Deterministic representative of a unit vector: the entry of largest
    modulus is made real and positive (ties broken by lowest index)."""
    idx = int(np.argmax(np.abs(np.round(v, 12))))
    pivot = v[idx]
    if abs(pivot) < 1e-14:
        raise ConsistencyError("cannot fix the phase of a null vector")
    return v * (pivot.conjugate() / abs(pivot))


def cg_general(rho_i, rho_j, irrep_set: IrrepSet, kt: KroneckerTable) -> CGDecomposition:
    """Projector construction valid for any binary-multiplicity pair."""
    group = irrep_set.group
    i = irrep_set.index_of(rho_i.label)
    j = irrep_set.index_of(rho_j.label)
    if kt.multiplicities[i, j].max() > 1:
        raise UnsupportedError("tensor multiplicities above one are unsupported")
    tensor = _tensor_table(rho_i, rho_j)
    dim = rho_i.dim * rho_j.dim
    columns = []
    blocks = []
    block_dims = []
    for k in kt.blocks(i, j):
        rho_k = irrep_set[k]
        d = rho_k.dim
        weights = rho_k.matrices[:, 0, 0].conj()
        p00 = (d / group.order) * np.einsum("g,gab->ab", weights, tensor)
        u, svals, _ = np.linalg.svd(p00)
        if not (abs(svals[0] - 1.0) < 1e-8 and (dim == 1 or svals[1] < 1e-8)):
            raise ConsistencyError(
                f"{rho_i.label}(x){rho_j.label}: isotypic projector for "
                f"{rho_k.label} has unexpected rank profile {svals[:2]}"
            )
        seed = _fix_vector_phase(u[:, 0])
        for r in range(d):
            w = rho_k.matrices[:, r, 0].conj()
            pr0 = (d / group.order) * np.einsum("g,gab->ab", w, tensor)
            columns.append(pr0 @ seed)
        blocks.append(rho_k.label)
        block_dims.append(d)
    c = np.stack(columns, axis=1)
    decomp = CGDecomposition((rho_i.label, rho_j.label), c, tuple(blocks), tuple(block_dims))
    _verify(decomp, tensor, irrep_set)
    return decomp


def _rot(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def cg_dihedral_2d(rho_i, rho_j, irrep_set: IrrepSet, kt: KroneckerTable) -> CGDecomposition:
    """Real-Schur construction for a pair of 2D dihedral irreps.

    The Schur form of the tensor at the rotation generator gives the block
    split; the permutation making every non-zero sub-diagonal entry
    positive orients the rotation blocks.  Two fix-ups remain: degenerate
    +-1 eigenvalue pairs (the 1D blocks) are separated by diagonalizing
    the reflection's action, and each 2D block is rotated in-plane so the
    reflection lands on its stored representative.
    """
    group = irrep_set.group
    if group.family != "dihedral":
        raise InvalidParameterError("cg_dihedral_2d requires a dihedral group")
    if rho_i.dim != 2 or rho_j.dim != 2:
        raise InvalidParameterError("cg_dihedral_2d requires two 2D irreps")
    n = group.params[0]
    tensor = _tensor_table(rho_i, rho_j)
    q = tensor[1].real            # rotation generator a
    refl = tensor[n].real         # reflection generator x
    t, z = scipy.linalg.schur(q, output="real")

    # parse diagonal blocks
    found = []  # (irrep label, columns)
    s = 0
    ones, minus = [], []
    while s < 4:
        if s + 1 < 4 and abs(t[s + 1, s]) > 1e-8:
            cols = z[:, s:s + 2].copy()
            if t[s + 1, s] < 0:
                cols = cols[:, ::-1]
            block = cols.T @ q @ cols
            theta = np.arctan2(block[1, 0], block[0, 0])
            freq = int(round(theta * n / (2.0 * np.pi))) % n
            # align the reflection with the stored representative
            mx = cols.T @ refl @ cols
            phi = 0.5 * np.arctan2(mx[1, 0], mx[0, 0])
            cols = cols @ _rot(phi)
            found.append((f"rho_{freq}", cols))
            s += 2
        else:
            (ones if t[s, s] > 0 else minus).append(z[:, s].copy())
            s += 1
    for vals, labels in ((ones, ("rho_0", "rho_01")), (minus, ("rho_02", "rho_03"))):
        if not vals:
            continue
        if len(vals) != 2:
            raise ConsistencyError("unexpected 1D block structure in Schur form")
        basis = np.stack(vals, axis=1)
        mx = basis.T @ refl @ basis
        eigvals, eigvecs = np.linalg.eigh((mx + mx.T) / 2.0)
        plus = basis @ eigvecs[:, np.argmax(eigvals)]
        minus_vec = basis @ eigvecs[:, np.argmin(eigvals)]
        found.append((labels[0], plus.reshape(-1, 1)))
        found.append((labels[1], minus_vec.reshape(-1, 1)))

    order = {label: pos for pos, label in enumerate(irrep_set.labels)}
    found.sort(key=lambda item: order[item[0]])
    c = np.concatenate([cols for _, cols in found], axis=1).astype(complex)
    decomp = CGDecomposition(
        (rho_i.label, rho_j.label),
        c,
        tuple(label for label, _ in found),
        tuple(cols.shape[1] for _, cols in found),
    )
    _verify(decomp, tensor, irrep_set)
    return decomp


_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def get_cg(irrep_set: IrrepSet, kt: KroneckerTable, label_i: str, label_j: str) -> CGDecomposition:
    """Cached decomposition for a pair; dihedral 2D pairs go through the
    Schur route, everything else through the projector route."""
    key = (irrep_set.group.kind, label_i, label_j)
    with _CACHE_LOCK:
        if key in _CACHE:
            return _CACHE[key]
    rho_i = irrep_set.by_label(label_i)
    rho_j = irrep_set.by_label(label_j)
    if irrep_set.group.family == "dihedral" and rho_i.dim == 2 and rho_j.dim == 2:
        decomp = cg_dihedral_2d(rho_i, rho_j, irrep_set, kt)
    else:
        decomp = cg_general(rho_i, rho_j, irrep_set, kt)
    with _CACHE_LOCK:
        _CACHE.setdefault(key, decomp)
        return _CACHE[key]


def verification_residual(decomp: CGDecomposition, irrep_set: IrrepSet) -> float:
    """Recompute the worst block-diagonalization residual over all elements."""
    rho_i = irrep_set.by_label(decomp.pair[0])
    rho_j = irrep_set.by_label(decomp.pair[1])
    return _verify(decomp, _tensor_table(rho_i, rho_j), irrep_set)
