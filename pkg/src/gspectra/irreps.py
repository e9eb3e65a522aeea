"""Unitary irreducible representations, characters, and Kronecker tables
for the supported group families.

Irreps are stored as dense matrix tables, one d x d complex matrix per
group element, validated for unitarity and the homomorphism property at
construction time.  The octahedral families are realized through the
permutation of the cube's four space diagonals: the 3D matrices are the
rotation matrices themselves (and their product with the permutation
sign), the 2D irrep factors through the quotient onto the symmetric group
on the three diagonal pairings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, InvalidParameterError, UnsupportedError
from .groups import (
    FiniteGroup,
    commutative_coords,
    group_from_kind,
    octahedral_matrices,
)

UNITARITY_TOL = 1e-12
HOMOMORPHISM_TOL = 1e-12
KRONECKER_ROUND_TOL = 1e-6


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Irrep:
    """One unitary irreducible representation as an explicit matrix table."""

    label: str
    dim: int
    matrices: np.ndarray  # (|G|, dim, dim) complex
    is_real: bool

    def __post_init__(self):
        _frozen(self.matrices)

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]


@dataclass(frozen=True)
class IrrepSet:
    """The complete ordered list of irreps of a group."""

    group: FiniteGroup
    irreps: tuple
    trivial_index: int

    def __post_init__(self):
        _validate_irreps(self)

    def __len__(self):
        return len(self.irreps)

    def __iter__(self):
        return iter(self.irreps)

    def __getitem__(self, i) -> Irrep:
        return self.irreps[i]

    def by_label(self, label: str) -> Irrep:
        for rho in self.irreps:
            if rho.label == label:
                return rho
        raise InvalidParameterError(f"no irrep labelled {label!r}")

    def index_of(self, label: str) -> int:
        for i, rho in enumerate(self.irreps):
            if rho.label == label:
                return i
        raise InvalidParameterError(f"no irrep labelled {label!r}")

    @property
    def labels(self) -> tuple:
        return tuple(rho.label for rho in self.irreps)

    @property
    def dims(self) -> tuple:
        return tuple(rho.dim for rho in self.irreps)


@dataclass(frozen=True)
class CharacterTable:
    """chi[r, g] = trace of irrep r at element g."""

    group: FiniteGroup
    values: np.ndarray  # (n_irreps, |G|) complex

    def __post_init__(self):
        _frozen(self.values)


@dataclass(frozen=True)
class KroneckerTable:
    """multiplicities[i, j, k] = how often irrep k appears in irrep_i (x) irrep_j."""

    group: FiniteGroup
    labels: tuple
    multiplicities: np.ndarray  # (R, R, R) int

    def __post_init__(self):
        _frozen(self.multiplicities)

    def blocks(self, i: int, j: int) -> tuple:
        """Indices of the irreps appearing in irrep_i (x) irrep_j, in set order."""
        return tuple(int(k) for k in np.nonzero(self.multiplicities[i, j])[0])

    def binary_rows(self) -> list:
        """Rows of binary words, one word per column irrep."""
        rows = []
        for i in range(len(self.labels)):
            rows.append(
                " ".join(
                    "".join(str(int(m)) for m in self.multiplicities[i, j])
                    for j in range(len(self.labels))
                )
            )
        return rows


def _validate_irreps(irrep_set: IrrepSet):
    group = irrep_set.group
    dims_sq = sum(rho.dim ** 2 for rho in irrep_set.irreps)
    if dims_sq != group.order:
        raise ConsistencyError(
            f"sum of squared dimensions {dims_sq} != group order {group.order}"
        )
    trivial = irrep_set.irreps[irrep_set.trivial_index]
    if trivial.dim != 1 or not np.allclose(trivial.matrices, 1.0):
        raise ConsistencyError("trivial irrep index does not point at the trivial irrep")
    scalars = []
    for rho in irrep_set.irreps:
        m = rho.matrices
        if m.shape != (group.order, rho.dim, rho.dim):
            raise ConsistencyError(f"{rho.label}: bad matrix table shape {m.shape}")
        if rho.dim == 1:
            scalars.append(rho)
            continue
        eye = np.eye(rho.dim)
        uni = np.einsum("gji,gjk->gik", m.conj(), m)
        if np.max(np.abs(uni - eye[None])) > UNITARITY_TOL:
            raise ConsistencyError(f"{rho.label}: unitarity violated")
        prod = np.einsum("aij,bjk->abik", m, m)
        if np.max(np.abs(prod - m[group.mult])) > HOMOMORPHISM_TOL:
            raise ConsistencyError(f"{rho.label}: homomorphism violated")
    if scalars:
        # batched checks for the 1D tables; exhaustive over all pairs for
        # small groups, over a fixed row sample for large ones (the test
        # suite keeps the exhaustive obligation at small orders)
        w = np.stack([rho.matrices[:, 0, 0] for rho in scalars])
        if np.max(np.abs(np.abs(w) - 1.0)) > UNITARITY_TOL:
            raise ConsistencyError("a 1D irrep is not unitary")
        if group.order <= 64:
            rows = np.arange(group.order)
        else:
            rows = np.unique(np.concatenate([
                np.arange(8), np.array(group.generators),
                np.linspace(0, group.order - 1, 8, dtype=int),
            ]))
        lhs = w[:, group.mult[rows]]
        rhs = w[:, rows, None] * w[:, None, :]
        if np.max(np.abs(lhs - rhs)) > HOMOMORPHISM_TOL:
            raise ConsistencyError("a 1D irrep violates the homomorphism law")
    # character orthonormality implies pairwise inequivalence
    traces = np.stack([np.einsum("gii->g", rho.matrices) for rho in irrep_set.irreps])
    gram = traces @ traces.conj().T / group.order
    if np.max(np.abs(gram - np.eye(len(irrep_set.irreps)))) > 1e-9:
        raise ConsistencyError("characters are not orthonormal; irreps not distinct")


def _is_real(mats: np.ndarray) -> bool:
    return bool(np.max(np.abs(mats.imag)) < 1e-14)


def irreps_cyclic(n: int) -> IrrepSet:
    """The n one-dimensional irreps k -> exp(2 pi i k g / n)."""
    group = group_from_kind(f"cyclic:{n}")
    g = np.arange(n)
    irreps = []
    for k in range(n):
        vals = np.exp(2j * np.pi * k * g / n).reshape(n, 1, 1)
        irreps.append(Irrep(f"rho_{k}", 1, vals, _is_real(vals)))
    return IrrepSet(group, tuple(irreps), 0)


def irreps_commutative(ns) -> IrrepSet:
    """One 1D irrep per coordinate vector k: the product of the per-axis
    cyclic characters."""
    ns = tuple(int(n) for n in ns)
    group = group_from_kind("commutative:" + "x".join(str(n) for n in ns))
    coords = commutative_coords(group)  # (|G|, L)
    scale = 2j * np.pi / np.array(ns)
    irreps = []
    for k in coords:
        vals = np.exp(coords @ (scale * k)).reshape(group.order, 1, 1)
        label = "rho_" + "_".join(str(c) for c in k)
        irreps.append(Irrep(label, 1, vals, _is_real(vals)))
    return IrrepSet(group, tuple(irreps), 0)


def irreps_dihedral(n: int) -> IrrepSet:
    """Irreps of the dihedral group of the n-gon, n > 2.

    Set order: rho_0 (trivial), rho_01 (reflection sign), then for even n
    rho_02 and rho_03 (the two subgroup-sign characters), then the 2D
    irreps rho_1 .. rho_floor((n-1)/2) given by rotation/reflection blocks.
    n <= 2 is commutative; use the commutative construction instead.
    """
    if n <= 2:
        raise InvalidParameterError(
            "dihedral n <= 2 is commutative; route through irreps_commutative"
        )
    group = group_from_kind(f"dihedral:{n}")
    order = group.order
    l = np.arange(order) % n
    m = np.arange(order) // n
    irreps = [
        Irrep("rho_0", 1, np.ones((order, 1, 1), dtype=complex), True),
        Irrep("rho_01", 1,
              np.where(m == 0, 1.0, -1.0).astype(complex).reshape(order, 1, 1), True),
    ]
    if n % 2 == 0:
        # value 1 exactly on <a^2, x> and on <a^2, ax> respectively
        irreps.append(Irrep("rho_02", 1,
                            ((-1.0) ** l).astype(complex).reshape(order, 1, 1), True))
        irreps.append(Irrep("rho_03", 1,
                            ((-1.0) ** (l + m)).astype(complex).reshape(order, 1, 1), True))
    flip = np.array([[1.0, 0.0], [0.0, -1.0]])
    for k in range(1, (n - 1) // 2 + 1):
        theta = 2.0 * np.pi * l * k / n
        rot = np.zeros((order, 2, 2))
        rot[:, 0, 0] = np.cos(theta)
        rot[:, 0, 1] = -np.sin(theta)
        rot[:, 1, 0] = np.sin(theta)
        rot[:, 1, 1] = np.cos(theta)
        mats = np.where(m[:, None, None] == 0, rot, rot @ flip).astype(complex)
        irreps.append(Irrep(f"rho_{k}", 2, mats, True))
    return IrrepSet(group, tuple(irreps), 0)


# --- octahedral machinery -------------------------------------------------

_DIAGONALS = np.array([
    [1, 1, 1],
    [1, 1, -1],
    [1, -1, 1],
    [1, -1, -1],
]).T  # columns are the four cube diagonals


def _diagonal_permutation(rot: np.ndarray) -> np.ndarray:
    """The permutation of the four space diagonals induced by a rotation."""
    image = rot @ _DIAGONALS
    perm = np.empty(4, dtype=int)
    for i in range(4):
        col = image[:, i]
        for j in range(4):
            if np.array_equal(col, _DIAGONALS[:, j]) or np.array_equal(col, -_DIAGONALS[:, j]):
                perm[i] = j
                break
        else:
            raise ConsistencyError("matrix does not permute the cube diagonals")
    return perm


def _perm_sign(perm: np.ndarray) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


_PAIR_BASIS = np.array([
    [1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0), 0.0],
    [1.0 / np.sqrt(6.0), 1.0 / np.sqrt(6.0), -2.0 / np.sqrt(6.0)],
])


def _pairing_2d(perm: np.ndarray) -> np.ndarray:
    """2D block of the quotient action on the three diagonal pairings."""
    tau = np.empty(3, dtype=int)
    for i in range(3):
        a, b = 0, i + 1  # pair {0, i+1} belongs to pairing i
        tau[i] = (perm[a] ^ perm[b]) - 1
    p = np.zeros((3, 3))
    p[tau, np.arange(3)] = 1.0
    return _PAIR_BASIS @ p @ _PAIR_BASIS.T


def _octahedral_irrep_tables(kind: str):
    mats = octahedral_matrices(kind)
    order = len(mats)
    trivial = np.ones((order, 1, 1))
    geom = np.empty((order, 3, 3))
    sgeom = np.empty((order, 3, 3))
    two = np.empty((order, 2, 2))
    sgn = np.empty((order, 1, 1))
    parity = np.empty((order, 1, 1))
    for g, mat in enumerate(mats):
        det = int(round(np.linalg.det(mat)))
        rot = det * np.asarray(mat, dtype=float)
        perm = _diagonal_permutation(rot)
        s = _perm_sign(perm)
        geom[g] = rot
        sgeom[g] = s * rot
        two[g] = _pairing_2d(perm)
        sgn[g] = s
        parity[g] = det
    return trivial, geom, sgeom, two, sgn, parity


def irreps_octahedral() -> IrrepSet:
    """The five irreps of the cube's rotation group, ordered so that the
    computed Kronecker table matches the reference binary table
    (rho_0 trivial, rho_1/rho_2 the 3D pair, rho_3 2D, rho_4 the sign)."""
    group = group_from_kind("octahedral")
    trivial, geom, sgeom, two, sgn, _ = _octahedral_irrep_tables("octahedral")
    irreps = (
        Irrep("rho_0", 1, trivial.astype(complex), True),
        Irrep("rho_1", 3, geom.astype(complex), True),
        Irrep("rho_2", 3, sgeom.astype(complex), True),
        Irrep("rho_3", 2, two.astype(complex), True),
        Irrep("rho_4", 1, sgn.astype(complex), True),
    )
    return IrrepSet(group, irreps, 0)


def irreps_full_octahedral() -> IrrepSet:
    """The ten irreps of the full symmetry group of the cube: the five
    rotation-group irreps extended evenly across central inversion
    (rho_0..rho_4) followed by their parity-odd partners (rho_5..rho_9)."""
    group = group_from_kind("full_octahedral")
    trivial, geom, sgeom, two, sgn, parity = _octahedral_irrep_tables("full_octahedral")
    even = [trivial, geom, sgeom, two, sgn]
    irreps = []
    for k, table in enumerate(even):
        irreps.append(Irrep(f"rho_{k}", table.shape[1], table.astype(complex), True))
    for k, table in enumerate(even):
        odd = parity.reshape(-1, 1, 1) * table
        irreps.append(Irrep(f"rho_{5 + k}", table.shape[1], odd.astype(complex), True))
    return IrrepSet(group, tuple(irreps), 0)


@lru_cache(maxsize=None)
def _irreps_for_kind(kind: str) -> IrrepSet:
    family = kind.split(":", 1)[0]
    if family == "cyclic":
        return irreps_cyclic(int(kind.split(":")[1]))
    if family == "commutative":
        return irreps_commutative([int(p) for p in kind.split(":")[1].split("x")])
    if family == "dihedral":
        return irreps_dihedral(int(kind.split(":")[1]))
    if family == "octahedral":
        return irreps_octahedral()
    if family == "full_octahedral":
        return irreps_full_octahedral()
    raise InvalidParameterError(f"no irrep construction for kind {kind!r}")


def irreps_for(group: FiniteGroup) -> IrrepSet:
    """The canonical irrep set for a supported group (cached per kind)."""
    return _irreps_for_kind(group.kind)


def characters(irrep_set: IrrepSet) -> CharacterTable:
    """Trace table of every irrep."""
    vals = np.stack([np.einsum("gii->g", rho.matrices) for rho in irrep_set.irreps])
    return CharacterTable(irrep_set.group, vals)


def kronecker_table(irrep_set: IrrepSet) -> KroneckerTable:
    """Tensor-decomposition multiplicities via character inner products.

    Multiplicities above one are rejected: block extraction downstream is
    only well defined for binary tables, which covers every supported
    family.
    """
    chi = characters(irrep_set).values  # (R, |G|)
    order = irrep_set.group.order
    inner = np.einsum("ig,jg,kg->ijk", chi, chi, chi.conj()) / order
    mult = np.rint(inner.real)
    residual = np.max(np.abs(inner - mult))
    if residual > KRONECKER_ROUND_TOL:
        raise ConsistencyError(
            f"multiplicities are not near-integer (residual {residual:.2e})"
        )
    mult = mult.astype(int)
    if mult.min() < 0:
        raise ConsistencyError("negative multiplicity")
    if mult.max() > 1:
        raise UnsupportedError(
            "tensor products with multiplicity above one are not supported"
        )
    dims = np.array(irrep_set.dims)
    if not np.array_equal(mult @ dims, np.outer(dims, dims)):
        raise ConsistencyError("dimension bookkeeping failed for the Kronecker table")
    return KroneckerTable(irrep_set.group, irrep_set.labels, mult)
