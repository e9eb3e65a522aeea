"""Triple correlation, full / commutative / selective bispectra, pair
selection, and the baseline poolings.

The selective pair list is family specific:

* commutative groups (cyclic included) follow the generator-lattice
  construction that the inversion chain consumes, one recovered Fourier
  coefficient per pair, |G| pairs in total;
* dihedral groups n > 2 use the fixed list (rho_0,rho_0), (rho_0,rho_1),
  (rho_1,rho_k) for k = 1 .. floor((n-1)/2);
* the octahedral families run the generic closure: seed with the first
  irrep whose powers close over all irreps (dry run on the Kronecker
  table), then repeatedly add the lexicographically first pair of covered
  irreps that unlocks at least one new irrep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .clebsch import get_cg
from .errors import (
    IncompletenessError,
    InvalidParameterError,
)
from .fourier import FourierCoefficients
from .groups import FiniteGroup, GroupSignal, commutative_coords
from .irreps import IrrepSet, KroneckerTable


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class TripleCorrelation:
    """T[g1, g2] = sum_g signal(g) signal(g*g1) signal(g*g2)."""

    group: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        _frozen(self.values)


@dataclass(frozen=True)
class SelectionPlan:
    """An ordered list of irrep pairs whose bispectral coefficients suffice
    to reconstruct the Fourier transform (up to group action)."""

    group: FiniteGroup
    pairs: tuple           # ((label, label), ...)
    seed_irrep: str
    covered: tuple         # irrep labels in recovery order
    recovery_edges: tuple  # per pair: labels unlocked by that pair
    scalar_count: int

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class BispectrumCoefficients:
    """Bispectral coefficients keyed by irrep-label pairs."""

    group: FiniteGroup
    mode: str              # "full" | "selective" | "commutative"
    pairs: tuple
    entries: dict          # (label, label) -> complex matrix
    scalar_count: int

    def __post_init__(self):
        for mat in self.entries.values():
            _frozen(mat)

    def __getitem__(self, pair):
        return self.entries[pair]


def triple_correlation(signal: GroupSignal) -> TripleCorrelation:
    """Direct evaluation of the definition; cost O(|G|^3)."""
    group = signal.group
    n = group.order
    vals = signal.values.tolist()
    mult = group.mult.tolist()
    out = np.empty((n, n))
    for g1 in range(n):
        col1 = [mult[g][g1] for g in range(n)]
        for g2 in range(n):
            acc = 0.0
            for g in range(n):
                row = mult[g]
                acc += vals[g] * vals[col1[g]] * vals[row[g2]]
            out[g1, g2] = acc
    return TripleCorrelation(group, out)


def _is_commutative_family(group: FiniteGroup) -> bool:
    return group.family in ("cyclic", "commutative")


def _coords_and_sizes(group: FiniteGroup):
    if group.family == "cyclic":
        n = group.params[0]
        return np.arange(n).reshape(-1, 1), (n,)
    coords = commutative_coords(group)
    return coords, group.params


def _commutative_labels(group: FiniteGroup):
    """Map coordinate tuples -> irrep labels matching the irrep sets."""
    coords, sizes = _coords_and_sizes(group)
    if group.family == "cyclic":
        return {(int(c[0]),): f"rho_{c[0]}" for c in coords}, sizes
    return (
        {tuple(int(x) for x in c): "rho_" + "_".join(str(x) for x in c) for c in coords},
        sizes,
    )


def _pair_matrix_general(f: FourierCoefficients, irrep_set: IrrepSet,
                         kt: KroneckerTable, label1: str, label2: str) -> np.ndarray:
    cg = get_cg(irrep_set, kt, label1, label2)
    left = np.kron(f[label1], f[label2])
    stack = scipy.linalg.block_diag(
        *[f[label].conj().T for label in cg.blocks]
    )
    return left @ cg.matrix @ stack @ cg.matrix.conj().T


def full_bispectrum(f: FourierCoefficients, irrep_set: IrrepSet,
                    kt: KroneckerTable) -> BispectrumCoefficients:
    """All |irreps|^2 coefficients via the Clebsch-Gordan closed form."""
    labels = irrep_set.labels
    entries = {}
    pairs = []
    count = 0
    for l1 in labels:
        for l2 in labels:
            entries[(l1, l2)] = _pair_matrix_general(f, irrep_set, kt, l1, l2)
            pairs.append((l1, l2))
            count += entries[(l1, l2)].size
    return BispectrumCoefficients(f.group, "full", tuple(pairs), entries, count)


def commutative_bispectrum(f: FourierCoefficients,
                           irrep_set: IrrepSet) -> BispectrumCoefficients:
    """Scalar closed form valid on commutative groups only."""
    group = f.group
    if not _is_commutative_family(group):
        raise InvalidParameterError("commutative_bispectrum requires a commutative group")
    labels_by_coord, sizes = _commutative_labels(group)
    coords = list(labels_by_coord.keys())
    entries = {}
    pairs = []
    for c1 in coords:
        for c2 in coords:
            prod = tuple((a + b) % n for a, b, n in zip(c1, c2, sizes))
            l1, l2 = labels_by_coord[c1], labels_by_coord[c2]
            value = f[l1][0, 0] * f[l2][0, 0] * np.conj(f[labels_by_coord[prod]][0, 0])
            entries[(l1, l2)] = np.array([[value]])
            pairs.append((l1, l2))
    return BispectrumCoefficients(group, "commutative", tuple(pairs), entries,
                                  len(pairs))


def _plan_scalar_count(pairs, irrep_set: IrrepSet) -> int:
    total = 0
    for l1, l2 in pairs:
        d = irrep_set.by_label(l1).dim * irrep_set.by_label(l2).dim
        total += d * d
    return total


def _lattice_plan(group: FiniteGroup, irrep_set: IrrepSet) -> SelectionPlan:
    """Generator-lattice pair list for commutative groups: start from the
    trivial pair, walk each axis with its generator, then combine each
    axis with everything already reachable."""
    labels_by_coord, sizes = _commutative_labels(group)
    ndim = len(sizes)
    zero = tuple(0 for _ in sizes)
    pairs = [(labels_by_coord[zero], labels_by_coord[zero])]
    edges = [(labels_by_coord[zero],)]
    covered = [zero]
    reached = [zero]  # K^(l-1) in construction order
    seed = None
    for axis in range(ndim):
        n_axis = sizes[axis]
        if n_axis == 1:
            continue
        e = tuple(1 if a == axis else 0 for a in range(ndim))
        if seed is None:
            seed = labels_by_coord[e]
        pairs.append((labels_by_coord[zero], labels_by_coord[e]))
        edges.append((labels_by_coord[e],))
        covered.append(e)
        new_reached = []
        for t in range(1, n_axis):
            te = tuple(t if a == axis else 0 for a in range(ndim))
            if t > 1:
                prev = tuple(t - 1 if a == axis else 0 for a in range(ndim))
                pairs.append((labels_by_coord[e], labels_by_coord[prev]))
                edges.append((labels_by_coord[te],))
                covered.append(te)
            for k in reached:
                if k == zero:
                    continue
                target = tuple((t * ei + ki) % n for ei, ki, n in zip(e, k, sizes))
                pairs.append((labels_by_coord[te], labels_by_coord[k]))
                edges.append((labels_by_coord[target],))
                covered.append(target)
            new_reached.extend(
                tuple((t * ei + ki) % n for ei, ki, n in zip(e, k, sizes))
                for k in reached
            )
        reached = reached + new_reached
    if seed is None:  # trivial group(s): only the trivial pair
        seed = labels_by_coord[zero]
    covered_labels = tuple(labels_by_coord[c] for c in covered)
    if len(set(covered_labels)) != group.order:
        raise IncompletenessError(
            "lattice construction failed to reach every irrep",
            uncovered=set(labels_by_coord.values()) - set(covered_labels),
        )
    return SelectionPlan(group, tuple(pairs), seed, covered_labels, tuple(edges),
                         _plan_scalar_count(pairs, irrep_set))


def _dihedral_plan(group: FiniteGroup, irrep_set: IrrepSet,
                   kt: KroneckerTable) -> SelectionPlan:
    n = group.params[0]
    m = (n - 1) // 2
    pairs = [("rho_0", "rho_0"), ("rho_0", "rho_1")]
    edges = [("rho_0",), ("rho_1",)]
    covered = ["rho_0", "rho_1"]
    for k in range(1, m + 1):
        pair = ("rho_1", f"rho_{k}")
        new = []
        for b in kt.blocks(irrep_set.index_of("rho_1"), irrep_set.index_of(f"rho_{k}")):
            label = irrep_set.labels[b]
            if label not in covered:
                covered.append(label)
                new.append(label)
        pairs.append(pair)
        edges.append(tuple(new))
    if len(covered) != len(irrep_set.labels):
        raise IncompletenessError(
            "dihedral chain failed to reach every irrep",
            uncovered=set(irrep_set.labels) - set(covered),
        )
    return SelectionPlan(group, tuple(pairs), "rho_1", tuple(covered), tuple(edges),
                         _plan_scalar_count(pairs, irrep_set))


def _closure_plan(irrep_set: IrrepSet, kt: KroneckerTable,
                  seed_label=None) -> SelectionPlan:
    """Generic closure: trivial pair, a seed irrep validated by dry run,
    then lexicographic pair selection until every irrep is covered."""
    labels = irrep_set.labels
    trivial = irrep_set.trivial_index

    def run(seed_index):
        if seed_index == trivial:
            return None
        if all(k == trivial for k in kt.blocks(seed_index, seed_index)):
            return None  # self-tensor generates nothing new
        pairs = [(trivial, trivial), (trivial, seed_index), (seed_index, seed_index)]
        covered = [trivial, seed_index]
        new = [k for k in kt.blocks(seed_index, seed_index) if k not in covered]
        edges = [(trivial,), (seed_index,), tuple(new)]
        covered.extend(new)
        while len(covered) < len(labels):
            step = None
            for i in sorted(covered):
                for j in sorted(covered):
                    if j < i:
                        continue
                    new = [k for k in kt.blocks(i, j) if k not in covered]
                    if new:
                        step = (i, j, new)
                        break
                if step:
                    break
            if step is None:
                return None
            i, j, new = step
            pairs.append((i, j))
            edges.append(tuple(new))
            covered.extend(new)
        return pairs, edges, covered

    if seed_label is not None:
        result = run(irrep_set.index_of(seed_label))
        if result is None:
            raise IncompletenessError(
                f"seed {seed_label} does not close over all irreps",
                uncovered=labels,
            )
    else:
        result = None
        for candidate in range(len(labels)):
            if candidate == trivial:
                continue
            rho = irrep_set[candidate]
            if rho.dim == 1 and kt.blocks(candidate, candidate) == (trivial,):
                continue
            result = run(candidate)
            if result is not None:
                break
        if result is None:
            raise IncompletenessError(
                "no seed irrep closes over all irreps", uncovered=labels
            )
    pairs, edges, covered = result
    label_pairs = tuple((labels[i], labels[j]) for i, j in pairs)
    seed = label_pairs[1][1] if len(label_pairs) > 1 else labels[trivial]
    return SelectionPlan(
        irrep_set.group,
        label_pairs,
        seed,
        tuple(labels[k] for k in covered),
        tuple(tuple(labels[k] for k in e) for e in edges),
        _plan_scalar_count(label_pairs, irrep_set),
    )


def selection_plan(kt: KroneckerTable, irrep_set: IrrepSet,
                   seed=None) -> SelectionPlan:
    """Selective pair list for the group behind ``irrep_set``.

    With ``seed=None`` the family-canonical plan is returned (the one the
    inversion chains consume).  Passing a seed label forces the generic
    closure from that seed, validated by a dry run."""
    group = irrep_set.group
    if seed is not None:
        return _closure_plan(irrep_set, kt, seed_label=seed)
    if _is_commutative_family(group):
        return _lattice_plan(group, irrep_set)
    if group.family == "dihedral":
        return _dihedral_plan(group, irrep_set, kt)
    return _closure_plan(irrep_set, kt)


def selective_bispectrum(f: FourierCoefficients,
                         plan: SelectionPlan,
                         irrep_set: IrrepSet,
                         kt: KroneckerTable = None) -> BispectrumCoefficients:
    """Only the plan's coefficients, via the commutative closed form on
    commutative groups and the Clebsch-Gordan form elsewhere."""
    if f.group != plan.group:
        raise InvalidParameterError("coefficients and plan live on different groups")
    entries = {}
    if _is_commutative_family(plan.group):
        labels_by_coord, sizes = _commutative_labels(plan.group)
        coord_by_label = {v: k for k, v in labels_by_coord.items()}
        for l1, l2 in plan.pairs:
            c1, c2 = coord_by_label[l1], coord_by_label[l2]
            prod = tuple((a + b) % n for a, b, n in zip(c1, c2, sizes))
            value = f[l1][0, 0] * f[l2][0, 0] * np.conj(f[labels_by_coord[prod]][0, 0])
            entries[(l1, l2)] = np.array([[value]])
    else:
        if kt is None:
            raise InvalidParameterError("a Kronecker table is required here")
        for l1, l2 in plan.pairs:
            entries[(l1, l2)] = _pair_matrix_general(f, irrep_set, kt, l1, l2)
    count = sum(mat.size for mat in entries.values())
    assert count == plan.scalar_count
    return BispectrumCoefficients(plan.group, "selective", plan.pairs, entries, count)


def max_pool(signal: GroupSignal) -> float:
    return float(np.max(signal.values))


def avg_pool(signal: GroupSignal) -> float:
    return float(np.mean(signal.values))
