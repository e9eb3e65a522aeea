"""Finite groups as explicit multiplication tables, plus signals and actions.

Every group is stored as an immutable table over element indices
``0 .. order-1`` with a frozen canonical ordering per constructor:

* cyclic ``n``: elements are the residues ``0 .. n-1``;
* commutative ``[n_1, .., n_L]``: elements are integer vectors in
  lexicographic order with the last coordinate fastest;
* dihedral ``n``: rotation^l * reflection^m at index ``l + n*m``;
* octahedral / full octahedral: breadth-first closure order over the
  hardcoded generator matrices (identity first, then generator products
  in generator order).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GroupElement:
    """An element of a finite group, identified by its canonical index."""

    index: int
    group: "FiniteGroup"

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise InvalidParameterError(
                f"element index {self.index} outside [0, {self.group.order})"
            )


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``kind`` is a frozen tag such as ``"cyclic:8"``, ``"commutative:3x3"``,
    ``"dihedral:4"``, ``"octahedral"`` or ``"full_octahedral"`` used by file
    formats and by the representation machinery to dispatch per family.
    """

    order: int
    mult: np.ndarray            # (order, order) int, mult[a, b] = index of a*b
    inverse: np.ndarray         # (order,) int
    identity: int
    labels: tuple
    generators: tuple
    kind: str

    def __post_init__(self):
        _frozen(self.mult)
        _frozen(self.inverse)

    def element(self, index: int) -> GroupElement:
        return GroupElement(index, self)

    @property
    def family(self) -> str:
        return self.kind.split(":", 1)[0]

    @property
    def params(self) -> tuple:
        if ":" not in self.kind:
            return ()
        return tuple(int(p) for p in self.kind.split(":", 1)[1].split("x"))

    def __repr__(self):
        return f"FiniteGroup({self.kind}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)


@dataclass(frozen=True)
class GroupSignal:
    """A real-valued signal indexed by the elements of a finite group."""

    group: FiniteGroup
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.group.order,):
            raise InvalidParameterError(
                f"signal length {vals.shape} does not match group order "
                f"{self.group.order}"
            )
        object.__setattr__(self, "values", _frozen(vals))

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def _validate_tables(mult: np.ndarray, inverse: np.ndarray, identity: int):
    n = mult.shape[0]
    if not np.array_equal(mult[identity], np.arange(n)):
        raise InvalidParameterError("identity row broken")
    if not np.array_equal(mult[:, identity], np.arange(n)):
        raise InvalidParameterError("identity column broken")
    if not np.all(mult[np.arange(n), inverse] == identity):
        raise InvalidParameterError("inverse table broken")


def make_cyclic(n: int) -> FiniteGroup:
    """Integers modulo ``n`` under addition."""
    if n < 1:
        raise InvalidParameterError(f"cyclic order must be >= 1, got {n}")
    idx = np.arange(n)
    mult = (idx[:, None] + idx[None, :]) % n
    inverse = (-idx) % n
    g = FiniteGroup(
        order=n,
        mult=mult.astype(np.intp),
        inverse=inverse.astype(np.intp),
        identity=0,
        labels=tuple(str(i) for i in range(n)),
        generators=(1 % n,),
        kind=f"cyclic:{n}",
    )
    _validate_tables(g.mult, g.inverse, g.identity)
    return g


def make_commutative(ns) -> FiniteGroup:
    """Direct sum of cyclic groups of orders ``ns`` under componentwise
    addition.  Elements are coordinate vectors in lexicographic order with
    the last coordinate fastest."""
    ns = tuple(int(n) for n in ns)
    if len(ns) == 0:
        raise InvalidParameterError("axis list must be nonempty")
    if any(n < 1 for n in ns):
        raise InvalidParameterError(f"axis orders must be >= 1, got {ns}")
    order = int(np.prod(ns))
    coords = np.stack(
        np.unravel_index(np.arange(order), ns), axis=-1
    )  # (order, L), C order = last coordinate fastest
    summed = (coords[:, None, :] + coords[None, :, :]) % np.array(ns)
    mult = np.ravel_multi_index(tuple(summed[..., l] for l in range(len(ns))), ns)
    neg = (-coords) % np.array(ns)
    inverse = np.ravel_multi_index(tuple(neg[:, l] for l in range(len(ns))), ns)
    gens = []
    for l, n in enumerate(ns):
        if n > 1:
            e = np.zeros(len(ns), dtype=int)
            e[l] = 1
            gens.append(int(np.ravel_multi_index(tuple(e), ns)))
    g = FiniteGroup(
        order=order,
        mult=mult.astype(np.intp),
        inverse=np.asarray(inverse, dtype=np.intp),
        identity=0,
        labels=tuple("(" + ",".join(str(c) for c in row) + ")" for row in coords),
        generators=tuple(gens),
        kind="commutative:" + "x".join(str(n) for n in ns),
    )
    _validate_tables(g.mult, g.inverse, g.identity)
    return g


def commutative_coords(group: FiniteGroup) -> np.ndarray:
    """Coordinate vectors of a commutative group's elements, shape (order, L)."""
    ns = group.params
    return np.stack(np.unravel_index(np.arange(group.order), ns), axis=-1)


def make_dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon: a rotation ``a`` of order ``n``
    and a reflection ``x`` with ``x a x = a^-1``.  Element ``a^l x^m`` sits
    at index ``l + n*m``.

    ``n <= 2`` yields a commutative group and is routed to the commutative
    constructor (reflection axis first, so the index bijection
    ``l + n*m`` is preserved)."""
    if n < 1:
        raise InvalidParameterError(f"dihedral order parameter must be >= 1, got {n}")
    if n == 1:
        return make_commutative([2])
    if n == 2:
        return make_commutative([2, 2])
    order = 2 * n
    l = np.arange(order) % n
    m = np.arange(order) // n
    # (a^l1 x^m1)(a^l2 x^m2) = a^(l1 + (-1)^m1 l2) x^(m1+m2)
    sign = np.where(m == 0, 1, -1)
    lr = (l[:, None] + sign[:, None] * l[None, :]) % n
    mr = (m[:, None] + m[None, :]) % 2
    mult = lr + n * mr
    inverse = np.where(m == 1, np.arange(order), (-l) % n)

    def _label(li, mi):
        if li == 0 and mi == 0:
            return "e"
        return (f"a^{li}" if li else "") + ("x" if mi else "")

    labels = tuple(_label(int(li), int(mi)) for li, mi in zip(l, m))
    g = FiniteGroup(
        order=order,
        mult=mult.astype(np.intp),
        inverse=np.asarray(inverse, dtype=np.intp),
        identity=0,
        labels=labels,
        generators=(1, n),
        kind=f"dihedral:{n}",
    )
    _validate_tables(g.mult, g.inverse, g.identity)
    return g


# Rotation generators of the cube: quarter turns about the z and x axes.
_ROT_Z = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]], dtype=int)
_ROT_X = np.array([[1, 0, 0], [0, 0, -1], [0, 1, 0]], dtype=int)
_INVERSION = -np.eye(3, dtype=int)


def _closure_from_generators(gens):
    """Breadth-first closure of integer matrices; returns the element list
    in discovery order (identity first)."""
    eye = np.eye(3, dtype=int)
    elems = [eye]
    seen = {eye.tobytes()}
    queue = [eye]
    while queue:
        current = queue.pop(0)
        for gen in gens:
            prod = current @ gen
            key = prod.tobytes()
            if key not in seen:
                seen.add(key)
                elems.append(prod)
                queue.append(prod)
    return elems


def _group_from_matrices(elems, gens, kind):
    index = {m.tobytes(): i for i, m in enumerate(elems)}
    order = len(elems)
    mult = np.empty((order, order), dtype=np.intp)
    inverse = np.empty(order, dtype=np.intp)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            mult[i, j] = index[(a @ b).tobytes()]
        inverse[i] = index[a.T.tobytes()]  # orthogonal integer matrices
    gen_indices = tuple(index[g.tobytes()] for g in gens)
    g = FiniteGroup(
        order=order,
        mult=mult,
        inverse=inverse,
        identity=0,
        labels=tuple(f"g{i}" for i in range(order)),
        generators=gen_indices,
        kind=kind,
    )
    _validate_tables(g.mult, g.inverse, g.identity)
    return g


_OCTA_CACHE: dict = {}


def octahedral_matrices(kind: str):
    """The frozen element matrices (3x3 signed permutations) backing the
    octahedral groups, in canonical (closure) order."""
    if kind not in _OCTA_CACHE:
        if kind == "octahedral":
            elems = _closure_from_generators([_ROT_Z, _ROT_X])
        elif kind == "full_octahedral":
            elems = _closure_from_generators([_ROT_Z, _ROT_X, _INVERSION])
        else:
            raise InvalidParameterError(f"unknown octahedral kind {kind!r}")
        _OCTA_CACHE[kind] = [_frozen(m) for m in elems]
    return _OCTA_CACHE[kind]


def make_octahedral() -> FiniteGroup:
    """Rotation group of the cube (24 elements), realized as integer
    rotation matrices closed under multiplication."""
    elems = octahedral_matrices("octahedral")
    assert len(elems) == 24
    return _group_from_matrices(elems, [_ROT_Z, _ROT_X], "octahedral")


def make_full_octahedral() -> FiniteGroup:
    """Full symmetry group of the cube (48 elements): the rotation group
    together with central inversion."""
    elems = octahedral_matrices("full_octahedral")
    assert len(elems) == 48
    return _group_from_matrices(elems, [_ROT_Z, _ROT_X, _INVERSION], "full_octahedral")


def group_from_kind(kind: str) -> FiniteGroup:
    """Rebuild a group from its ``kind`` tag (used by file headers)."""
    family = kind.split(":", 1)[0]
    if family == "cyclic":
        return make_cyclic(int(kind.split(":")[1]))
    if family == "commutative":
        return make_commutative([int(p) for p in kind.split(":")[1].split("x")])
    if family == "dihedral":
        return make_dihedral(int(kind.split(":")[1]))
    if family == "octahedral":
        return make_octahedral()
    if family == "full_octahedral":
        return make_full_octahedral()
    raise InvalidParameterError(f"unknown group kind {kind!r}")


def act(group: FiniteGroup, h, signal: GroupSignal) -> GroupSignal:
    """Left action on signals: output(g) = input(h^-1 * g)."""
    if isinstance(h, GroupElement):
        if h.group != group:
            raise InvalidParameterError("element belongs to a different group")
        h = h.index
    if signal.group != group:
        raise InvalidParameterError("signal belongs to a different group")
    h_inv = group.inverse[h]
    return GroupSignal(group, signal.values[group.mult[h_inv]])


def orbit_distance(sig1: GroupSignal, sig2: GroupSignal) -> float:
    """min over h of || sig1 - act(h, sig2) ||_2; zero iff the signals share
    an orbit (up to floating point)."""
    if sig1.group != sig2.group:
        raise InvalidParameterError("signals live on different groups")
    g = sig1.group
    shifted = sig2.values[g.mult[g.inverse]]  # row h: act(h, sig2)
    return float(np.min(np.linalg.norm(shifted - sig1.values[None, :], axis=1)))


def random_signal(group: FiniteGroup, seed: int) -> GroupSignal:
    """Deterministic pseudorandom signal with values in (0, 1)."""
    rng = np.random.default_rng(seed)
    return GroupSignal(group, rng.random(group.order))
