"""Reconstruction of the Fourier transform (and the signal, up to group
action) from selective bispectral coefficients.

Commutative groups reduce to scalar chains: the trivial coefficient fixes
the mean, each generator coefficient fixes a modulus, and the remaining
pairs peel off one Fourier coefficient each.  The arbitrary phases chosen
for the generators are repaired at the end by the unique per-axis phase
in [0, 2*pi/n) that makes the inverse transform real.

Noncommutative chains recover matrix coefficients block by block through
the Clebsch-Gordan form.  The first nontrivial coefficient is only
determined up to a right orthogonal factor U; the chain is run for a
candidate U and the factor is resolved by minimizing the chain's own
consistency residual (off-block mass plus mismatch against already-known
blocks), which vanishes exactly when U lands on a group translate of the
original signal.  Minimizing an imaginary-part norm cannot work here:
every irrep of these families is real, so every candidate U already
realizes a real signal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .clebsch import get_cg
from .errors import (
    InconsistentInputError,
    InvalidParameterError,
    InversionFailureError,
    NonGenericSignalError,
)
from .fourier import FourierCoefficients, igft_complex
from .groups import GroupSignal
from .irreps import IrrepSet, KroneckerTable, irreps_for, kronecker_table
from .spectra import (
    BispectrumCoefficients,
    SelectionPlan,
    _commutative_labels,
    selection_plan,
)

ZERO_TOL = 1e-12
FACTOR_FLOOR = 1e-9   # smallest admissible singular value of a chain factor
COND_CEILING = 1e12
REALNESS_TOL = 1e-8
RESOLVE_TOL = 1e-9

NOTE_RESOLVED = "resolved-to-real"
NOTE_UNRESOLVED = "unresolved-unitary"


@dataclass
class InversionResult:
    """Outcome of a bispectrum inversion."""

    fourier: FourierCoefficients
    signal: GroupSignal | None
    residual_imag: float
    indeterminacy_note: str
    condition_numbers: dict = field(default_factory=dict)
    chain_residual: float = 0.0


def _entry(bisp: BispectrumCoefficients, pair) -> np.ndarray:
    if pair not in bisp.entries:
        raise InvalidParameterError(f"bispectrum is missing the pair {pair}")
    return bisp.entries[pair]


def _scalar(bisp: BispectrumCoefficients, pair) -> complex:
    return complex(_entry(bisp, pair)[0, 0])


def _trivial_coefficient(b00: complex) -> complex:
    # b00 = F0^3 with F0 real for real signals; cube-root the modulus and
    # keep the argument.
    mag = abs(b00) ** (1.0 / 3.0)
    if mag < ZERO_TOL:
        raise NonGenericSignalError("trivial Fourier coefficient is zero")
    return mag * np.exp(1j * np.angle(b00))


def _guard_nonzero(value: complex, label: str) -> complex:
    if abs(value) < ZERO_TOL:
        raise NonGenericSignalError(f"Fourier coefficient {label} vanishes")
    return value


def _assert_generic(coeffs: FourierCoefficients):
    """Genericity postcondition: every recovered coefficient is nonzero
    (invertible).  A violation means the input signal sat outside the
    regime where inversion is defined, so raise instead of returning a
    possibly wrong reconstruction."""
    for label, mat in coeffs.coeffs.items():
        smin = np.linalg.svd(mat, compute_uv=False)[-1]
        if smin < FACTOR_FLOOR:
            raise NonGenericSignalError(
                f"recovered Fourier coefficient {label} is singular; "
                "the signal violates the genericity assumption"
            )


def fix_phase_cyclic(coeffs: FourierCoefficients, n: int):
    """The unique phi in [0, 2*pi/n) such that multiplying F_k by
    exp(i*phi*k) yields the transform of a real signal.

    phi is solved from the k=1 conjugate-symmetry constraint and then
    validated on the realized signal."""
    group = coeffs.group
    if group.kind != f"cyclic:{n}":
        raise InvalidParameterError("coefficients do not live on the expected group")
    irrep_set = irreps_for(group)
    if n == 1:
        return 0.0, coeffs
    f1 = _guard_nonzero(coeffs["rho_1"][0, 0], "rho_1")
    flast = _guard_nonzero(coeffs[f"rho_{n - 1}"][0, 0], f"rho_{n - 1}")
    # e^{i n phi} = conj(F_{n-1}) / F_1
    phi = (-np.angle(flast) - np.angle(f1)) / n
    phi %= 2.0 * np.pi / n
    fixed = {
        f"rho_{k}": coeffs[f"rho_{k}"] * np.exp(1j * phi * k) for k in range(n)
    }
    out = FourierCoefficients(group, fixed)
    z = igft_complex(out, irrep_set)
    if np.linalg.norm(z.imag) > REALNESS_TOL * max(np.linalg.norm(z.real), ZERO_TOL):
        raise InversionFailureError(
            "no phase in [0, 2*pi/n) realizes a real signal; coefficients are inconsistent"
        )
    return float(phi), out


def invert_cyclic(bisp: BispectrumCoefficients, n: int) -> InversionResult:
    """Scalar chain: trivial coefficient, generator modulus, then one new
    coefficient per remaining pair, ending with the phase repair."""
    group = bisp.group
    if group.kind != f"cyclic:{n}":
        raise InvalidParameterError(f"expected cyclic:{n}, got {group.kind}")
    irrep_set = irreps_for(group)
    f = np.zeros(n, dtype=complex)
    f[0] = _trivial_coefficient(_scalar(bisp, ("rho_0", "rho_0")))
    if n > 1:
        ratio = _scalar(bisp, ("rho_0", "rho_1")) / f[0]
        if ratio.real < ZERO_TOL:
            raise NonGenericSignalError("generator Fourier coefficient vanishes")
        f[1] = np.sqrt(ratio.real)
    for k in range(1, n - 1):
        f[k + 1] = np.conj(
            _scalar(bisp, ("rho_1", f"rho_{k}"))
            / (_guard_nonzero(f[1], "rho_1") * _guard_nonzero(f[k], f"rho_{k}"))
        )
    raw = FourierCoefficients(group, {f"rho_{k}": f[k].reshape(1, 1) for k in range(n)})
    _assert_generic(raw)
    phi, fixed = fix_phase_cyclic(raw, n)
    z = igft_complex(fixed, irrep_set)
    signal = GroupSignal(group, z.real)
    return InversionResult(
        fourier=fixed,
        signal=signal,
        residual_imag=float(np.max(np.abs(z.imag))),
        indeterminacy_note=NOTE_RESOLVED,
        condition_numbers={"phase": phi},
    )


def invert_commutative(bisp: BispectrumCoefficients, ns) -> InversionResult:
    """Axis-by-axis chain over the generator lattice, then one phase
    repair per axis (axes of length one are vacuous and skipped)."""
    ns = tuple(int(x) for x in ns)
    group = bisp.group
    labels_by_coord, sizes = _commutative_labels(group)
    if tuple(sizes) != ns:
        raise InvalidParameterError(f"expected axes {ns}, got {sizes}")
    irrep_set = irreps_for(group)
    ndim = len(ns)
    zero = tuple(0 for _ in ns)
    f = {zero: _trivial_coefficient(_scalar(bisp, (labels_by_coord[zero],) * 2))}
    reached = [zero]
    for axis in range(ndim):
        n_axis = ns[axis]
        if n_axis == 1:
            continue
        e = tuple(1 if a == axis else 0 for a in range(ndim))
        ratio = _scalar(bisp, (labels_by_coord[zero], labels_by_coord[e])) / f[zero]
        if ratio.real < ZERO_TOL:
            raise NonGenericSignalError(
                f"generator Fourier coefficient {labels_by_coord[e]} vanishes"
            )
        f[e] = np.sqrt(ratio.real)
        new_reached = []
        for t in range(1, n_axis):
            te = tuple(t if a == axis else 0 for a in range(ndim))
            if t > 1:
                prev = tuple(t - 1 if a == axis else 0 for a in range(ndim))
                f[te] = np.conj(
                    _scalar(bisp, (labels_by_coord[e], labels_by_coord[prev]))
                    / (_guard_nonzero(f[e], str(e)) * _guard_nonzero(f[prev], str(prev)))
                )
            for k in reached:
                if k == zero:
                    continue
                target = tuple((t * ei + ki) % m for ei, ki, m in zip(e, k, ns))
                f[target] = np.conj(
                    _scalar(bisp, (labels_by_coord[te], labels_by_coord[k]))
                    / (_guard_nonzero(f[te], str(te)) * _guard_nonzero(f[k], str(k)))
                )
            new_reached.extend(
                tuple((t * ei + ki) % m for ei, ki, m in zip(e, k, ns)) for k in reached
            )
        reached = reached + new_reached
    # per-axis phase repair from the conjugate-symmetry constraint
    phis = {}
    for axis in range(ndim):
        n_axis = ns[axis]
        if n_axis == 1:
            continue
        e = tuple(1 if a == axis else 0 for a in range(ndim))
        last = tuple(n_axis - 1 if a == axis else 0 for a in range(ndim))
        phi = (-np.angle(f[last]) - np.angle(f[e])) / n_axis
        phis[axis] = phi % (2.0 * np.pi / n_axis)
    coords = np.array(list(f.keys()))
    phase_vec = np.array([phis.get(a, 0.0) for a in range(ndim)])
    fixed = {
        labels_by_coord[tuple(c)]: (f[tuple(c)] * np.exp(1j * float(c @ phase_vec))).reshape(1, 1)
        for c in coords
    }
    out = FourierCoefficients(group, fixed)
    _assert_generic(out)
    z = igft_complex(out, irrep_set)
    if np.linalg.norm(z.imag) > REALNESS_TOL * max(np.linalg.norm(z.real), ZERO_TOL):
        raise InversionFailureError(
            "per-axis phases do not realize a real signal; coefficients are inconsistent"
        )
    return InversionResult(
        fourier=out,
        signal=GroupSignal(group, z.real),
        residual_imag=float(np.max(np.abs(z.imag))),
        indeterminacy_note=NOTE_RESOLVED,
        condition_numbers={f"phase_axis_{a}": p for a, p in phis.items()},
    )


# --- noncommutative chains -------------------------------------------------


def _psd_sqrt(mat: np.ndarray):
    """Hermitian square root with eigenvalues clamped at zero; rejects
    genuinely negative spectra."""
    herm = (mat + mat.conj().T) / 2.0
    eigvals, eigvecs = np.linalg.eigh(herm)
    if eigvals.min() < -1e-8 * max(eigvals.max(), 1.0):
        raise InconsistentInputError(
            "coefficient that must be positive semidefinite has negative eigenvalues"
        )
    eigvals = np.clip(eigvals, 0.0, None)
    if eigvals.min() < ZERO_TOL:
        raise NonGenericSignalError("seed Fourier coefficient is singular")
    return eigvecs @ np.diag(np.sqrt(eigvals)) @ eigvecs.conj().T


def _chain_specs(kind: str):
    """Per-family chain description: seed label and the pair sequence
    consumed after the seed."""
    if kind == "octahedral":
        return "rho_1", [("rho_1", "rho_1"), ("rho_1", "rho_2")]
    if kind == "full_octahedral":
        return "rho_6", [
            ("rho_6", "rho_6"),
            ("rho_1", "rho_2"),
            ("rho_1", "rho_6"),
            ("rho_1", "rho_7"),
        ]
    raise InvalidParameterError(f"no matrix chain for kind {kind!r}")


def _run_matrix_chain(bisp, irrep_set, kt, seed_label, steps, f0, seed_hat):
    """Walk the pair sequence, extracting unknown blocks and collecting
    consistency residuals (off-block mass + known-block mismatch)."""
    known = {"rho_0": np.array([[f0]]), seed_label: seed_hat}
    parts = []
    conds = {}
    for pair in steps:
        fa, fb = known[pair[0]], known[pair[1]]
        sa = np.linalg.svd(fa, compute_uv=False)
        sb = np.linalg.svd(fb, compute_uv=False)
        if min(sa[-1], sb[-1]) < FACTOR_FLOOR:
            raise NonGenericSignalError(
                f"Fourier coefficient feeding pair {pair} is singular"
            )
        cond = (sa[0] / sa[-1]) * (sb[0] / sb[-1])
        conds[f"{pair[0]}x{pair[1]}"] = float(cond)
        if not np.isfinite(cond) or cond > COND_CEILING:
            raise NonGenericSignalError(
                f"tensor factor for pair {pair} is numerically singular"
            )
        cg = get_cg(irrep_set, kt, pair[0], pair[1])
        lhs = np.kron(fa, fb)
        x = (
            cg.matrix.conj().T
            @ np.linalg.solve(lhs, _entry(bisp, pair))
            @ cg.matrix
        ).conj().T
        mask = np.ones(x.shape, dtype=bool)
        for label, sl in zip(cg.blocks, cg.block_slices()):
            mask[sl, sl] = False
            sub = x[sl, sl]
            if label in known:
                parts.append((sub - known[label]).ravel())
            else:
                known[label] = sub
        parts.append(x[mask].ravel())
    vec = np.concatenate(parts) if parts else np.zeros(1, dtype=complex)
    residual = float(np.sum(np.abs(vec) ** 2))
    return known, residual, conds, vec


def _orthogonal_from_angles(angles: np.ndarray, flip: bool, dim: int) -> np.ndarray:
    if dim == 2:
        c, s = np.cos(angles[0]), np.sin(angles[0])
        u = np.array([[c, -s], [s, c]])
        if flip:
            u = u @ np.diag([1.0, -1.0])
        return u
    a, b, g = angles

    def rz(t):
        return np.array([
            [np.cos(t), -np.sin(t), 0.0],
            [np.sin(t), np.cos(t), 0.0],
            [0.0, 0.0, 1.0],
        ])

    ry = np.array([
        [np.cos(b), 0.0, np.sin(b)],
        [0.0, 1.0, 0.0],
        [-np.sin(b), 0.0, np.cos(b)],
    ])
    u = rz(a) @ ry @ rz(g)
    if flip:
        u = u @ np.diag([1.0, 1.0, -1.0])
    return u


def _coarse_angle_grid(dim: int, coarse: int) -> np.ndarray:
    if dim == 2:
        return np.linspace(0.0, 2.0 * np.pi, coarse, endpoint=False).reshape(-1, 1)
    axis = np.linspace(0.0, 2.0 * np.pi, coarse, endpoint=False)
    beta = np.linspace(0.0, np.pi, coarse, endpoint=True)
    a, b, g = np.meshgrid(axis, beta, axis, indexing="ij")
    return np.stack([a.ravel(), b.ravel(), g.ravel()], axis=1)


def _batch_orthogonal(angles: np.ndarray, flip: bool, dim: int) -> np.ndarray:
    if dim == 2:
        t = angles[:, 0]
        u = np.zeros((len(t), 2, 2))
        u[:, 0, 0] = np.cos(t)
        u[:, 0, 1] = -np.sin(t)
        u[:, 1, 0] = np.sin(t)
        u[:, 1, 1] = np.cos(t)
    else:
        a, b, g = angles[:, 0], angles[:, 1], angles[:, 2]
        ca, sa, cb, sb, cg, sg = np.cos(a), np.sin(a), np.cos(b), np.sin(b), np.cos(g), np.sin(g)
        u = np.empty((len(a), 3, 3))
        u[:, 0, 0] = ca * cb * cg - sa * sg
        u[:, 0, 1] = -ca * cb * sg - sa * cg
        u[:, 0, 2] = ca * sb
        u[:, 1, 0] = sa * cb * cg + ca * sg
        u[:, 1, 1] = -sa * cb * sg + ca * cg
        u[:, 1, 2] = sa * sb
        u[:, 2, 0] = -sb * cg
        u[:, 2, 1] = sb * sg
        u[:, 2, 2] = cb
    if flip:
        u = u.copy()
        u[:, :, -1] *= -1.0
    return u


def _first_step_residuals(u_batch: np.ndarray, sqrt_seed: np.ndarray,
                          beta_first: np.ndarray, cg, f0: complex,
                          seed_label: str) -> np.ndarray:
    """Vectorized consistency residual of the first chain step (the seed
    self-pair) for a batch of candidate orthogonal factors."""
    d = sqrt_seed.shape[0]
    k_pre = np.kron(np.linalg.inv(sqrt_seed), np.linalg.inv(sqrt_seed)) @ beta_first
    kc = k_pre @ cg.matrix
    ut = np.transpose(u_batch, (0, 2, 1))
    p = np.einsum("bij,bkl->bikjl", ut, ut).reshape(len(u_batch), d * d, d * d)
    y = np.einsum("ij,bjk,kl->bil", cg.matrix.conj().T, p.astype(complex), kc)
    x = np.conj(np.transpose(y, (0, 2, 1)))
    resid = np.zeros(len(u_batch))
    mask = np.ones((d * d, d * d))
    for label, sl in zip(cg.blocks, cg.block_slices()):
        mask[sl, sl] = 0.0
        sub = x[:, sl, sl]
        if label == "rho_0":
            resid += np.abs(sub[:, 0, 0] - f0) ** 2
        elif label == seed_label:
            target = np.einsum("ij,bjk->bik", sqrt_seed, u_batch.astype(complex))
            resid += np.sum(np.abs(sub - target) ** 2, axis=(1, 2))
    resid += np.sum(np.abs(x * mask) ** 2, axis=(1, 2))
    return resid


def _resolve_unitary(residual_vector, coarse_residuals, dim: int, coarse: int,
                     refine_from: int = 2):
    """Grid + local refinement over O(dim), both determinant signs.

    ``coarse_residuals(u_batch)`` scores the whole grid at once on the
    first chain step; the best candidates are polished with a
    Levenberg-Marquardt fit of the full chain's residual vector.  Ties
    and argmins resolve to the lowest grid index.
    """
    angles = _coarse_angle_grid(dim, coarse)
    best = (np.inf, None, None)
    for flip in (False, True):
        u_batch = _batch_orthogonal(angles, flip, dim)
        scores = coarse_residuals(u_batch)
        order = np.argsort(scores, kind="stable")[:refine_from]
        for idx in order:
            try:
                fit = scipy.optimize.least_squares(
                    lambda v: residual_vector(v, flip),
                    angles[idx],
                    method="lm",
                    xtol=1e-15,
                    ftol=1e-15,
                    gtol=1e-15,
                )
            except NonGenericSignalError:
                continue  # this candidate's chain is singular
            val = float(np.sum(fit.fun ** 2))
            if val < best[0]:
                best = (val, fit.x, flip)
    return best


def _invert_matrix_family(bisp: BispectrumCoefficients, kind: str,
                          coarse: int) -> InversionResult:
    group = bisp.group
    if group.kind != kind:
        raise InvalidParameterError(f"expected {kind}, got {group.kind}")
    irrep_set = irreps_for(group)
    kt = kronecker_table(irrep_set)
    seed_label, steps = _chain_specs(kind)
    f0 = _trivial_coefficient(_scalar(bisp, ("rho_0", "rho_0")))
    seed_sq = _entry(bisp, ("rho_0", seed_label)) / f0
    sqrt_seed = _psd_sqrt(seed_sq)
    dim = irrep_set.by_label(seed_label).dim
    return _resolve_and_finish(bisp, irrep_set, kt, seed_label, steps, f0,
                               sqrt_seed, dim, coarse)


def _resolve_and_finish(bisp, irrep_set, kt, seed_label, steps, f0, sqrt_seed,
                        dim, coarse):
    group = bisp.group
    scale = sum(float(np.sum(np.abs(_entry(bisp, p)) ** 2)) for p in steps) or 1.0

    res_len = None

    def residual_vector(angles, flip):
        nonlocal res_len
        u = _orthogonal_from_angles(angles, flip, dim)
        try:
            _, _, _, vec = _run_matrix_chain(
                bisp, irrep_set, kt, seed_label, steps, f0, sqrt_seed @ u
            )
        except NonGenericSignalError:
            if res_len is None:
                raise  # candidate is skipped by the caller
            return np.full(res_len, 1e6)  # flat penalty of matching shape
        out = np.concatenate([vec.real, vec.imag])
        res_len = out.size
        return out

    cg_first = get_cg(irrep_set, kt, *steps[0])
    beta_first = _entry(bisp, steps[0])

    def coarse_residuals(u_batch):
        return _first_step_residuals(u_batch, sqrt_seed, beta_first, cg_first,
                                     f0, seed_label)

    value, angles, flip = _resolve_unitary(residual_vector, coarse_residuals,
                                           dim, coarse)
    if angles is None:
        raise NonGenericSignalError("the recovery chain is singular for every factor")
    u = _orthogonal_from_angles(angles, flip, dim)
    known, residual, conds, _ = _run_matrix_chain(
        bisp, irrep_set, kt, seed_label, steps, f0, sqrt_seed @ u
    )
    coeffs = FourierCoefficients(
        group, {label: np.asarray(mat, dtype=complex) for label, mat in known.items()}
    )
    _assert_generic(coeffs)
    z = igft_complex(coeffs, irrep_set)
    relative = residual / scale
    resolved = relative < RESOLVE_TOL
    signal = GroupSignal(group, z.real) if resolved else None
    return InversionResult(
        fourier=coeffs,
        signal=signal,
        residual_imag=float(np.max(np.abs(z.imag))),
        indeterminacy_note=NOTE_RESOLVED if resolved else NOTE_UNRESOLVED,
        condition_numbers=conds,
        chain_residual=float(relative),
    )


def _dihedral_steps(n: int):
    return [("rho_1", f"rho_{k}") for k in range(1, (n - 1) // 2 + 1)]


def invert_dihedral(bisp: BispectrumCoefficients, n: int,
                    coarse: int = 720) -> InversionResult:
    """Matrix chain for the dihedral group of the n-gon (n > 2): the seed
    2x2 coefficient is recovered up to a factor in O(2), resolved by the
    chain-consistency search."""
    if n <= 2:
        raise InvalidParameterError("dihedral n <= 2 inverts through the commutative path")
    group = bisp.group
    if group.kind != f"dihedral:{n}":
        raise InvalidParameterError(f"expected dihedral:{n}, got {group.kind}")
    irrep_set = irreps_for(group)
    kt = kronecker_table(irrep_set)
    steps = _dihedral_steps(n)
    f0 = _trivial_coefficient(_scalar(bisp, ("rho_0", "rho_0")))
    seed_sq = _entry(bisp, ("rho_0", "rho_1")) / f0
    sqrt_seed = _psd_sqrt(seed_sq)
    return _resolve_and_finish(bisp, irrep_set, kt, "rho_1", steps, f0,
                               sqrt_seed, 2, coarse)


def invert_octahedral(bisp: BispectrumCoefficients, coarse: int = 24) -> InversionResult:
    return _invert_matrix_family(bisp, "octahedral", coarse)


def invert_full_octahedral(bisp: BispectrumCoefficients, coarse: int = 24) -> InversionResult:
    return _invert_matrix_family(bisp, "full_octahedral", coarse)


def invert(bisp: BispectrumCoefficients) -> InversionResult:
    """Dispatch on the group family."""
    family = bisp.group.family
    if family == "cyclic":
        return invert_cyclic(bisp, bisp.group.params[0])
    if family == "commutative":
        return invert_commutative(bisp, bisp.group.params)
    if family == "dihedral":
        return invert_dihedral(bisp, bisp.group.params[0])
    if family == "octahedral":
        return invert_octahedral(bisp)
    if family == "full_octahedral":
        return invert_full_octahedral(bisp)
    raise InvalidParameterError(f"no inversion for family {family!r}")


def plan_for(bisp: BispectrumCoefficients) -> SelectionPlan:
    """The canonical plan whose pairs an inversion of this group consumes."""
    irrep_set = irreps_for(bisp.group)
    return selection_plan(kronecker_table(irrep_set), irrep_set)
