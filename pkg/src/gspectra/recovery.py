"""First-order recovery of a signal from a target selective bispectrum,
plus the max-pooling counterexample.

The loss is the squared distance between selective bispectra.  On
commutative groups the coefficients are cubic polynomials of the signal
through the linear transform, so the gradient is available in closed
form; gradient descent with Armijo backtracking then recovers the target
up to a group translation from a good restart.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .groups import FiniteGroup, GroupSignal, random_signal
from .spectra import (
    BispectrumCoefficients,
    SelectionPlan,
    _commutative_labels,
    _is_commutative_family,
)


@dataclass(frozen=True)
class RecoveryConfig:
    max_iters: int = 5000
    grad_tol: float = 1e-8
    armijo_step: float = 1.0
    armijo_backtrack: float = 0.5
    armijo_decrease: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.armijo_backtrack < 1.0:
            raise InvalidParameterError("backtrack factor must be inside (0, 1)")
        if not 0.0 < self.armijo_decrease < 1.0:
            raise InvalidParameterError("decrease constant must be inside (0, 1)")


class _CommutativePairs:
    """Precomputed index arrays for a plan on a commutative group:
    characters, pair indices, and product indices."""

    def __init__(self, plan: SelectionPlan):
        group = plan.group
        if not _is_commutative_family(group):
            raise InvalidParameterError("analytic recovery requires a commutative group")
        labels_by_coord, sizes = _commutative_labels(group)
        coord_by_label = {v: k for k, v in labels_by_coord.items()}
        coords = list(labels_by_coord.keys())
        index = {c: i for i, c in enumerate(coords)}
        arr = np.array(coords)          # (|G|, L)
        scale = 2j * np.pi / np.array(sizes)
        # w[k, g] = value of irrep k at element g
        self.w = np.exp(np.einsum("kl,gl->kg", arr * scale, arr.astype(float)))
        self.j = np.array([index[coord_by_label[p[0]]] for p in plan.pairs])
        self.k = np.array([index[coord_by_label[p[1]]] for p in plan.pairs])
        self.m = np.array([
            index[tuple((a + b) % n for a, b, n in
                        zip(coord_by_label[p[0]], coord_by_label[p[1]], sizes))]
            for p in plan.pairs
        ])
        self.plan = plan

    def transform(self, values: np.ndarray) -> np.ndarray:
        return self.w.conj() @ values

    def coefficients(self, values: np.ndarray) -> np.ndarray:
        f = self.transform(values)
        return f[self.j] * f[self.k] * f[self.m].conj()


def _target_vector(target: BispectrumCoefficients, plan: SelectionPlan) -> np.ndarray:
    if target.group != plan.group or tuple(target.pairs) != tuple(plan.pairs):
        raise InvalidParameterError("target bispectrum does not match the plan")
    return np.array([target.entries[p][0, 0] for p in plan.pairs])


def recovery_loss(signal: GroupSignal, target: BispectrumCoefficients,
                  plan: SelectionPlan) -> float:
    """Squared distance between the signal's selective bispectrum and the
    target, summed over the plan's pairs."""
    pairs = _CommutativePairs(plan)
    if signal.group != plan.group:
        raise InvalidParameterError("signal and plan live on different groups")
    delta = pairs.coefficients(signal.values) - _target_vector(target, plan)
    return float(np.sum(np.abs(delta) ** 2))


def recovery_gradient(signal: GroupSignal, target: BispectrumCoefficients,
                      plan: SelectionPlan) -> np.ndarray:
    """Closed-form gradient of recovery_loss in the signal values."""
    pairs = _CommutativePairs(plan)
    return _loss_and_grad(pairs, signal.values, _target_vector(target, plan))[1]


def _loss_and_grad(pairs: _CommutativePairs, values: np.ndarray,
                   target: np.ndarray):
    f = pairs.transform(values)
    beta = f[pairs.j] * f[pairs.k] * f[pairs.m].conj()
    r = beta - target
    loss = float(np.sum(np.abs(r) ** 2))
    # d beta / d theta_g = wbar[j,g] f_k fbar_m + f_j wbar[k,g] fbar_m + f_j f_k w[m,g]
    wc = pairs.w.conj()
    coef_j = r.conj() * f[pairs.k] * f[pairs.m].conj()
    coef_k = r.conj() * f[pairs.j] * f[pairs.m].conj()
    coef_m = r.conj() * f[pairs.j] * f[pairs.k]
    grad = (
        coef_j @ wc[pairs.j]
        + coef_k @ wc[pairs.k]
        + coef_m @ pairs.w[pairs.m]
    )
    return loss, 2.0 * grad.real


def recover(target: BispectrumCoefficients, plan: SelectionPlan,
            cfg: RecoveryConfig, init: GroupSignal):
    """Gradient descent with Armijo backtracking from ``init``.

    Returns the final iterate and the (nonincreasing) loss trace."""
    pairs = _CommutativePairs(plan)
    if init.group != plan.group:
        raise InvalidParameterError("initial signal and plan live on different groups")
    tvec = _target_vector(target, plan)
    x = init.values.copy()
    loss, grad = _loss_and_grad(pairs, x, tvec)
    trace = [loss]
    step0 = cfg.armijo_step
    prev_x = None
    prev_grad = None
    for it in range(cfg.max_iters):
        gnorm_sq = float(np.dot(grad, grad))
        if np.sqrt(gnorm_sq) <= cfg.grad_tol:
            break
        # Alternating Barzilai-Borwein trial step (spectral initial step
        # for the line search); the backtracking below keeps every
        # accepted step monotone with sufficient decrease.
        if prev_x is not None:
            s = x - prev_x
            y = grad - prev_grad
            sy = float(np.dot(s, y))
            if sy > 1e-30:
                if it % 2 == 0:
                    step0 = float(np.dot(s, s)) / sy
                else:
                    step0 = sy / float(np.dot(y, y))
                step0 = min(max(step0, 1e-12), 1e8)
        step = step0
        accepted = False
        while step >= 1e-18:
            candidate = x - step * grad
            new_loss, new_grad = _loss_and_grad(pairs, candidate, tvec)
            if new_loss <= loss - cfg.armijo_decrease * step * gnorm_sq:
                accepted = True
                break
            step *= cfg.armijo_backtrack
        if not accepted:
            break
        prev_x, prev_grad = x, grad
        x, loss, grad = candidate, new_loss, new_grad
        trace.append(loss)
    if any(b > a + 1e-12 for a, b in zip(trace, trace[1:])):
        raise RuntimeError("loss trace is not monotone; line search is broken")
    return GroupSignal(plan.group, x), trace


def recover_multistart(target: BispectrumCoefficients, plan: SelectionPlan,
                       cfg: RecoveryConfig, restarts: int = 5,
                       init_scale: float = 1.0):
    """Independent restarts from deterministic random initializations;
    returns the list of (signal, trace) per restart."""
    runs = []
    for r in range(restarts):
        rng = np.random.default_rng(cfg.seed + 1000 * r)
        init = GroupSignal(plan.group,
                           init_scale * rng.standard_normal(plan.group.order))
        runs.append(recover(target, plan, cfg, init))
    return runs


def generic_signal(group: FiniteGroup, seed: int, floor: float = 0.8) -> GroupSignal:
    """A standard-normal random signal resampled until every Fourier
    modulus clears ``floor``.

    First-order recovery degrades sharply as a modulus approaches zero (a
    near violation of the genericity assumption behind completeness);
    sampling with an explicit margin keeps the experiment inside the
    regime the theory covers."""
    from .fourier import gft
    from .irreps import irreps_for

    irrep_set = irreps_for(group)
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        sig = GroupSignal(group, rng.standard_normal(group.order))
        coeffs = gft(sig, irrep_set)
        if min(np.linalg.svd(coeffs[rho.label], compute_uv=False)[-1]
               for rho in irrep_set) >= floor:
            return sig
    raise RuntimeError("could not sample a signal with the requested margin")


def max_pool_attack(target_value: float, group: FiniteGroup,
                    cfg: RecoveryConfig) -> GroupSignal:
    """A signal whose maximum equals ``target_value`` but which lies far
    from the orbit of the reference signal with the same maximum
    (random_signal(group, cfg.seed) rescaled so its max is target_value).

    Demonstrates that max pooling is excessively invariant: equal pooled
    outputs, different signal structure."""
    from .groups import orbit_distance

    reference = attack_reference(target_value, group, cfg)
    floor = 0.1 * reference.norm()
    rng = np.random.default_rng(cfg.seed + 1)
    order = np.argsort(reference.values)
    below = order[:-1]
    for attempt in range(64):
        values = reference.values.copy()
        perm = below[::-1] if attempt == 0 else rng.permutation(below)
        values[below] = reference.values[perm]
        attack = GroupSignal(group, values)
        if orbit_distance(attack, reference) > floor:
            return attack
    return attack  # tiny groups: the best permutation found


def attack_reference(target_value: float, group: FiniteGroup,
                     cfg: RecoveryConfig) -> GroupSignal:
    """The reference signal the attack is compared against."""
    base = random_signal(group, cfg.seed)
    values = base.values * (target_value / np.max(base.values))
    values[np.argmax(values)] = target_value  # exact, not rounded
    return GroupSignal(group, values)
