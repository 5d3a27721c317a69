"""Payload-constrained change probabilities and simulated ternary embedding.

Given a cost map, each coefficient changes by +1 or -1 with probability
p = exp(-lambda * rho) / (1 + 2 * exp(-lambda * rho)), with lambda chosen so
the total ternary entropy matches the requested payload. The simulator then
draws position-keyed uniforms and applies the changes, so a (cover, seed) pair
always produces the same stego container.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .container import DctContainer
from .costmap import CostMap, CostParams
from .rng import uniform_grid

LOG2_3 = float(np.log2(3.0))
ENTROPY_TOL_BITS = 1.0e-3
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class ProbMap:
    p: np.ndarray             # per-coefficient probability of one signed change
    lam: float                # Gibbs multiplier found by the solver
    target_payload: float     # bits
    achieved_payload: float   # bits


def ternary_entropy(p) -> np.ndarray:
    """Entropy in bits of a (+1, -1, keep) choice with P(+1) = P(-1) = p.

    Vectorized, with the 0 * log(0) limits handled so p = 0 gives 0 and
    p = 1/3 gives log2(3).
    """
    p = np.asarray(p, dtype=np.float64)
    if np.any(p < 0.0) or np.any(p > 0.5):
        raise ValueError("change probabilities must lie in [0, 0.5]")
    keep = 1.0 - 2.0 * p
    out = np.zeros_like(p)
    m = p > 0.0
    out[m] = -2.0 * p[m] * np.log2(p[m])
    m = keep > 0.0
    out[m] -= keep[m] * np.log2(keep[m])
    return out


def _probabilities(rho: np.ndarray, lam: float, wet: np.ndarray) -> np.ndarray:
    e = np.exp(-lam * rho)
    p = e / (1.0 + 2.0 * e)
    p[wet] = 0.0
    return p


def solve_lambda(cm: CostMap, payload_bpnzac: float, params: CostParams | None = None) -> ProbMap:
    """Find lambda so total entropy = payload_bpnzac * nzac bits.

    The root is bracketed by doubling from [0, 1] (total entropy decreases in
    lambda) and then bisected until the entropy is within 1e-3 bits of the
    target. Wet entries, identified by cost at or above the wet cost, are
    pinned to p = 0 throughout. Raises ValueError for payloads outside
    (0, log2 3) and for targets no lambda can reach.
    """
    if params is None:
        params = CostParams()
    if not 0.0 < payload_bpnzac < LOG2_3:
        raise ValueError(
            f"payload must be in (0, log2 3) bits per nonzero AC coefficient, "
            f"got {payload_bpnzac}"
        )
    if cm.nzac <= 0:
        raise ValueError("cover has no nonzero AC coefficients to carry payload")
    rho = cm.rho
    wet = rho >= params.wet_cost
    target = payload_bpnzac * cm.nzac
    capacity = float(np.count_nonzero(~wet)) * LOG2_3

    def total_entropy(lam: float) -> float:
        return float(np.sum(ternary_entropy(_probabilities(rho, lam, wet))))

    if target > capacity:
        raise ValueError(
            f"target of {target:.3f} bits exceeds the ternary capacity "
            f"{capacity:.3f} bits of the non-wet coefficients"
        )
    lo, hi = 0.0, 1.0
    iterations = 0
    while total_entropy(hi) > target:
        lo, hi = hi, hi * 2.0
        iterations += 1
        if iterations > MAX_ITERATIONS:
            raise ValueError("could not bracket the requested payload")
    lam, achieved = hi, total_entropy(hi)
    for _ in range(MAX_ITERATIONS):
        if abs(achieved - target) <= ENTROPY_TOL_BITS:
            break
        mid = 0.5 * (lo + hi)
        value = total_entropy(mid)
        if value > target:
            lo = mid
        else:
            hi = mid
        lam, achieved = mid, value
    if abs(achieved - target) > ENTROPY_TOL_BITS:
        raise ValueError(
            f"solver did not reach the target within {ENTROPY_TOL_BITS} bits "
            f"(got {achieved:.6f} vs {target:.6f})"
        )
    return ProbMap(
        p=_probabilities(rho, lam, wet),
        lam=lam,
        target_payload=target,
        achieved_payload=achieved,
    )


def expected_changes(pm: ProbMap) -> tuple[float, float]:
    """Mean and standard deviation of the number of changed coefficients."""
    q = 2.0 * pm.p
    return float(np.sum(q)), float(np.sqrt(np.sum(q * (1.0 - q))))


def simulate(pm: ProbMap, c: DctContainer, seed: int) -> DctContainer:
    """Apply random +-1 changes according to the probability map.

    Position (r, col) draws one uniform u keyed by (seed, r, col) and changes
    by -1 if u < p, by +1 if p <= u < 2p, otherwise keeps the coefficient.
    Wet positions have p = 0 and are never touched.
    """
    if pm.p.shape != c.coeffs.shape:
        raise ValueError(
            f"probability map shape {pm.p.shape} does not match coefficients "
            f"{c.coeffs.shape}"
        )
    u = uniform_grid(seed, c.height, c.width)
    delta = np.where(u < pm.p, -1, np.where(u < 2.0 * pm.p, 1, 0)).astype(np.int64)
    return DctContainer(
        height=c.height,
        width=c.width,
        quant=c.quant.copy(),
        coeffs=c.coeffs + delta,
    )
