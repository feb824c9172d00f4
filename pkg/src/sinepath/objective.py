"""Route-set quality: closed-tour lengths, the scalarized trade-off, overlap.

The solver minimises J = lambda * sum(L_k) + (1 - lambda) * max(L_k) over the
per-robot closed tour lengths L_k.  lambda = 1 recovers the pure total, 0 the
pure bottleneck.  Disjoint node subsets make inter-robot edge overlap zero by
construction; the penalised variant J' = J + mu * sum(overlaps) exists for
configurations that relax disjointness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def tour_length(order, d: np.ndarray) -> float:
    """Length of the closed tour visiting ``order`` and returning to its start.

    A single-node tour has length 0; a two-node tour traverses its edge twice.
    """
    idx = np.asarray(order, dtype=np.int64)
    if idx.size == 0:
        raise ValueError("empty tour")
    if idx.size == 1:
        return 0.0
    return float(d[idx[:-1], idx[1:]].sum() + d[idx[-1], idx[0]])


def scalarized_objective(lengths, lam: float) -> float:
    """J = lam * total + (1 - lam) * max over per-robot lengths."""
    arr = np.asarray(lengths, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("no tour lengths")
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    return float(lam * arr.sum() + (1.0 - lam) * arr.max())


def lambda_sensitivity(lengths) -> float:
    """dJ/dlambda = total - max; J is affine in lambda for fixed tours."""
    arr = np.asarray(lengths, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("no tour lengths")
    return float(arr.sum() - arr.max())


def edge_overlap(a, b) -> int:
    """Number of unordered edges shared by two closed tours."""
    return len(a.edge_set() & b.edge_set())


def pairwise_overlap_total(tours) -> int:
    """Sum of edge_overlap over all unordered tour pairs."""
    total = 0
    for i in range(len(tours)):
        for j in range(i + 1, len(tours)):
            total += edge_overlap(tours[i], tours[j])
    return total


def penalized_objective(lengths, lam: float, overlaps, mu: float) -> float:
    """J' = J + mu * sum(pairwise overlaps); mu = 0 recovers J exactly."""
    if mu < 0.0:
        raise ValueError("mu must be non-negative")
    return scalarized_objective(lengths, lam) + mu * float(np.sum(overlaps))


@dataclass(frozen=True)
class Objectives:
    """Evaluated quality of one tour collection."""

    per_robot: tuple[float, ...]
    total: float
    max_single: float
    lambda_weight: float
    j_value: float
    overlap_total: int
    mu: float
    j_prime: float

    def to_dict(self) -> dict:
        return {
            "per_robot": list(self.per_robot),
            "total": self.total,
            "max_single": self.max_single,
            "lambda_weight": self.lambda_weight,
            "j_value": self.j_value,
            "overlap_total": self.overlap_total,
            "mu": self.mu,
            "j_prime": self.j_prime,
        }


def evaluate_objectives(tours, lambda_weight: float, mu: float = 0.0) -> Objectives:
    """Objectives for a collection of tours carrying .length and .edge_set()."""
    lengths = tuple(float(t.length) for t in tours)
    overlap = pairwise_overlap_total(tours)
    j = scalarized_objective(lengths, lambda_weight)
    return Objectives(
        per_robot=lengths,
        total=float(np.sum(lengths)),
        max_single=float(np.max(lengths)),
        lambda_weight=lambda_weight,
        j_value=j,
        overlap_total=overlap,
        mu=mu,
        j_prime=j + mu * overlap,
    )
