"""Pheromone-guided tour construction with a spanning-tree bias.

Successor choice is the product rule

    p(i -> j)  ~  tau_ij^alpha * (1/d_ij)^beta * psi_ij^gamma

where psi_ij = omega >= 1 on backbone (MST) edges and 1 elsewhere; omega = 1
switches the bias off.  After each iteration the trail field evaporates by
(1 - rho) and the best tour of each subset's colony deposits

    q_scale / L * (1 + kappa * [edge on the backbone])

on its edges.  kappa = 0 recovers plain ant-colony deposits, so the classic
algorithm is a parameter setting of this module, not a separate code path.

Sampling inverts the cumulative score sum with one uniform draw per step;
the draw is clamped strictly below the total so the final positive-score
candidate absorbs residual rounding mass and a visited node can never be
re-selected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .objective import tour_length


@dataclass(frozen=True)
class AcoParams:
    alpha: float = 1.0
    beta: float = 2.0
    gamma: float = 1.0
    rho: float = 0.1
    q_scale: float = 1.0
    kappa: float = 1.0
    n_ants: int = 50
    max_iter: int = 1000

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0 or self.gamma <= 0:
            raise ValueError("alpha, beta, gamma must be positive")
        if not 0.0 < self.rho <= 1.0:
            raise ValueError("rho must lie in (0, 1]")
        if self.q_scale <= 0:
            raise ValueError("q_scale must be positive")
        if self.kappa < 0:
            raise ValueError("kappa must be non-negative")
        if self.n_ants < 1 or self.max_iter < 1:
            raise ValueError("n_ants and max_iter must be at least 1")

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "rho": self.rho,
            "q_scale": self.q_scale,
            "kappa": self.kappa,
            "n_ants": self.n_ants,
            "max_iter": self.max_iter,
        }


@dataclass(frozen=True)
class StructuralBias:
    """Backbone edge set plus the multiplicative weight it earns."""

    omega: float
    backbone_edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.omega < 1.0:
            raise ValueError("omega must be at least 1")
        for u, v in self.backbone_edges:
            if not u < v:
                raise ValueError("backbone edges must be canonical (u < v)")

    def psi(self, i: int, j: int) -> float:
        key = (i, j) if i < j else (j, i)
        return self.omega if key in self.backbone_edges else 1.0


@dataclass(frozen=True)
class Tour:
    """Closed tour: visiting order plus cached length."""

    order: tuple[int, ...]
    length: float

    @cached_property
    def _edges(self) -> frozenset[tuple[int, int]]:
        if len(self.order) < 2:
            return frozenset()
        pairs = zip(self.order, self.order[1:] + self.order[:1])
        return frozenset((a, b) if a < b else (b, a) for a, b in pairs)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        """Unordered edges traversed, closing edge included."""
        return self._edges


def init_pheromone(dim: int, tau0: float) -> np.ndarray:
    """Uniform trail field with a zero diagonal."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    if tau0 <= 0:
        raise ValueError("tau0 must be positive")
    tau = np.full((dim, dim), float(tau0))
    np.fill_diagonal(tau, 0.0)
    return tau


def transition_probabilities(
    i: int,
    candidates,
    tau: np.ndarray,
    d: np.ndarray,
    bias: StructuralBias,
    params: AcoParams,
) -> np.ndarray:
    """Normalised successor probabilities from ``i``, aligned with ``candidates``."""
    cand = np.asarray(list(candidates), dtype=np.int64)
    if cand.size == 0:
        raise ValueError("no candidates")
    if np.any(cand == i):
        raise ValueError("current node cannot be its own successor")
    dist = d[i, cand]
    if np.any(dist <= 0):
        raise ValueError(
            f"zero distance from node {i} to a candidate: degenerate geometry"
        )
    psi = np.array([bias.psi(i, int(j)) for j in cand])
    scores = (
        tau[i, cand] ** params.alpha
        * (1.0 / dist) ** params.beta
        * psi ** params.gamma
    )
    total = scores.sum()
    if not total > 0:
        raise ValueError(f"all successor scores vanished at node {i}")
    return scores / total


def _roulette_index(cum: np.ndarray, u: float) -> int:
    """Index whose cumulative-mass interval contains u * total."""
    total = float(cum[-1])
    if not total > 0:
        raise ValueError("cannot sample from zero total mass")
    target = min(u * total, np.nextafter(total, -np.inf))
    return int(np.searchsorted(cum, target, side="right"))


def construct_tour(
    subset,
    start: int,
    tau: np.ndarray,
    d: np.ndarray,
    bias: StructuralBias,
    params: AcoParams,
    rng: np.random.Generator,
) -> Tour:
    """One ant's closed tour over ``subset`` starting at ``start``.

    Consumes exactly ``len(subset) - 1`` uniform draws.  Construction never
    leaves the subset.
    """
    nodes = sorted(int(v) for v in set(subset))
    if int(start) not in nodes:
        raise ValueError("start must belong to the subset")
    remaining = [v for v in nodes if v != int(start)]
    order = [int(start)]
    cur = int(start)
    while remaining:
        probs = transition_probabilities(cur, remaining, tau, d, bias, params)
        idx = _roulette_index(np.cumsum(probs), rng.random())
        cur = remaining.pop(idx)
        order.append(cur)
    return Tour(tuple(order), tour_length(order, d))


def deposit_amount(edge, tour: Tour, backbone_edges, params: AcoParams) -> float:
    """Trail added to one edge by one tour: q/L, doubled up by kappa on the backbone."""
    u, v = edge
    key = (u, v) if u < v else (v, u)
    if len(tour.order) < 2 or key not in tour.edge_set():
        return 0.0
    bonus = params.kappa if key in backbone_edges else 0.0
    return params.q_scale / tour.length * (1.0 + bonus)


def update_pheromones(
    tau: np.ndarray,
    tours,
    backbones,
    params: AcoParams,
) -> np.ndarray:
    """Evaporate the whole field, then deposit from each subset's tour.

    ``backbones`` pairs with ``tours``: one backbone edge set per subset.
    Single-node tours deposit nothing.  The field is updated in place and
    returned.
    """
    if len(tours) != len(backbones):
        raise ValueError("one backbone edge set per tour required")
    tau *= 1.0 - params.rho
    for tour, backbone_edges in zip(tours, backbones):
        if len(tour.order) < 2:
            continue
        for edge in sorted(tour.edge_set()):
            amount = deposit_amount(edge, tour, backbone_edges, params)
            tau[edge[0], edge[1]] += amount
            tau[edge[1], edge[0]] += amount
    return tau


class SubsetColony:
    """Vectorised construction of a whole colony's tours over one subset.

    Works in local index space.  The static score factor
    (1/d)^beta * psi^gamma is precomputed; per iteration only tau changes.
    Each ant's uniform draws arrive as one row of ``uniforms``: draw 0 picks
    the start, the rest drive successor roulette, so every ant consumes the
    same stream shape regardless of scheduling.
    """

    def __init__(
        self,
        nodes,
        d: np.ndarray,
        backbone_edges,
        omega: float,
        params: AcoParams,
    ):
        self.nodes = np.asarray(sorted(int(v) for v in set(nodes)), dtype=np.int64)
        self.n_local = len(self.nodes)
        self.params = params
        self.backbone_edges = frozenset(backbone_edges)
        self._local_of = {int(v): k for k, v in enumerate(self.nodes)}

        self.dist = d[np.ix_(self.nodes, self.nodes)].copy()
        off_diag = ~np.eye(self.n_local, dtype=bool)
        if np.any(self.dist[off_diag] <= 0):
            raise ValueError("zero distance inside subset: degenerate geometry")
        safe = self.dist + np.eye(self.n_local)
        eta = 1.0 / safe
        np.fill_diagonal(eta, 0.0)
        weight = eta ** params.beta
        if omega != 1.0:
            boost = omega ** params.gamma
            for u, v in self.backbone_edges:
                lu, lv = self._local_of[u], self._local_of[v]
                weight[lu, lv] *= boost
                weight[lv, lu] *= boost
        self.weight = weight

    def local_tau(self, tau: np.ndarray) -> np.ndarray:
        sub = tau[np.ix_(self.nodes, self.nodes)]
        if self.params.alpha == 1.0:
            return sub
        return sub ** self.params.alpha

    def construct_colony(
        self,
        tau_local: np.ndarray,
        uniforms: np.ndarray,
        start_local: int | None = None,
    ) -> tuple[np.ndarray, np.ndarray]:
        """All ants' tours for one iteration.

        ``uniforms`` is (n_ants, n_local).  Returns (orders, lengths) with
        orders in local indices, one row per ant.
        """
        na, nl = uniforms.shape
        if nl != self.n_local:
            raise ValueError("uniform block width must equal the subset size")
        orders = np.empty((na, nl), dtype=np.int64)
        visited = np.zeros((na, nl), dtype=bool)
        rows = np.arange(na)

        if start_local is None:
            cur = np.minimum((uniforms[:, 0] * nl).astype(np.int64), nl - 1)
        else:
            cur = np.full(na, int(start_local), dtype=np.int64)
        orders[:, 0] = cur
        visited[rows, cur] = True

        score_tau = tau_local * self.weight
        for step in range(1, nl):
            scores = score_tau[cur]
            scores[visited] = 0.0
            cum = np.cumsum(scores, axis=1)
            total = cum[:, -1]
            if not np.all(total > 0):
                raise ValueError("all successor scores vanished during construction")
            target = np.minimum(uniforms[:, step] * total, np.nextafter(total, -np.inf))
            nxt = (cum <= target[:, None]).sum(axis=1)
            orders[:, step] = nxt
            visited[rows, nxt] = True
            cur = nxt

        if nl == 1:
            lengths = np.zeros(na)
        else:
            lengths = self.dist[orders[:, :-1], orders[:, 1:]].sum(axis=1)
            lengths = lengths + self.dist[orders[:, -1], orders[:, 0]]
        return orders, lengths

    def to_global(self, local_order: np.ndarray) -> tuple[int, ...]:
        return tuple(int(v) for v in self.nodes[local_order])
