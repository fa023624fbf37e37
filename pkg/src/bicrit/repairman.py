"""The breakpoint construction on tours: TSP length versus weighted latency.

A latency-optimal tour plays the role of the average-completion schedule and
an optimal TSP cycle the role of the makespan schedule. The composed tour
follows the latency tour up to distance ``t``, then walks the TSP cycle from
where it left off, shortcutting vertices already visited.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import BicriteriaPoint, as_fraction
from .errors import DegenerateError, DomainError, OracleSizeError

TSP_MAX = 13
LATENCY_MAX = 9
POINT_DENOMINATOR = 10**6


@dataclass(frozen=True)
class MetricInstance:
    dist: tuple[tuple[Fraction, ...], ...]
    start: int = 0
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        d = tuple(tuple(as_fraction(x) for x in row) for row in self.dist)
        n = len(d)
        w = self.weights if self.weights is not None else [1] * n
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "weights", tuple(as_fraction(x) for x in w))
        if n == 0 or any(len(row) != n for row in d):
            raise DomainError("distance matrix must be square and non-empty")
        if len(self.weights) != n:
            raise DomainError("need one weight per vertex")
        if not 0 <= self.start < n:
            raise DomainError("start vertex out of range")
        if any(x < 0 for x in self.weights):
            raise DomainError("negative vertex weight")
        for a in range(n):
            if d[a][a] != 0:
                raise DomainError(f"d({a},{a}) is not zero")
            for b in range(n):
                if d[a][b] < 0 or d[a][b] != d[b][a]:
                    raise DomainError(f"d({a},{b}) is negative or asymmetric")
        for a, b, c in itertools.product(range(n), repeat=3):
            if d[a][c] > d[a][b] + d[b][c]:
                raise DomainError(f"triangle inequality fails for ({a},{b},{c})")

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]], start: int = 0,
                    weights: Sequence | None = None) -> "MetricInstance":
        """Euclidean metric rounded to multiples of 1e-6.

        Rounding can break the triangle inequality by a few units in the last
        place, so the rounded matrix is replaced by its shortest-path closure.
        """
        n = len(points)
        d = [[Fraction(round(math.dist(p, q) * POINT_DENOMINATOR), POINT_DENOMINATOR)
              for q in points] for p in points]
        for k in range(n):
            for a in range(n):
                for b in range(n):
                    if d[a][k] + d[k][b] < d[a][b]:
                        d[a][b] = d[a][k] + d[k][b]
        return cls(tuple(map(tuple, d)), start, None if weights is None else tuple(weights))

    @property
    def n(self) -> int:
        return len(self.dist)

    def scaled(self) -> tuple[int, list[list[int]], int, list[int]]:
        """Integer copies of distances and weights with their scale factors."""
        dd = math.lcm(1, *(x.denominator for row in self.dist for x in row))
        wd = math.lcm(1, *(x.denominator for x in self.weights))
        return (dd, [[int(x * dd) for x in row] for row in self.dist],
                wd, [int(x * wd) for x in self.weights])


@dataclass(frozen=True)
class Tour:
    metric: MetricInstance = field(repr=False)
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(self.metric.n)):
            raise DomainError("tour must visit every vertex exactly once")
        if self.order[0] != self.metric.start:
            raise DomainError("tour must begin at the start vertex")

    @property
    def prefix_distances(self) -> dict[int, Fraction]:
        d = self.metric.dist
        c = {self.order[0]: Fraction(0)}
        for a, b in zip(self.order, self.order[1:]):
            c[b] = c[a] + d[a][b]
        return c

    @property
    def open_length(self) -> Fraction:
        return self.prefix_distances[self.order[-1]]

    @property
    def length(self) -> Fraction:
        """Closed length, returning to the start."""
        return self.open_length + self.metric.dist[self.order[-1]][self.order[0]]

    @property
    def latency(self) -> Fraction:
        w = self.metric.weights
        return sum((w[v] * c for v, c in self.prefix_distances.items()), Fraction(0))


def tsp_opt(M: MetricInstance) -> tuple[Fraction, Tour]:
    """Shortest closed tour by Held-Karp dynamic programming over subsets."""
    n = M.n
    if n > TSP_MAX:
        raise OracleSizeError(f"tsp_opt limited to n <= {TSP_MAX}")
    s = M.start
    others = [v for v in range(n) if v != s]
    if not others:
        return Fraction(0), Tour(M, (s,))
    den, d, _, _ = M.scaled()
    k = len(others)
    full = (1 << k) - 1
    INF = math.inf
    cost = [[INF] * k for _ in range(1 << k)]
    parent = [[-1] * k for _ in range(1 << k)]
    for i, v in enumerate(others):
        cost[1 << i][i] = d[s][v]
    for mask in range(1, 1 << k):
        row = cost[mask]
        for last in range(k):
            base = row[last]
            if base == INF:
                continue
            u = others[last]
            for nxt in range(k):
                if mask >> nxt & 1:
                    continue
                nm = mask | 1 << nxt
                c = base + d[u][others[nxt]]
                if c < cost[nm][nxt]:
                    cost[nm][nxt] = c
                    parent[nm][nxt] = last
    best, last = min((cost[full][i] + d[others[i]][s], i) for i in range(k))
    path = []
    mask = full
    while last != -1:
        path.append(others[last])
        mask, last = mask ^ (1 << last), parent[mask][last]
    return Fraction(best, den), Tour(M, (s, *reversed(path)))


def repairman_opt(M: MetricInstance) -> tuple[Fraction, Tour]:
    """Minimum weighted latency over all visiting orders (first order wins ties)."""
    n = M.n
    if n > LATENCY_MAX:
        raise OracleSizeError(f"repairman_opt limited to n <= {LATENCY_MAX}")
    s = M.start
    dd, d, wd, w = M.scaled()
    best, best_order = None, None
    for perm in itertools.permutations([v for v in range(n) if v != s]):
        total, here, prev = 0, 0, s
        for v in perm:
            here += d[prev][v]
            total += w[v] * here
            prev = v
        if best is None or total < best:
            best, best_order = total, perm
    return Fraction(best, dd * wd), Tour(M, (s, *best_order))


def compose_tours(T_lat: Tour, T_tsp: Tour, t) -> Tour:
    """Follow ``T_lat`` while its prefix distance is at most ``t``, then ``T_tsp``'s cycle.

    The tail enters the cycle just after the last prefix vertex ``u`` (after
    the start when the prefix is just the start) and skips prefix vertices.
    """
    t = as_fraction(t)
    if t < 0:
        raise DomainError("breakpoint must be non-negative")
    if T_lat.metric != T_tsp.metric:
        raise DomainError("tours live on different metrics")
    c = T_lat.prefix_distances
    prefix = [v for v in T_lat.order if c[v] <= t]
    seen = set(prefix)
    cycle = T_tsp.order
    pos = cycle.index(prefix[-1])
    tail = [v for v in cycle[pos + 1:] + cycle[:pos] if v not in seen]
    return Tour(T_lat.metric, (*prefix, *tail))


@dataclass(frozen=True)
class TourReport:
    t: Fraction
    tour: Tour
    point: BicriteriaPoint
    tsp_length: Fraction
    opt_latency: Fraction


def best_tour_for_rho(M: MetricInstance, rho, optima=None) -> TourReport:
    """Best composed tour with open length at most ``(1 + rho) L``, ``L`` the optimal cycle.

    ``optima`` may carry precomputed ``(tsp_opt(M), repairman_opt(M))``.
    """
    rho = as_fraction(rho)
    if rho < 0:
        raise DomainError("rho must be non-negative")
    (L, T_tsp), (lat_opt, T_lat) = optima or (tsp_opt(M), repairman_opt(M))
    limit = rho * L
    ts = {Fraction(0), limit}
    ts.update(x for x in T_lat.prefix_distances.values() if x <= limit)
    best = None
    for t in sorted(ts):
        tour = compose_tours(T_lat, T_tsp, t)
        length_ratio = tour.open_length / L if L else Fraction(1)
        if lat_opt:
            lat_ratio = tour.latency / lat_opt
        elif tour.latency == 0:
            lat_ratio = Fraction(1)
        else:
            raise DegenerateError("optimal latency is zero but the composed tour's is not")
        if length_ratio > 1 + rho:
            continue
        key = (lat_ratio, length_ratio, t)
        if best is None or key < best[0]:
            best = (key, TourReport(t, tour, BicriteriaPoint(length_ratio, lat_ratio, t),
                                    L, lat_opt))
    return best[1]
