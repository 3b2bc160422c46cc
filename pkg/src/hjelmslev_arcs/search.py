"""Exact branch-and-bound for the condensed arc system.

Variables are point orbits ``x_j`` (0/1 for projective arcs, ``0..cap`` for
multiarcs).  For every line orbit ``i`` the load ``sum_j M[i, j] x_j`` must
stay at most ``u``; the slack ``y_i = u - load_i`` is the intersection gap.

Two prunes are used at every node:

* mass: the orbit mass still addable without overloading any line cannot
  reach the target;
* incidences: every added point raises ``lines_per_point`` line loads by one,
  so ``lines_per_point * added <= sum_i |line orbit i| * room_i`` where
  ``room_i`` is the slack of line orbit i capped by what the free variables
  could still put on it.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .groups import CondensedSystem


class BudgetExhausted(RuntimeError):
    """The node or time budget ran out before the search was decided."""

    def __init__(self, message, best=None, nodes=0):
        super().__init__(message)
        self.best = best
        self.nodes = nodes


@dataclass
class SearchProblem:
    system: CondensedSystem
    u: int
    n: int | None = None  # None: maximize
    multiarc: bool = False
    max_multiplicity: int | None = None
    node_limit: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.u < 1:
            raise ValueError("u must be at least 1")
        if self.n is not None:
            if self.n < 0:
                raise ValueError("n must be nonnegative")
            top = int(self.system.orbit_sizes.sum()) * self.cap
            if self.n > top:
                raise ValueError(f"n={self.n} exceeds the available mass {top}")

    @property
    def cap(self) -> int:
        if not self.multiarc:
            return 1
        return self.u if self.max_multiplicity is None else min(self.u, self.max_multiplicity)


@dataclass
class ArcSolution:
    x: np.ndarray
    n: int
    y: np.ndarray
    u: int
    nodes: int = 0
    points: list[int] = field(default_factory=list)

    @property
    def max_intersection(self) -> int:
        return self.u - int(self.y.min()) if len(self.y) else 0

    @property
    def attains_u(self) -> bool:
        return bool((self.y == 0).any())

    @property
    def selected(self) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.x)]


def slack(system: CondensedSystem, x, u: int) -> np.ndarray:
    return u - system.matrix @ np.asarray(x, dtype=np.int64)


def make_solution(system: CondensedSystem, x, u: int, nodes: int = 0) -> ArcSolution:
    x = np.asarray(x, dtype=np.int64)
    return ArcSolution(
        x=x, n=int(system.orbit_sizes @ x), y=slack(system, x, u), u=u, nodes=nodes
    )


class _Search:
    def __init__(self, problem: SearchProblem, prefix=()):
        sysm = problem.system
        self.problem = problem
        self.u = problem.u
        self.cap = problem.cap
        k = sysm.k
        self.k = k
        self.sizes = [int(s) for s in sysm.orbit_sizes]
        self.line_sizes = [int(s) for s in sysm.line_orbit_sizes]
        self.lines_per_point = sysm.lines_per_point
        # descending orbit size, ties by index
        self.order = sorted(range(k), key=lambda j: (-self.sizes[j], j))
        self.cols = [
            [(int(i), int(sysm.matrix[i, j])) for i in np.flatnonzero(sysm.matrix[:, j])]
            for j in range(k)
        ]
        self.loads = [0] * k
        self.x = [0] * k
        self.mass = 0
        self.nodes = 0
        self.node_limit = problem.node_limit
        self.deadline = None if problem.time_limit is None else time.monotonic() + problem.time_limit
        self.start = 0
        for value in prefix:
            j = self.order[self.start]
            if value and self._room(j) < value:
                raise ValueError("prefix violates the line capacity")
            self._set(j, value)
            self.start += 1

    def _room(self, j) -> int:
        u, loads = self.u, self.loads
        best = self.cap
        for i, a in self.cols[j]:
            r = (u - loads[i]) // a
            if r < best:
                best = r
                if r <= 0:
                    return 0
        return best

    def _set(self, j, value):
        delta = value - self.x[j]
        if delta:
            for i, a in self.cols[j]:
                self.loads[i] += a * delta
            self.x[j] = value
            self.mass += self.sizes[j] * delta

    def _tick(self):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise BudgetExhausted("node limit reached", nodes=self.nodes)
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted("time limit reached", nodes=self.nodes)

    def _bound(self, t) -> tuple[int, int]:
        """(addable orbit mass, incidence bound on added points) over order[t:]."""
        u, loads, sizes = self.u, self.loads, self.sizes
        k = self.k
        avail = [0] * k
        mass = 0
        for j in self.order[t:]:
            r = self._room(j)
            if r:
                mass += sizes[j] * r
                for i, a in self.cols[j]:
                    avail[i] += a * r
        room = 0
        for i in range(k):
            slack_i = u - loads[i]
            room += self.line_sizes[i] * (slack_i if slack_i < avail[i] else avail[i])
        return mass, room // self.lines_per_point

    # fixed n

    def find(self, n: int):
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 4 * self.k + 100))
        try:
            return self._find(self.start, n - self.mass)
        finally:
            sys.setrecursionlimit(limit)

    def _find(self, t, need):
        self._tick()
        if need == 0:
            return list(self.x)
        if t == self.k:
            return None
        mass, inc = self._bound(t)
        if mass < need or inc < need:
            return None
        j = self.order[t]
        top = min(self._room(j), need // self.sizes[j])
        for value in range(top, -1, -1):
            self._set(j, value)
            found = self._find(t + 1, need - value * self.sizes[j])
            if found is not None:
                return found
        self._set(j, 0)
        return None

    # maximize

    def maximize(self, floor: int = -1, stop_at: int | None = None):
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 4 * self.k + 100))
        self.best_n, self.best_x = floor, None
        self.stop_at = stop_at
        try:
            self._max(self.start)
        except BudgetExhausted as exc:
            exc.best = (self.best_n, self.best_x)
            raise
        finally:
            sys.setrecursionlimit(limit)
        return self.best_n, self.best_x

    def _max(self, t) -> bool:
        """Returns True when stop_at has been reached."""
        self._tick()
        if self.mass > self.best_n:
            self.best_n, self.best_x = self.mass, list(self.x)
            if self.stop_at is not None and self.mass >= self.stop_at:
                return True
        if t == self.k:
            return False
        mass, inc = self._bound(t)
        if self.mass + min(mass, inc) <= self.best_n:
            return False
        j = self.order[t]
        for value in range(self._room(j), -1, -1):
            self._set(j, value)
            if self._max(t + 1):
                return True
        self._set(j, 0)
        return False


def _prefixes(problem: SearchProblem, depth: int):
    """Partial assignments of the first ``depth`` branching variables, in DFS order."""
    s = _Search(problem)
    out = []

    def rec(t, prefix):
        if t == min(depth, s.k):
            out.append(tuple(prefix))
            return
        j = s.order[t]
        for value in range(s._room(j), -1, -1):
            s._set(j, value)
            rec(t + 1, prefix + [value])
        s._set(j, 0)

    rec(0, [])
    return out


def _find_task(args):
    problem, prefix = args
    s = _Search(problem, prefix)
    try:
        return s.find(problem.n), s.nodes, False
    except BudgetExhausted:
        return None, s.nodes, True


def _max_task(args):
    problem, prefix, stop_at = args
    s = _Search(problem, prefix)
    try:
        best_n, best_x = s.maximize(stop_at=stop_at)
        return best_n, best_x, s.nodes, False
    except BudgetExhausted as exc:
        best_n, best_x = exc.best
        return best_n, best_x, s.nodes, True


def solve_fixed_n(problem: SearchProblem, workers: int = 1, split_depth: int = 3) -> ArcSolution | None:
    """First solution with ``sum |w_j| x_j = n`` in DFS order, or None when the
    space is exhausted.  Raises BudgetExhausted if the budget runs out."""
    if problem.n is None:
        raise ValueError("solve_fixed_n needs a fixed n")
    if workers <= 1:
        s = _Search(problem)
        x = s.find(problem.n)
        return None if x is None else make_solution(problem.system, x, problem.u, s.nodes)
    tasks = [(problem, p) for p in _prefixes(problem, split_depth)]
    nodes = 0
    exhausted = False
    # budgets apply per subtree; the first subtree in DFS order with a solution wins
    with ProcessPoolExecutor(workers) as pool:
        for x, used, ran_out in pool.map(_find_task, tasks):
            nodes += used
            exhausted |= ran_out
            if x is not None:
                return make_solution(problem.system, x, problem.u, nodes)
    if exhausted:
        raise BudgetExhausted("budget exhausted in at least one subtree", nodes=nodes)
    return None


def maximize(problem: SearchProblem, workers: int = 1, split_depth: int = 3,
             stop_at: int | None = None) -> tuple[ArcSolution | None, bool]:
    """Largest arc found and whether it is proven optimal.

    On budget exhaustion the best arc so far is returned with the flag False.
    ``stop_at`` ends the search as soon as an arc of that size is found (the
    flag is then False unless the size equals the trivial mass bound).
    """
    sysm = problem.system
    if workers <= 1:
        s = _Search(problem)
        try:
            best_n, best_x = s.maximize(stop_at=stop_at)
            optimal = stop_at is None or best_n < stop_at
        except BudgetExhausted as exc:
            best_n, best_x = exc.best
            optimal = False
        if best_x is None:
            return None, optimal
        return make_solution(sysm, best_x, problem.u, s.nodes), optimal
    tasks = [(problem, p, stop_at) for p in _prefixes(problem, split_depth)]
    best = (-1, None)
    nodes = 0
    optimal = True
    with ProcessPoolExecutor(workers) as pool:
        for best_n, best_x, used, ran_out in pool.map(_max_task, tasks):
            nodes += used
            optimal &= not ran_out
            if best_x is not None and best_n > best[0]:
                best = (best_n, best_x)
    if stop_at is not None and best[0] >= stop_at:
        optimal = False
    if best[1] is None:
        return None, optimal
    return make_solution(sysm, best[1], problem.u, nodes), optimal
