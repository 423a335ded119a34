"""Exact solver for the cardinality-capped tripartite assignment problem.

Each pursuer must pick one (evader, candidate) pair such that every evader
is covered by at least one pursuer, a candidate may be used only when
activated, and at most ``max_virtual_targets`` candidates are activated.
The objective is the sum of the chosen cost-tensor entries.

``solve`` runs a best-first branch-and-bound over candidate activations:

- Bounds come from an exact min-cost semi-matching that ignores the
  activation cap (each pursuer priced at its cheapest allowed candidate
  per evader), tightened by an LP relaxation over the choice and
  activation variables solved with the in-package revised simplex.
  Activation-linking rows are generated lazily, so the LP basis stays tiny
  even with thousands of candidates.
- Once the active set on a branch is decided (or the cap cannot bind), the
  residual problem is solved exactly in polynomial time: reduced costs per
  pursuer-evader pair, then a semi-matching computed by successive
  shortest augmenting paths with node potentials (unit-capacity min-cost
  flow). No branching on individual choices is ever needed.
- The first incumbent activates the cap-many candidates with the best
  accumulated per-pursuer scores and solves the residual exactly.

``solve_bruteforce`` enumerates every active set and surjective
pursuer-to-evader map. It shares only the cost tensor and the tie-break
helper with ``solve`` and serves as an independent oracle on small
instances.

Ties are broken deterministically: among equal-cost solutions the
lexicographically smallest choice vector ((j_1, k_1), ..., (j_N, k_N))
wins, and per (pursuer, evader) pair the smallest candidate index among
exact cost minima is used.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .cost import CostTensor
from .errors import Infeasible, InstanceTooLarge
from .scenario import Point2
from .simplex import solve_lp

TIE_TOL = 1e-9
LINK_VIOLATION_TOL = 1e-7
INTEGRALITY_TOL = 1e-6


@dataclass(frozen=True)
class AssignmentProblem:
    """A cost tensor plus the cap on distinct active virtual targets."""

    tensor: CostTensor
    max_virtual_targets: int

    def __post_init__(self):
        n, m, k = self.tensor.dims
        if n < 1 or m < 1 or k < 1:
            raise ValueError(f"degenerate problem dimensions {(n, m, k)}")
        if not isinstance(self.max_virtual_targets, int) or self.max_virtual_targets < 1:
            raise ValueError(
                f"max_virtual_targets must be an integer >= 1 "
                f"(got {self.max_virtual_targets})"
            )

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.tensor.dims


@dataclass(frozen=True)
class Assignment:
    """A feasible solution: one (evader, candidate) choice per pursuer.

    ``active_vts`` is the set of candidate indices actually used.
    ``vt_points`` snapshots the coordinates of those candidates so the
    assignment can be simulated or rendered without the cost tensor.
    """

    choices: tuple[tuple[int, int], ...]
    active_vts: frozenset[int]
    total_cost: float
    vt_points: dict[int, Point2] = field(default_factory=dict, compare=False)


@dataclass
class SolveOutcome:
    """Result of a branch-and-bound run, including proof-of-optimality data."""

    assignment: Assignment
    optimal: bool
    gap: float
    gap_abs: float
    node_count: int
    lp_iterations: int
    wall_time: float
    best_bound: float
    trace: list[tuple[float, float]] = field(default_factory=list)


def _total_cost(costs: np.ndarray, choices) -> float:
    """Canonical total for a choice vector (shared by solver and oracle)."""
    return float(sum(float(costs[i, j, k]) for i, (j, k) in enumerate(choices)))


def _better(total_a: float, choices_a, total_b: float, choices_b) -> bool:
    """True when (total_a, choices_a) wins the deterministic tie-break."""
    if total_a != total_b:
        return total_a < total_b
    return choices_a < choices_b


def _reduced_costs(costs: np.ndarray, allowed: np.ndarray):
    """Per (pursuer, evader): cheapest allowed candidate and its index.

    ``allowed`` must be sorted ascending so that the first minimum found is
    the smallest candidate index among exact ties.
    """
    sub = costs[:, :, allowed]
    pos = sub.argmin(axis=2)
    red = np.take_along_axis(sub, pos[:, :, None], axis=2)[:, :, 0]
    return red, allowed[pos]


def _min_cost_matching(w: np.ndarray) -> tuple[float, list[int]]:
    """Assign each row to a distinct column minimizing total weight.

    Successive shortest augmenting paths with node potentials: one phase
    per row pushes one unit of flow along the cheapest augmenting path of
    the unit-capacity bipartite network. Requires rows <= columns.
    """
    r, c = w.shape
    if r == 0:
        return 0.0, []
    inf = float("inf")
    u = [0.0] * (r + 1)
    v = [0.0] * (c + 1)
    match = [0] * (c + 1)
    way = [0] * (c + 1)
    for i in range(1, r + 1):
        match[0] = i
        j0 = 0
        minv = [inf] * (c + 1)
        used = [False] * (c + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = inf
            j1 = 0
            for j in range(1, c + 1):
                if used[j]:
                    continue
                cur = float(w[i0 - 1, j - 1]) - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(c + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    col_of_row = [0] * r
    for j in range(1, c + 1):
        if match[j]:
            col_of_row[match[j] - 1] = j - 1
    total = float(sum(float(w[i, col_of_row[i]]) for i in range(r)))
    return total, col_of_row


def _complete(red: np.ndarray, free: list[int], covered: set[int]):
    """Optimal completion for the free pursuers given already-covered evaders.

    Every uncovered evader must be taken by a distinct free pursuer; the
    rest take their cheapest evader. Returns (value, {pursuer: evader}) or
    None when more evaders are uncovered than pursuers remain.
    """
    m = red.shape[1]
    uncovered = [j for j in range(m) if j not in covered]
    if len(uncovered) > len(free):
        return None
    if not free:
        return 0.0, {}
    rows = red[free]
    g = rows.min(axis=1)
    gj = rows.argmin(axis=1)
    choice = {i: int(gj[p]) for p, i in enumerate(free)}
    value = float(np.sum(g))
    if uncovered:
        w = red[np.ix_(free, uncovered)].T - g[None, :]
        add, col_of_row = _min_cost_matching(w)
        value += add
        for d, f in enumerate(col_of_row):
            choice[free[f]] = uncovered[d]
    return value, choice


def _resolve_value(costs: np.ndarray, allowed: np.ndarray):
    """Exact optimum for a fixed allowed set, ignoring the activation cap."""
    n = costs.shape[0]
    red, arg = _reduced_costs(costs, allowed)
    out = _complete(red, list(range(n)), set())
    if out is None:
        return None
    value, choice = out
    choices = tuple((choice[i], int(arg[i, choice[i]])) for i in range(n))
    used = frozenset(k for _, k in choices)
    return value, choices, used


def _resolve(costs: np.ndarray, allowed: np.ndarray):
    """Exact optimum over an allowed set with the lexicographic tie-break.

    Pursuer choices are fixed one by one: each pursuer takes the smallest
    (evader, candidate) pair whose exact completion still achieves the
    optimal value.
    """
    n, m = costs.shape[0], costs.shape[1]
    red, arg = _reduced_costs(costs, allowed)
    base = _complete(red, list(range(n)), set())
    if base is None:
        return None
    v0 = base[0]
    fixed: list[tuple[int, int]] = []
    covered: set[int] = set()
    prefix = 0.0
    for i in range(n):
        rest = list(range(i + 1, n))
        chosen = None
        for j in range(m):
            comp = _complete(red, rest, covered | {j})
            if comp is None:
                continue
            if prefix + float(red[i, j]) + comp[0] <= v0 + TIE_TOL:
                chosen = j
                break
        if chosen is None:
            chosen = base[1][i]
        fixed.append((chosen, int(arg[i, chosen])))
        covered.add(chosen)
        prefix += float(red[i, chosen])
    choices = tuple(fixed)
    total = _total_cost(costs, choices)
    used = frozenset(k for _, k in choices)
    return total, choices, used


def _make_assignment(problem: AssignmentProblem, total: float, choices) -> Assignment:
    points = problem.tensor.candidates.points
    used = frozenset(k for _, k in choices)
    return Assignment(
        choices=tuple(choices),
        active_vts=used,
        total_cost=total,
        vt_points={k: points[k] for k in sorted(used)},
    )


def _lagrangian_bound(
    sub: np.ndarray,
    f1_pos: np.ndarray,
    u_pos: np.ndarray,
    mv_free: int,
    ub: float,
    alpha: np.ndarray,
    beta: np.ndarray,
    max_iters: int,
):
    """Dual-ascent lower bound for one node.

    The pursuer and coverage rows are dualized with multipliers alpha
    (free) and beta (>= 0). The inner minimization then separates per
    candidate: activating candidate k gains m_k = sum of the negative
    parts of the reduced costs, and the best inner solution activates the
    forced-in candidates plus the cap-many most negative undecided ones.
    Any multiplier pair therefore yields a valid lower bound; a projected
    subgradient ascent with Polyak steps towards the incumbent tightens
    it. Returns (bound, alpha, beta) with the best multipliers found.
    """
    best = float("-inf")
    best_ab = (alpha, beta)
    theta = 2.0
    stall = 0
    for _ in range(max_iters):
        cbar = sub - alpha[:, None, None] - beta[None, :, None]
        neg = np.minimum(cbar, 0.0)
        mk = neg.sum(axis=(0, 1))
        inner = float(mk[f1_pos].sum()) if f1_pos.size else 0.0
        mu = mk[u_pos]
        negs = np.nonzero(mu < 0.0)[0]
        if negs.size > mv_free:
            take = negs[np.argsort(mu[negs], kind="stable")[:mv_free]]
        else:
            take = negs
        if take.size:
            inner += float(mu[take].sum())
        value = float(alpha.sum() + beta.sum()) + inner
        if value > best:
            best = value
            best_ab = (alpha.copy(), beta.copy())
            stall = 0
        else:
            stall += 1
            if stall >= 8:
                theta *= 0.5
                stall = 0
        if best > ub + TIE_TOL or theta < 1e-4:
            break
        active = np.zeros(sub.shape[2], dtype=bool)
        active[f1_pos] = True
        if take.size:
            active[u_pos[take]] = True
        x_hat = (cbar < 0.0) & active[None, None, :]
        g_alpha = 1.0 - x_hat.sum(axis=(1, 2)).astype(np.float64)
        g_beta = 1.0 - x_hat.sum(axis=(0, 2)).astype(np.float64)
        g_beta = np.where((beta <= 0.0) & (g_beta < 0.0), 0.0, g_beta)
        norm = float((g_alpha**2).sum() + (g_beta**2).sum())
        if norm < 1e-16:
            break
        step = theta * max(ub - value, 1e-6) / norm
        alpha = alpha + step * g_alpha
        beta = np.maximum(0.0, beta + step * g_beta)
    return best, best_ab[0], best_ab[1]


class _NodeLP:
    """LP relaxation of one search node with lazy activation-linking rows."""

    def __init__(self, costs: np.ndarray, allowed: np.ndarray, undecided: np.ndarray,
                 mv_free: int):
        self.costs = costs
        self.allowed = allowed
        self.undecided = undecided
        self.mv_free = mv_free
        self.n, self.m = costs.shape[0], costs.shape[1]
        self.n_x = self.n * self.m * len(allowed)
        self.pos_in_allowed = {int(k): a for a, k in enumerate(allowed)}
        self.pos_in_undecided = {int(k): u for u, k in enumerate(undecided)}

    def solve(self, link: set[tuple[int, int]], cutoff: float | None,
              max_rounds: int = 40):
        """Row-generation loop. Returns (value, ys, link, iterations) or None.

        ``cutoff`` allows early exit once the monotone value already proves
        the node can be pruned. Returns None on LP failure (caller falls
        back to the combinatorial bound).
        """
        n, m = self.n, self.m
        a_cols = len(self.allowed)
        n_y = len(self.undecided)
        n_total = self.n_x + n_y
        cost_vec = np.concatenate(
            [self.costs[:, :, self.allowed].reshape(-1), np.zeros(n_y)]
        )
        upper = np.ones(n_total)
        iterations = 0
        link = set(link)
        result = None
        for _ in range(max_rounds):
            rows = n + m + 1 + len(link)
            a = np.zeros((rows, n_total))
            senses: list[str] = []
            rhs = np.zeros(rows)
            for i in range(n):
                a[i, i * m * a_cols:(i + 1) * m * a_cols] = 1.0
                senses.append("=")
                rhs[i] = 1.0
            for j in range(m):
                r = n + j
                for i in range(n):
                    start = (i * m + j) * a_cols
                    a[r, start:start + a_cols] = 1.0
                senses.append(">")
                rhs[r] = 1.0
            r = n + m
            a[r, self.n_x:] = 1.0
            senses.append("<")
            rhs[r] = float(self.mv_free)
            for row_idx, (i, k) in enumerate(sorted(link)):
                r = n + m + 1 + row_idx
                pos = self.pos_in_allowed[k]
                for j in range(m):
                    a[r, (i * m + j) * a_cols + pos] = 1.0
                a[r, self.n_x + self.pos_in_undecided[k]] = -1.0
                senses.append("<")
                rhs[r] = 0.0

            res = solve_lp(cost_vec, a, senses, rhs, upper)
            iterations += res.iterations
            if res.status != "optimal":
                return None
            result = res
            if cutoff is not None and res.objective > cutoff:
                break
            xs = res.x[: self.n_x].reshape(n, m, a_cols)
            ys = res.x[self.n_x:]
            flow = xs.sum(axis=1)
            und_pos = np.fromiter(
                (self.pos_in_allowed[int(k)] for k in self.undecided),
                dtype=np.int64,
                count=n_y,
            )
            viol = flow[:, und_pos] - ys[None, :]
            bad = np.argwhere(viol > LINK_VIOLATION_TOL)
            if bad.size == 0:
                break
            order = np.argsort(viol[bad[:, 0], bad[:, 1]], kind="stable")[::-1]
            added = 0
            for idx in order:
                i, u = int(bad[idx, 0]), int(bad[idx, 1])
                pair = (i, int(self.undecided[u]))
                if pair not in link:
                    link.add(pair)
                    added += 1
                    if added >= 4 * n:
                        break
            if added == 0:
                break
        if result is None:
            return None
        ys = result.x[self.n_x:]
        return result.objective, ys, link, iterations


@dataclass(order=True)
class _Node:
    bound: float
    seq: int
    forced_in: frozenset[int] = field(compare=False)
    forced_out: frozenset[int] = field(compare=False)
    link: frozenset[tuple[int, int]] = field(compare=False)
    alpha: np.ndarray | None = field(compare=False, default=None)
    beta: np.ndarray | None = field(compare=False, default=None)


#: Candidate-count ceiling for running the simplex LP relaxation at a node.
#: Above it the lazily generated linking rows tail off against thousands of
#: near-identical lattice candidates, while the Lagrangian ascent reaches
#: the same relaxation value at any size.
LP_CANDIDATE_LIMIT = 150

_ROOT_ASCENT_ITERS = 500
_CHILD_ASCENT_ITERS = 120


def solve_detailed(
    problem: AssignmentProblem,
    node_limit: int = 10_000_000,
    time_limit: float | None = None,
    trace: bool = False,
) -> SolveOutcome:
    """Branch-and-bound to proven optimality (or to the given limits).

    When a limit stops the search early the incumbent is returned with a
    positive optimality gap instead of raising.
    """
    n, m, k_total = problem.dims
    if n < m:
        raise Infeasible(
            f"no feasible assignment: {n} pursuers cannot cover {m} evaders"
        )
    costs = problem.tensor.costs
    mv = problem.max_virtual_targets
    started = time.perf_counter()
    lp_iterations = 0
    trace_rows: list[tuple[float, float]] = []

    # Initial incumbent: greedily activate the cap-many candidates with the
    # smallest accumulated per-pursuer scores, and additionally try every
    # cap-sized subset of the candidates the cap-free optimum wants. Each
    # seed active set is solved exactly.
    score = costs.min(axis=1).sum(axis=0)
    seeds = [np.sort(np.argsort(score, kind="stable")[: min(mv, k_total)])]
    root_raw = _resolve_value(costs, np.arange(k_total))
    if root_raw is not None:
        wanted = sorted(root_raw[2])
        if len(wanted) <= mv:
            seeds.append(np.array(wanted, dtype=np.int64))
        else:
            subsets = itertools.islice(itertools.combinations(wanted, mv), 64)
            seeds.extend(np.array(s, dtype=np.int64) for s in subsets)
    best_total, best_choices = None, None
    for seed in seeds:
        resolved = _resolve(costs, seed)
        if resolved is None:
            continue
        total, choices, _ = resolved
        if best_total is None or _better(total, choices, best_total, best_choices):
            best_total, best_choices = total, choices
    if best_total is None:
        raise Infeasible("no feasible assignment exists")

    counter = itertools.count()
    root = _Node(
        bound=float("-inf"),
        seq=next(counter),
        forced_in=frozenset(),
        forced_out=frozenset(),
        link=frozenset(),
    )
    heap: list[_Node] = [root]
    nodes = 0
    stopped_early = False
    open_bound_at_stop = float("inf")

    def consider(total: float, choices) -> None:
        nonlocal best_total, best_choices
        if _better(total, choices, best_total, best_choices):
            best_total, best_choices = total, tuple(choices)

    while heap:
        if nodes >= node_limit or (
            time_limit is not None and time.perf_counter() - started > time_limit
        ):
            stopped_early = True
            open_bound_at_stop = min(node.bound for node in heap)
            break
        node = heapq.heappop(heap)
        nodes += 1
        if trace:
            # Best-first order makes the popped bound the global lower bound.
            trace_rows.append((node.bound, best_total))
        if node.bound > best_total + TIE_TOL:
            continue

        allowed = np.array(
            sorted(set(range(k_total)) - node.forced_out), dtype=np.int64
        )
        if allowed.size == 0:
            continue
        forced_in = node.forced_in
        mv_free = mv - len(forced_in)

        # Active set fully decided, or the cap cannot bind: solve exactly.
        if mv_free <= 0 or allowed.size <= mv:
            subset = (
                np.array(sorted(forced_in), dtype=np.int64)
                if mv_free <= 0
                else allowed
            )
            if subset.size == 0:
                continue
            resolved = _resolve(costs, subset)
            if resolved is not None:
                total, choices, _ = resolved
                consider(total, choices)
            continue

        # Cap-free combinatorial bound.
        raw = _resolve_value(costs, allowed)
        if raw is None:
            continue
        flow_value, raw_choices, raw_used = raw
        if flow_value > best_total + TIE_TOL:
            continue
        if len(forced_in | raw_used) <= mv:
            # The cap-free optimum is cap-feasible: node solved exactly.
            subset = np.array(sorted(forced_in | raw_used), dtype=np.int64)
            total, choices, _ = _resolve(costs, subset)
            consider(total, choices)
            continue

        undecided = np.array(sorted(set(allowed.tolist()) - forced_in), dtype=np.int64)
        node_bound = flow_value

        # Lagrangian dual ascent, warm-started from the parent multipliers.
        sub = costs[:, :, allowed]
        pos_of = {int(k): p for p, k in enumerate(allowed)}
        f1_pos = np.array(sorted(pos_of[k] for k in forced_in), dtype=np.int64)
        u_pos = np.array([pos_of[int(k)] for k in undecided], dtype=np.int64)
        if node.alpha is None:
            alpha = sub.reshape(n, -1).min(axis=1).astype(np.float64)
            beta = np.zeros(m)
            ascent_iters = _ROOT_ASCENT_ITERS
        else:
            alpha, beta = node.alpha, node.beta
            ascent_iters = _CHILD_ASCENT_ITERS
        lag_value, alpha, beta = _lagrangian_bound(
            sub, f1_pos, u_pos, mv_free, best_total, alpha, beta, ascent_iters
        )
        node_bound = max(node_bound, lag_value)
        if node_bound > best_total + TIE_TOL:
            continue

        ys = None
        new_link = node.link
        if allowed.size <= LP_CANDIDATE_LIMIT:
            lp = _NodeLP(costs, allowed, undecided, mv_free)
            valid_link = {pair for pair in node.link if pair[1] in lp.pos_in_undecided}
            lp_out = lp.solve(valid_link, cutoff=best_total + TIE_TOL)
            if lp_out is not None:
                lp_value, ys, link_rows, iters = lp_out
                lp_iterations += iters
                node_bound = max(node_bound, lp_value)
                new_link = frozenset(link_rows)
        if node_bound > best_total + TIE_TOL:
            continue

        branch_k = None
        if ys is not None and ys.size:
            frac = np.minimum(ys, 1.0 - ys)
            max_frac = float(frac.max())
            if max_frac < INTEGRALITY_TOL:
                support = forced_in | {
                    int(k) for k, y in zip(undecided, ys) if y > 0.5
                }
                if support:
                    subset = np.array(sorted(support), dtype=np.int64)
                    total, choices, _ = _resolve(costs, subset)
                    consider(total, choices)
                    if total <= node_bound + TIE_TOL:
                        continue
                # LP integral but not provably node-optimal: branch on a
                # candidate the cap-free optimum wants.
                contested = sorted(raw_used - forced_in)
                branch_k = contested[0] if contested else int(undecided[0])
            else:
                branch_k = int(undecided[int(np.argmax(frac))])
        else:
            contested = sorted(raw_used - forced_in)
            branch_k = contested[0] if contested else int(undecided[0])

        child_link = frozenset(p for p in new_link if p[1] != branch_k)
        for forced_in_child, forced_out_child in (
            (forced_in | {branch_k}, node.forced_out),
            (forced_in, node.forced_out | {branch_k}),
        ):
            heapq.heappush(
                heap,
                _Node(
                    bound=node_bound,
                    seq=next(counter),
                    forced_in=frozenset(forced_in_child),
                    forced_out=frozenset(forced_out_child),
                    link=child_link,
                    alpha=alpha,
                    beta=beta,
                ),
            )

    wall = time.perf_counter() - started
    if stopped_early:
        lower = min(open_bound_at_stop, best_total)
        gap_abs = max(0.0, best_total - lower)
        gap = gap_abs / max(1.0, abs(best_total))
        optimal = gap_abs <= TIE_TOL
    else:
        gap_abs = 0.0
        gap = 0.0
        optimal = True
        lower = best_total

    assignment = _make_assignment(problem, best_total, best_choices)
    return SolveOutcome(
        assignment=assignment,
        optimal=optimal,
        gap=gap,
        gap_abs=gap_abs,
        node_count=nodes,
        lp_iterations=lp_iterations,
        wall_time=wall,
        best_bound=lower,
        trace=trace_rows,
    )


def solve(
    problem: AssignmentProblem,
    node_limit: int = 10_000_000,
    time_limit: float | None = None,
) -> Assignment:
    """Solve to proven optimality; see solve_detailed for limit behavior."""
    return solve_detailed(problem, node_limit=node_limit, time_limit=time_limit).assignment


BRUTE_FORCE_GUARDS = {"candidates": 12, "pursuers": 5, "evaders": 4}


def solve_bruteforce(problem: AssignmentProblem) -> Assignment:
    """Independent oracle: enumerate every active set and surjective map.

    For each candidate subset within the cap and each pursuer-to-evader map
    covering all evaders, each pursuer takes the cheapest candidate of the
    subset for its evader. Guarded against combinatorial blowup.
    """
    n, m, k_total = problem.dims
    if k_total > BRUTE_FORCE_GUARDS["candidates"]:
        raise InstanceTooLarge(f"{k_total} candidates exceed the brute-force guard")
    if n > BRUTE_FORCE_GUARDS["pursuers"]:
        raise InstanceTooLarge(f"{n} pursuers exceed the brute-force guard")
    if m > BRUTE_FORCE_GUARDS["evaders"]:
        raise InstanceTooLarge(f"{m} evaders exceed the brute-force guard")
    if n < m:
        raise Infeasible(
            f"no feasible assignment: {n} pursuers cannot cover {m} evaders"
        )

    costs = problem.tensor.costs
    mv = problem.max_virtual_targets
    maps = [
        mp
        for mp in itertools.product(range(m), repeat=n)
        if len(set(mp)) == m
    ]
    best_total = None
    best_choices = None
    for size in range(1, min(mv, k_total) + 1):
        for subset in itertools.combinations(range(k_total), size):
            s_arr = np.array(subset, dtype=np.int64)
            _, arg = _reduced_costs(costs, s_arr)
            for mp in maps:
                choices = tuple((mp[i], int(arg[i, mp[i]])) for i in range(n))
                total = _total_cost(costs, choices)
                if best_total is None or _better(total, choices, best_total, best_choices):
                    best_total, best_choices = total, choices
    return _make_assignment(problem, best_total, best_choices)


def check_feasible(assignment: Assignment, problem: AssignmentProblem) -> list[str]:
    """List every constraint the assignment violates (empty when feasible).

    Violations are named by the constraint they break: coverage (every
    evader assigned), choice (one pair per pursuer), activation (chosen
    candidates must be active), cardinality (active set within the cap),
    and cost consistency against the tensor.
    """
    n, m, k_total = problem.dims
    violations: list[str] = []
    choices = assignment.choices
    if len(choices) != n:
        violations.append(
            f"choice: expected one (evader, candidate) pair per pursuer "
            f"({n}), got {len(choices)}"
        )
    covered: set[int] = set()
    for i, (j, k) in enumerate(choices):
        if not (0 <= j < m):
            violations.append(f"choice: pursuer {i} references unknown evader {j}")
            continue
        if not (0 <= k < k_total):
            violations.append(f"choice: pursuer {i} references unknown candidate {k}")
            continue
        covered.add(j)
        if k not in assignment.active_vts:
            violations.append(
                f"activation: pursuer {i} uses candidate {k} that is not active"
            )
    for j in range(m):
        if j not in covered:
            violations.append(f"coverage: evader {j} has no assigned pursuer")
    if len(assignment.active_vts) > problem.max_virtual_targets:
        violations.append(
            f"cardinality: {len(assignment.active_vts)} active virtual targets "
            f"exceed the cap {problem.max_virtual_targets}"
        )
    if len(choices) == n and all(
        0 <= j < m and 0 <= k < k_total for j, k in choices
    ):
        expected = _total_cost(problem.tensor.costs, choices)
        if abs(expected - assignment.total_cost) > TIE_TOL:
            violations.append(
                f"cost: total_cost {assignment.total_cost} does not match the "
                f"tensor sum {expected}"
            )
    return violations
