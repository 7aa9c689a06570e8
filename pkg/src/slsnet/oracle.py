"""Brute-force baseline verifiers.

Deliberately naive: switching sequences are enumerated by direct
simulation of the network's column indices (no merged-system or
graph-module code is involved), controllability/observability matrices
are stacked from the raw mode matrices, and path counting is a plain
DFS. These are the reference answers the optimized analysis code is
tested against, so they share nothing with it beyond the exact
matrix core.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import DimensionError, Matrix, hstack, rank, vstack


@dataclass(frozen=True)
class EnumerationBudget:
    max_sequences: int = 10**6
    max_horizon: int = 32


class BudgetExceededError(RuntimeError):
    """The requested enumeration is larger than the configured budget."""


def _simulate(net, alpha: int, gammas: Sequence[int]) -> tuple[int, ...]:
    """Induced switching sequence, by direct column-index lookup."""
    n_states = net.N
    theta = alpha
    sigmas = []
    for gamma in gammas:
        col = (gamma - 1) * n_states + theta
        sigmas.append(net.R.col_index[col - 1])
        theta = net.L.col_index[col - 1]
    return tuple(sigmas)


def enumerate_switching_sequences(
    net, alpha: int, horizon: int, budget: EnumerationBudget = EnumerationBudget()
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All M^T logical input sequences with their induced switching
    sequences from initial state alpha, in lexicographic input order."""
    if not 1 <= alpha <= net.N:
        raise DimensionError(f"initial state {alpha} outside 1..{net.N}")
    if horizon < 1:
        raise DimensionError("horizon must be >= 1")
    if horizon > budget.max_horizon or net.M**horizon > budget.max_sequences:
        raise BudgetExceededError(
            f"{net.M}^{horizon} sequences exceed the budget of {budget.max_sequences}"
        )
    out = []
    for gammas in itertools.product(range(1, net.M + 1), repeat=horizon):
        out.append((gammas, _simulate(net, alpha, gammas)))
    return out


def controllability_matrix(mode_sequence: Sequence[int], sls) -> Matrix:
    """[B_(s_{T-1}), A_(s_{T-1}) B_(s_{T-2}), ..., A_(s_{T-1})...A_(s_1) B_(s_0)]."""
    if not mode_sequence:
        raise DimensionError("mode sequence may not be empty")
    prefix = Matrix.identity(sls.n, sls.mode_flag)
    blocks = []
    for sigma in reversed(list(mode_sequence)):
        blocks.append(prefix @ sls.b(sigma))
        prefix = prefix @ sls.a(sigma)
    return hstack(blocks)


def observability_matrix(mode_sequence: Sequence[int], sls) -> Matrix:
    """Stacked [C_(s_0); C_(s_1) A_(s_0); ...; C_(s_{T-1}) A_(s_{T-2})...A_(s_0)]."""
    if not mode_sequence:
        raise DimensionError("mode sequence may not be empty")
    prefix = Matrix.identity(sls.n, sls.mode_flag)
    blocks = []
    for sigma in mode_sequence:
        blocks.append(sls.c(sigma) @ prefix)
        prefix = sls.a(sigma) @ prefix
    return vstack(blocks)


def mode_chain(mode_sequence: Sequence[int], sls) -> Matrix:
    """A_(s_{T-1}) ... A_(s_1) A_(s_0)."""
    prod = Matrix.identity(sls.n, sls.mode_flag)
    for sigma in mode_sequence:
        prod = sls.a(sigma) @ prod
    return prod


def kalman_rank(mode_sequence: Sequence[int], sls) -> int:
    return rank(controllability_matrix(mode_sequence, sls))


def obsv_rank(mode_sequence: Sequence[int], sls) -> int:
    return rank(observability_matrix(mode_sequence, sls))


def count_paths(
    net,
    from_subset: Iterable[int],
    to_subset: Iterable[int],
    ell: int,
    budget: EnumerationBudget = EnumerationBudget(),
) -> int:
    """Number of ell-edge walks in the input-state graph between subsets.

    Pair (gamma, theta), encoded (gamma-1)*N + theta, steps to
    (gamma', L-target) for every free next input gamma'.
    """
    if ell < 0:
        raise DimensionError("ell must be >= 0")
    n_states = net.N
    mn = net.M * n_states
    sources = sorted(set(int(i) for i in from_subset))
    targets = set(int(i) for i in to_subset)
    for i in itertools.chain(sources, targets):
        if not 1 <= i <= mn:
            raise DimensionError(f"input-state index {i} outside 1..{mn}")
    if len(sources) * net.M**ell > budget.max_sequences:
        raise BudgetExceededError("path enumeration exceeds the budget")

    def walk(pair: int, remaining: int) -> int:
        if remaining == 0:
            return 1 if pair in targets else 0
        theta_next = net.L.col_index[pair - 1]
        return sum(
            walk((g - 1) * n_states + theta_next, remaining - 1)
            for g in range(1, net.M + 1)
        )

    return sum(walk(src, ell) for src in sources)
