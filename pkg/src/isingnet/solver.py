"""Exact and local-update ground-state search.

A local-update run starts from a uniformly random configuration and
repeatedly picks a figure (a subset of vertices), clamps everything outside
it to the current values, and replaces the figure with a ground state of the
clamped net chosen uniformly among all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Protocol

import numpy as np

from .config import make_rng
from .exceptions import BudgetError
from .knuth import KnuthNet
from .spins import (
    Configuration,
    DenseForm,
    IsingNet,
    Spin,
    _check_cap,
    ground_energy_and_states,
    spin_table,
)

__all__ = [
    "FigureStrategy",
    "FigureOracle",
    "ExactFigureOracle",
    "RunOutcome",
    "local_update_run",
    "unsat_multiplier_figure",
    "figure_size",
    "ground_energy_and_states",
]

STRATEGIES = ("random_half", "unsat_multiplier")


def _as_fraction(value) -> Fraction:
    frac = Fraction(value) if not isinstance(value, float) else Fraction(str(value))
    if not 0 < frac <= 1:
        raise ValueError(f"figure fraction must lie in (0, 1], got {value}")
    return frac


@dataclass(frozen=True)
class FigureStrategy:
    kind: str = "random_half"
    fraction: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.kind not in STRATEGIES:
            raise ValueError(f"unknown figure strategy {self.kind!r}; expected one of {STRATEGIES}")
        object.__setattr__(self, "fraction", _as_fraction(self.fraction))


def figure_size(fraction, n_vertices: int) -> int:
    """``floor(fraction * n)``, at least one vertex, so a half figure never exceeds n/2."""
    if n_vertices == 0:
        return 0
    return max(1, math.floor(_as_fraction(fraction) * n_vertices))


class FigureOracle(Protocol):
    def __call__(self, dense: DenseForm, spins: np.ndarray, figure: np.ndarray,
                 rng: np.random.Generator) -> np.ndarray:
        """Return new spins for ``figure`` minimising the energy with the rest fixed."""


@lru_cache(maxsize=None)
def _table(n: int) -> np.ndarray:
    table = spin_table(n).astype(np.int64)
    table.setflags(write=False)
    return table


@dataclass
class ExactFigureOracle:
    """Enumerate the clamped figure and pick uniformly among all its minima."""

    cap: int | None = None

    def __call__(self, dense, spins, figure, rng):
        _check_cap(len(figure), self.cap)
        inside = np.zeros(len(spins), dtype=bool)
        inside[figure] = True
        outside = ~inside
        coupling = dense.coupling
        fields = dense.fields[figure] + coupling[np.ix_(figure, outside)] @ spins[outside]
        local = coupling[np.ix_(figure, figure)]
        table = _table(len(figure))
        values = table @ fields + ((table @ local) * table).sum(axis=1) // 2
        minima = np.flatnonzero(values == values.min())
        return table[minima[rng.integers(len(minima))]]


@dataclass(frozen=True)
class RunOutcome:
    reached_ground: bool
    updates: int
    final_energy: int
    seed: int | None = None
    config: Configuration | None = field(default=None, compare=False, repr=False)
    trace: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def csv_row(self, net_id: str, strategy: str) -> list:
        return [net_id, self.seed, strategy, self.updates, int(self.reached_ground), self.final_energy]


CSV_HEADER = ["net_id", "seed", "strategy", "updates", "reached_ground", "final_energy"]


def _random_half(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    return np.sort(rng.choice(n, size=size, replace=False))


def _unsat_indices(knet: KnuthNet, index: dict, spins: np.ndarray, size: int,
                   rng: np.random.Generator) -> np.ndarray:
    pool = set()
    for cell in knet.cell_index.values():
        bits = [0 if v is None else int(spins[index[v]] > 0) for v in cell]
        a, b, c, d, e, f = bits
        if a * b + c + d != 2 * e + f:
            pool.update(index[v] for v in cell if v is not None)
    if not pool:
        return _random_half(len(spins), size, rng)
    pool = np.array(sorted(pool))
    if len(pool) > size:
        return np.sort(rng.choice(pool, size=size, replace=False))
    return pool


def unsat_multiplier_figure(knet: KnuthNet, config, rng: np.random.Generator,
                            fraction=Fraction(1, 2)) -> frozenset:
    """Vertices of every full-multiplier cell whose local state breaks ``ab+c+d=2e+f``.

    When the pool exceeds the figure budget ``figure_size(fraction, |net|)`` a
    uniform sample of that size is returned. An empty pool falls back to a
    random figure of the budgeted size.
    """
    order = knet.net.order
    index = {v: k for k, v in enumerate(order)}
    config = config if isinstance(config, Configuration) else Configuration(config)
    spins = np.array([int(config[v]) for v in order], dtype=np.int64)
    size = figure_size(fraction, len(order))
    picked = _unsat_indices(knet, index, spins, size, rng)
    return frozenset(order[k] for k in picked)


def local_update_run(net: IsingNet | KnuthNet, target_energy: int,
                     strategy: FigureStrategy | None = None, max_updates: int = 10_000,
                     seed: int = 0, oracle: FigureOracle | None = None,
                     cap: int | None = None) -> RunOutcome:
    """One seeded local-update run; stops at ``target_energy`` or the budget.

    ``updates`` counts figure minimisations. The termination check precedes
    each update, so an initial ground state finishes with zero updates.
    """
    strategy = FigureStrategy() if strategy is None else strategy
    if max_updates <= 0:
        raise BudgetError(f"max_updates must be positive, got {max_updates}")
    knet = net if isinstance(net, KnuthNet) else None
    if knet is not None:
        net = knet.net
    elif strategy.kind == "unsat_multiplier":
        raise ValueError("the unsat_multiplier strategy needs a KnuthNet")
    oracle = ExactFigureOracle(cap) if oracle is None else oracle

    dense = DenseForm(net)
    n = len(dense)
    size = figure_size(strategy.fraction, n)
    _check_cap(size, cap)
    rng = make_rng(seed)
    spins = (2 * rng.integers(0, 2, size=n) - 1).astype(np.int64)
    current = dense.energy_of(spins)
    trace = [current]
    updates = 0
    while current != target_energy and updates < max_updates and n:
        if knet is not None and strategy.kind == "unsat_multiplier":
            figure = _unsat_indices(knet, dense.index, spins, size, rng)
        else:
            figure = _random_half(n, size, rng)
        spins[figure] = oracle(dense, spins, figure, rng)
        updated = dense.energy_of(spins)
        if updated > current:
            raise RuntimeError("figure oracle increased the energy")
        current = updated
        trace.append(current)
        updates += 1
    config = Configuration((v, Spin(int(s))) for v, s in zip(dense.order, spins))
    return RunOutcome(current == target_energy, updates, current, seed, config, tuple(trace))
