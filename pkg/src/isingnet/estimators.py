"""Estimator-style wrappers around the exact and local-update solvers.

``fit`` takes a net (or a net document) and stores the search result in
trailing-underscore attributes, so the solvers work with ``get_params``,
``set_params`` and ``clone``.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .knuth import KnuthNet
from .solver import FigureStrategy, local_update_run
from .spins import energy, ground_energy_and_states
from .validation import check_configuration, check_net, check_positive_int


class ExactSolver(BaseEstimator):
    """Brute-force ground-state solver.

    Attributes
    ----------
    ground_energy_ : int
    ground_states_ : frozenset of Configuration
    """

    def __init__(self, cap=None):
        self.cap = cap

    def fit(self, net, y=None):
        net = check_net(net)
        self.net_ = net
        self.ground_energy_, self.ground_states_ = ground_energy_and_states(net, self.cap)
        return self

    def score(self, config, y=None):
        """Energy gap of ``config`` above the ground energy (0 for a ground state)."""
        check_is_fitted(self, "ground_energy_")
        return energy(self.net_, check_configuration(self.net_, config)) - self.ground_energy_


class LocalUpdateSolver(BaseEstimator):
    """Seeded local-update search towards a known target energy.

    When ``target_energy`` is None and the input is a Knuth net, its known
    ground energy ``-15*m*n`` is used.
    """

    def __init__(self, target_energy=None, strategy="random_half", fraction=0.5,
                 max_updates=10_000, random_state=0, cap=None):
        self.target_energy = target_energy
        self.strategy = strategy
        self.fraction = fraction
        self.max_updates = max_updates
        self.random_state = random_state
        self.cap = cap

    def fit(self, net, y=None):
        check_positive_int(self.max_updates, "max_updates")
        target = self.target_energy
        if target is None:
            if not isinstance(net, KnuthNet):
                raise ValueError("target_energy is required unless fitting a KnuthNet")
            target = net.dims.ground_energy
        problem = net if isinstance(net, KnuthNet) else check_net(net)
        outcome = local_update_run(
            problem, target, FigureStrategy(self.strategy, self.fraction),
            self.max_updates, self.random_state, cap=self.cap,
        )
        self.outcome_ = outcome
        self.config_ = outcome.config
        self.energy_ = outcome.final_energy
        self.n_updates_ = outcome.updates
        self.energy_trace_ = outcome.trace
        self.reached_ground_ = outcome.reached_ground
        return self
