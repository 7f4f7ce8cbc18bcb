import itertools
import random

import pytest
from hypothesis import strategies as st

from isingnet import IsingNet, QuadraticForm, Spin
from isingnet.gates import and_gate, full_multiplier


def oracle_energy(net, assignment):
    """Direct evaluation of constant + fields + pair couplings, spins as +-1 ints."""
    form = net.energy
    total = form.constant
    for v, a in form.fields.items():
        total += a * int(assignment[v])
    for (u, v), b in form.couplings.items():
        total += b * int(assignment[u]) * int(assignment[v])
    return total


def oracle_table(net):
    """Every configuration as a dict, with its energy, via itertools.product."""
    order = sorted(net.vertices)
    rows = []
    for spins in itertools.product((Spin.DOWN, Spin.UP), repeat=len(order)):
        assignment = dict(zip(order, spins))
        rows.append((assignment, oracle_energy(net, assignment)))
    return rows


def oracle_ground(net):
    rows = oracle_table(net)
    best = min(e for _, e in rows)
    return best, {tuple(sorted(a.items())) for a, e in rows if e == best}


def as_keys(states):
    return {tuple(sorted(s.items())) for s in states}


def random_net(rng: random.Random, names, lo=-4, hi=4, density=0.6):
    names = list(names)
    fields = {v: rng.randint(lo, hi) for v in names}
    couplings = {}
    for u, v in itertools.combinations(names, 2):
        if rng.random() < density:
            couplings[(u, v)] = rng.randint(lo, hi)
    return IsingNet(frozenset(names), QuadraticForm(rng.randint(lo, hi), fields, couplings))


@st.composite
def nets(draw, max_vertices=5, prefix="v", lo=-4, hi=4):
    n = draw(st.integers(0, max_vertices))
    names = [f"{prefix}{k}" for k in range(n)]
    coeff = st.integers(lo, hi)
    fields = {v: draw(coeff) for v in names}
    couplings = {pair: draw(coeff) for pair in itertools.combinations(names, 2)}
    return IsingNet(frozenset(names), QuadraticForm(draw(coeff), fields, couplings))


@pytest.fixture
def and_net():
    return and_gate()


@pytest.fixture
def multiplier():
    return full_multiplier()
