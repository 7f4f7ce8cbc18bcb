"""The two primitive nets: the AND gate and the full multiplier.

Bits map to spins as 0 -> down (-1) and 1 -> up (+1).
"""

from __future__ import annotations

from collections.abc import Sequence

from .exceptions import LabelError
from .spins import IsingNet, QuadraticForm

AND_FIELDS = (-1, -1, 2)
AND_COUPLINGS = {(0, 1): 1, (0, 2): -2, (1, 2): -2}
AND_GROUND_ENERGY = -3

# vertex order a, b, c, d, e, f
MULTIPLIER_FIELDS = (-1, -1, -2, -2, 4, 2)
MULTIPLIER_COUPLINGS = {
    (0, 1): 1, (0, 2): 2, (0, 3): 2, (1, 2): 2, (1, 3): 2, (2, 3): 4,
    (0, 4): -4, (1, 4): -4, (2, 4): -8, (3, 4): -8,
    (0, 5): -2, (1, 5): -2, (2, 5): -4, (3, 5): -4,
    (4, 5): 8,
}
MULTIPLIER_GROUND_ENERGY = -15


def _build(labels: Sequence[str], fields, couplings, expected: int) -> IsingNet:
    labels = [str(v) for v in labels]
    if len(labels) != expected:
        raise LabelError(f"expected {expected} labels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise LabelError(f"labels must be distinct: {labels}")
    form = QuadraticForm(
        0,
        {labels[k]: a for k, a in enumerate(fields)},
        {(labels[i], labels[j]): b for (i, j), b in couplings.items()},
    )
    return IsingNet(frozenset(labels), form)


def and_gate(labels: Sequence[str] = ("a", "b", "c")) -> IsingNet:
    """Ground states are exactly the graph of ``c = a AND b``, at energy -3."""
    return _build(labels, AND_FIELDS, AND_COUPLINGS, 3)


def full_multiplier(labels: Sequence[str] = ("a", "b", "c", "d", "e", "f")) -> IsingNet:
    """Ground states are exactly the solutions of ``ab + c + d = 2e + f``, at energy -15."""
    return _build(labels, MULTIPLIER_FIELDS, MULTIPLIER_COUPLINGS, 6)


def multiplier_relation(a: int, b: int, c: int, d: int, e: int, f: int) -> bool:
    return a * b + c + d == 2 * e + f
