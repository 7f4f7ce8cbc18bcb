"""Knuth multiplication nets and the factoring program built on them.

Cell ``(i, j)`` is a full multiplier ``a*b + c + d = 2e + f`` with ``a = r_i``,
``b = g_j``, carry-in ``c``, partial sum in ``d``, carry-out ``e`` and partial
sum out ``f``. Its sum bit ``f`` has weight ``2**(i+j-2)``.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .algebra import Program, clamp, execute
from .exceptions import TrivialSizeError
from .gates import MULTIPLIER_GROUND_ENERGY, full_multiplier, multiplier_relation
from .spins import Configuration, IsingNet, QuadraticForm, Spin

CELL_LABELS = ("a", "b", "c", "d", "e", "f")


@dataclass(frozen=True)
class KnuthDims:
    """``n`` bits for the factor ``r`` and ``m`` bits for the factor ``g``."""

    n: int
    m: int

    def __post_init__(self):
        for name in ("n", "m"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    @property
    def size(self) -> int:
        return 2 * self.m * self.n + self.m + self.n

    @property
    def ground_energy(self) -> int:
        return MULTIPLIER_GROUND_ENERGY * self.m * self.n

    @property
    def label(self) -> str:
        return f"{self.n} x {self.m}"

    @classmethod
    def parse(cls, text: str) -> "KnuthDims":
        n, m = text.lower().replace(" ", "").split("x")
        return cls(int(n), int(m))


class UnionFind:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def find(self, x: str) -> str:
        root = self.parent.setdefault(x, x)
        while root != self.parent[root]:
            root = self.parent[root]
        while x != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: str, y: str) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def classes(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for x in list(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return out


def cell_vertex(label: str, i: int, j: int) -> str:
    return f"{label}.{i}.{j}"


def identifications(dims: KnuthDims) -> list[tuple[str, str]]:
    """Every pair of raw cell vertices that is identified, family by family."""
    n, m = dims.n, dims.m
    pairs = []
    for i in range(1, n + 1):
        for j in range(2, m + 1):
            pairs.append((cell_vertex("a", i, 1), cell_vertex("a", i, j)))
    for j in range(1, m + 1):
        for i in range(2, n + 1):
            pairs.append((cell_vertex("b", 1, j), cell_vertex("b", i, j)))
    # carry out of (i, j) feeds the carry in of (i+1, j)
    for j in range(1, m + 1):
        for i in range(1, n):
            pairs.append((cell_vertex("c", i + 1, j), cell_vertex("e", i, j)))
    for i in range(1, n):
        for j in range(1, m):
            pairs.append((cell_vertex("d", i, j + 1), cell_vertex("f", i + 1, j)))
    for j in range(1, m):
        pairs.append((cell_vertex("e", n, j), cell_vertex("d", n, j + 1)))
    return pairs


def zeroed_vertices(dims: KnuthDims) -> list[str]:
    """Raw vertices clamped down: every ``d.i.1`` and ``c.1.j``."""
    return [cell_vertex("d", i, 1) for i in range(1, dims.n + 1)] + [
        cell_vertex("c", 1, j) for j in range(1, dims.m + 1)
    ]


def _class_name(members: list[str]) -> str:
    for label, symbol, pos in (("a", "r", 1), ("b", "g", 2)):
        hits = [v for v in members if v.startswith(label + ".")]
        if hits:
            return f"{symbol}.{hits[0].split('.')[pos]}"
    return min(members)


@dataclass(frozen=True)
class KnuthNet:
    net: IsingNet
    dims: KnuthDims
    r_vertices: tuple[str, ...]
    g_vertices: tuple[str, ...]
    product_vertices: tuple[str, ...]
    cell_index: Mapping[tuple[int, int], tuple[str | None, ...]] = field(repr=False)
    unclamped: IsingNet = field(repr=False, compare=False)

    def cell_satisfied(self, config: Mapping, i: int, j: int) -> bool:
        bits = [0 if v is None else int(config[v] is Spin.UP) for v in self.cell_index[(i, j)]]
        return multiplier_relation(*bits)

    def unsatisfied_cells(self, config: Mapping) -> list[tuple[int, int]]:
        return [cell for cell in self.cell_index if not self.cell_satisfied(config, *cell)]

    def decode(self, config: Mapping) -> tuple[int, int, int]:
        """``(r, g, product)`` read from a configuration."""
        r = bits_to_int(config[v].bit for v in reversed(self.r_vertices))
        g = bits_to_int(config[v].bit for v in reversed(self.g_vertices))
        p = bits_to_int(config[v].bit for v in self.product_vertices)
        return r, g, p

    def encode_product(self, value: int) -> Configuration:
        width = len(self.product_vertices)
        if not 0 <= value < 1 << width:
            raise ValueError(f"{value} does not fit in {width} product bits")
        return Configuration.from_bits(self.product_vertices, int_to_bits(value, width))


def bits_to_int(bits) -> int:
    """Big-endian bits to an integer."""
    out = 0
    for b in bits:
        out = 2 * out + int(b)
    return out


def int_to_bits(value: int, width: int) -> list[int]:
    return [(value >> k) & 1 for k in reversed(range(width))]


def build_knuth(dims: KnuthDims | tuple[int, int]) -> KnuthNet:
    """Glue ``n*m`` full multipliers with one union-find pass, then zero M1 inputs."""
    dims = dims if isinstance(dims, KnuthDims) else KnuthDims(*dims)
    n, m = dims.n, dims.m
    uf = UnionFind()
    raw = QuadraticForm()
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            labels = [cell_vertex(x, i, j) for x in CELL_LABELS]
            for v in labels:
                uf.find(v)
            raw = raw + full_multiplier(labels).energy
    for x, y in identifications(dims):
        uf.union(x, y)
    rename = {}
    for members in uf.classes().values():
        name = _class_name(members)
        for v in members:
            rename[v] = name
    glued = IsingNet(frozenset(rename.values()), raw.relabel(rename))
    zeroed = {rename[v] for v in zeroed_vertices(dims)}
    net = clamp(glued, {v: Spin.DOWN for v in zeroed})

    cells = {}
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            ids = [rename[cell_vertex(x, i, j)] for x in CELL_LABELS]
            cells[(i, j)] = tuple(None if v in zeroed else v for v in ids)
    product = [rename[cell_vertex("e", n, m)]]
    product += [rename[cell_vertex("f", i, m)] for i in range(n, 0, -1)]
    product += [rename[cell_vertex("f", 1, j)] for j in range(m - 1, 0, -1)]
    return KnuthNet(
        net=net,
        dims=dims,
        r_vertices=tuple(f"r.{i}" for i in range(1, n + 1)),
        g_vertices=tuple(f"g.{j}" for j in range(1, m + 1)),
        product_vertices=tuple(product),
        cell_index=MappingProxyType(cells),
        unclamped=glued,
    )


def factoring_program(knet: KnuthNet) -> Program:
    """Clamp the product bits, read back the factor bits."""
    return Program(knet.net, knet.product_vertices, knet.r_vertices + knet.g_vertices)


class FactorStatus(str, enum.Enum):
    FACTORED = "factored"
    INFEASIBLE = "infeasible"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class FactoringOutcome:
    status: FactorStatus
    achieved_energy: int
    factor_pairs: frozenset = frozenset()
    target: int | None = None
    dims: KnuthDims | None = None

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "energy": self.achieved_energy,
            "pairs": [list(p) for p in sorted(self.factor_pairs)],
        }


def factor(target: int, dims: KnuthDims | tuple[int, int], backend: str = "exact",
           budget: int = 10_000, seed: int = 0, fraction=0.5, attempts: int = 1,
           cap: int | None = None) -> FactoringOutcome:
    """Search for ``r * g == target`` with ``r < 2**n`` and ``g < 2**m``.

    The exact backend enumerates every ground state of the clamped net and so
    returns all ordered factor pairs, or ``infeasible`` when the ground energy
    exceeds ``-15*m*n``. The local backend runs seeded local updates and can
    only report the pair it lands on, or ``budget_exhausted``.
    """
    dims = dims if isinstance(dims, KnuthDims) else KnuthDims(*dims)
    knet = build_knuth(dims)
    if isinstance(target, bool) or not isinstance(target, int):
        raise TypeError("target must be an integer")
    product = knet.encode_product(target)
    bound = dims.ground_energy

    if backend == "exact":
        result = execute(factoring_program(knet), product, cap)
        if result.achieved_energy != bound:
            return FactoringOutcome(FactorStatus.INFEASIBLE, result.achieved_energy,
                                    frozenset(), target, dims)
        pairs = frozenset(knet.decode(s)[:2] for s in result.full_states)
        return FactoringOutcome(FactorStatus.FACTORED, result.achieved_energy, pairs, target, dims)

    if backend != "local":
        raise ValueError(f"unknown backend {backend!r}")
    from .config import derive_seed
    from .solver import FigureStrategy, local_update_run

    clamped = clamp(knet.net, product)
    strategy = FigureStrategy("random_half", fraction)
    best = None
    pairs = set()
    for attempt in range(attempts):
        run_seed = seed if attempts == 1 else derive_seed(seed, attempt)
        outcome = local_update_run(clamped, bound, strategy, budget, run_seed, cap=cap)
        best = outcome.final_energy if best is None else min(best, outcome.final_energy)
        if outcome.reached_ground:
            pairs.add(knet.decode(outcome.config.merge(product))[:2])
    if pairs:
        return FactoringOutcome(FactorStatus.FACTORED, bound, frozenset(pairs), target, dims)
    return FactoringOutcome(FactorStatus.BUDGET_EXHAUSTED, best, frozenset(), target, dims)


def general_dims(p: int) -> KnuthDims:
    """Net dimensions that cover any composite of ``p`` bits: ``(p // 2, p - 2)``.

    The resulting net has ``2*n*m + n + m`` spins, quadratic in ``p``.
    """
    if p < 3:
        raise TrivialSizeError(f"a {p}-bit number has no nontrivial factoring net")
    return KnuthDims(p // 2, p - 2)
