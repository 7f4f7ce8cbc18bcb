"""Spins, configurations and integer 2-local energy functions."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from . import config as _config
from .exceptions import AssignmentError, EnumerationCapError, NetError


class Spin(enum.IntEnum):
    """A single spin. The integer value is the spin's evaluation sign."""

    DOWN = -1
    UP = 1

    @classmethod
    def from_bit(cls, bit: int | bool) -> "Spin":
        return cls.UP if bit else cls.DOWN

    @property
    def bit(self) -> int:
        return 1 if self is Spin.UP else 0

    def flipped(self) -> "Spin":
        return Spin(-int(self))

    def __str__(self) -> str:
        return "up" if self is Spin.UP else "down"


def spin_value(spin: Spin) -> int:
    return int(spin)


def _as_spin(value) -> Spin:
    if isinstance(value, Spin):
        return value
    if isinstance(value, str):
        key = value.strip().lower()
        if key in ("up", "u", "+", "+1", "1"):
            return Spin.UP
        if key in ("down", "d", "-", "-1", "0"):
            return Spin.DOWN
        raise ValueError(f"cannot interpret {value!r} as a spin")
    if isinstance(value, (bool, np.bool_)):
        return Spin.from_bit(bool(value))
    if value in (1, -1):
        return Spin(int(value))
    if value == 0:
        return Spin.DOWN
    raise ValueError(f"cannot interpret {value!r} as a spin")


class Configuration(Mapping):
    """Immutable, hashable assignment of vertices to spins.

    Accepts spins, bits (0/1), signs (-1/+1) or the strings ``"up"``/``"down"``
    as values. A configuration may be partial; totality is checked against a
    net when one is evaluated.
    """

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, assignment: Mapping | Iterable = ()):
        pairs = assignment.items() if isinstance(assignment, Mapping) else assignment
        data = {str(v): _as_spin(s) for v, s in pairs}
        self._items = tuple(sorted(data.items()))
        self._map = data
        self._hash = None

    def __getitem__(self, vertex: str) -> Spin:
        return self._map[vertex]

    def __iter__(self) -> Iterator[str]:
        return (v for v, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Configuration):
            return self._items == other._items
        if isinstance(other, Mapping):
            try:
                return self == Configuration(other)
            except ValueError:
                return False
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{v}:{'+' if s is Spin.UP else '-'}" for v, s in self._items)
        return f"Configuration({{{body}}})"

    def restrict(self, vertices: Iterable[str]) -> "Configuration":
        keep = set(vertices)
        return Configuration((v, s) for v, s in self._items if v in keep)

    def merge(self, other: Mapping) -> "Configuration":
        """Join two configurations; they must agree on shared vertices."""
        other = other if isinstance(other, Configuration) else Configuration(other)
        for v, s in other._items:
            if v in self._map and self._map[v] is not s:
                raise AssignmentError(f"conflicting spins for vertex {v!r}")
        merged = dict(self._map)
        merged.update(other._map)
        return Configuration(merged)

    def flipped(self) -> "Configuration":
        return Configuration((v, s.flipped()) for v, s in self._items)

    def relabel(self, mapping: Mapping[str, str]) -> "Configuration":
        return Configuration((mapping.get(v, v), s) for v, s in self._items)

    def bits(self, order: Iterable[str]) -> tuple[int, ...]:
        return tuple(self._map[v].bit for v in order)

    @classmethod
    def from_bits(cls, vertices: Iterable[str], bits: Iterable[int]) -> "Configuration":
        vertices = list(vertices)
        bits = list(bits)
        if len(vertices) != len(bits):
            raise ValueError("vertex and bit sequences differ in length")
        return cls(zip(vertices, (Spin.from_bit(b) for b in bits)))

    @classmethod
    def from_index(cls, vertices: Iterable[str], index: int) -> "Configuration":
        """Decode an enumeration index (bit k set means k-th vertex up)."""
        return cls((v, Spin.from_bit((index >> k) & 1)) for k, v in enumerate(vertices))


def pair_key(u: str, v: str) -> tuple[str, str]:
    if u == v:
        raise NetError(f"self-coupling on vertex {u!r}")
    return (u, v) if u < v else (v, u)


def _check_int(value, what: str) -> int:
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, (int, np.integer)):
        raise NetError(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class QuadraticForm:
    """Integer energy ``constant + sum(fields[i]*s_i) + sum(couplings[i,j]*s_i*s_j)``.

    Coupling keys are canonical pairs ``(u, v)`` with ``u < v``. Zero
    coefficients are dropped so that equal energy functions compare equal.
    """

    constant: int = 0
    fields: Mapping[str, int] = field(default_factory=dict)
    couplings: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        constant = _check_int(self.constant, "constant")
        fields = {}
        for v, a in self.fields.items():
            a = _check_int(a, f"field on {v!r}")
            if a:
                fields[str(v)] = a
        couplings: dict[tuple[str, str], int] = {}
        for key, b in self.couplings.items():
            u, v = key
            b = _check_int(b, f"coupling on {key!r}")
            k = pair_key(str(u), str(v))
            couplings[k] = couplings.get(k, 0) + b
        couplings = {k: b for k, b in couplings.items() if b}
        object.__setattr__(self, "constant", constant)
        object.__setattr__(self, "fields", MappingProxyType(dict(sorted(fields.items()))))
        object.__setattr__(self, "couplings", MappingProxyType(dict(sorted(couplings.items()))))

    def __hash__(self) -> int:
        return hash((self.constant, tuple(self.fields.items()), tuple(self.couplings.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return (
            self.constant == other.constant
            and dict(self.fields) == dict(other.fields)
            and dict(self.couplings) == dict(other.couplings)
        )

    def vertices(self) -> set[str]:
        out = set(self.fields)
        for u, v in self.couplings:
            out.update((u, v))
        return out

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        fields = dict(self.fields)
        for v, a in other.fields.items():
            fields[v] = fields.get(v, 0) + a
        couplings = dict(self.couplings)
        for k, b in other.couplings.items():
            couplings[k] = couplings.get(k, 0) + b
        return QuadraticForm(self.constant + other.constant, fields, couplings)

    def scaled(self, factor: int) -> "QuadraticForm":
        factor = _check_int(factor, "factor")
        return QuadraticForm(
            self.constant * factor,
            {v: a * factor for v, a in self.fields.items()},
            {k: b * factor for k, b in self.couplings.items()},
        )

    def relabel(self, mapping: Mapping[str, str]) -> "QuadraticForm":
        """Rename vertices; couplings that collapse onto one pair add up."""
        fields: dict[str, int] = {}
        for v, a in self.fields.items():
            w = mapping.get(v, v)
            fields[w] = fields.get(w, 0) + a
        couplings: dict[tuple[str, str], int] = {}
        for (u, v), b in self.couplings.items():
            k = pair_key(mapping.get(u, u), mapping.get(v, v))
            couplings[k] = couplings.get(k, 0) + b
        return QuadraticForm(self.constant, fields, couplings)


@dataclass(frozen=True)
class IsingNet:
    """A named vertex set with a 2-local integer energy."""

    vertices: frozenset
    energy: QuadraticForm = field(default_factory=QuadraticForm)

    def __post_init__(self):
        if isinstance(self.vertices, str):
            raise NetError("vertices must be a collection of ids, not a string")
        vertices = [str(v) for v in self.vertices]
        if len(set(vertices)) != len(vertices):
            raise NetError("duplicate vertex ids")
        object.__setattr__(self, "vertices", frozenset(vertices))
        if not isinstance(self.energy, QuadraticForm):
            raise NetError("energy must be a QuadraticForm")
        stray = self.energy.vertices() - self.vertices
        if stray:
            raise NetError(f"energy references unknown vertices: {sorted(stray)}")

    @classmethod
    def from_coefficients(cls, vertices, constant=0, fields=None, couplings=None) -> "IsingNet":
        return cls(frozenset(vertices), QuadraticForm(constant, fields or {}, couplings or {}))

    @property
    def order(self) -> list[str]:
        """Vertices in enumeration order (sorted by id)."""
        return sorted(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def relabel(self, mapping: Mapping[str, str]) -> "IsingNet":
        renamed = [mapping.get(v, v) for v in self.vertices]
        if len(set(renamed)) != len(renamed):
            raise NetError("relabelling is not injective")
        return IsingNet(frozenset(renamed), self.energy.relabel(mapping))


def check_total(net: IsingNet, config: Mapping) -> Configuration:
    config = config if isinstance(config, Configuration) else Configuration(config)
    keys = set(config)
    missing = net.vertices - keys
    extra = keys - net.vertices
    if missing or extra:
        raise AssignmentError(
            f"configuration is not total over the net: missing {sorted(missing)}, extra {sorted(extra)}"
        )
    return config


def energy(net: IsingNet, config: Mapping) -> int:
    config = check_total(net, config)
    form = net.energy
    total = form.constant
    for v, a in form.fields.items():
        total += a * int(config[v])
    for (u, v), b in form.couplings.items():
        total += b * int(config[u]) * int(config[v])
    return total


def iter_configurations(net: IsingNet) -> Iterator[Configuration]:
    order = net.order
    for index in range(1 << len(order)):
        yield Configuration.from_index(order, index)


class DenseForm:
    """Array view of a net's energy in enumeration order.

    ``coupling`` is symmetric with a zero diagonal, so the pair sum is
    ``s @ coupling @ s / 2``. Values are int64 when every partial sum fits,
    otherwise Python integers in object arrays.
    """

    def __init__(self, net: IsingNet):
        self.order = net.order
        self.index = {v: k for k, v in enumerate(self.order)}
        form = net.energy
        bound = abs(form.constant) + sum(abs(a) for a in form.fields.values())
        bound += sum(abs(b) for b in form.couplings.values())
        self.dtype = np.int64 if 2 * bound < 2**62 else object
        n = len(self.order)
        self.constant = form.constant
        self.fields = np.zeros(n, dtype=self.dtype)
        self.coupling = np.zeros((n, n), dtype=self.dtype)
        for v, a in form.fields.items():
            self.fields[self.index[v]] = a
        for (u, v), b in form.couplings.items():
            i, j = self.index[u], self.index[v]
            self.coupling[i, j] = b
            self.coupling[j, i] = b

    def __len__(self) -> int:
        return len(self.order)

    def energies(self, spins: np.ndarray, fields: np.ndarray | None = None,
                 coupling: np.ndarray | None = None, constant: int | None = None) -> np.ndarray:
        fields = self.fields if fields is None else fields
        coupling = self.coupling if coupling is None else coupling
        constant = self.constant if constant is None else constant
        spins = spins.astype(self.dtype, copy=False)
        pair = ((spins @ coupling) * spins).sum(axis=1) // 2
        return constant + spins @ fields + pair

    def energy_of(self, spins: np.ndarray) -> int:
        return int(self.energies(spins[None, :])[0])


_CHUNK_BITS = 18


def spin_table(n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows of +-1 spins for enumeration indices ``start..stop`` (low bit first)."""
    stop = (1 << n) if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n, dtype=np.int64)) & 1
    return (2 * bits - 1).astype(np.int8)


def dense_ground_indices(dense: DenseForm, cap: int | None = None):
    """Minimum energy and all minimising enumeration indices, in order."""
    n = len(dense)
    _check_cap(n, cap)
    best = None
    found: list[np.ndarray] = []
    chunk = 1 << _CHUNK_BITS
    total = 1 << n
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        values = dense.energies(spin_table(n, start, stop))
        low = values.min()
        if best is None or low < best:
            best = low
            found = []
        if low == best:
            found.append(np.flatnonzero(values == low) + start)
    return int(best), np.concatenate(found)


def _check_cap(size: int, cap: int | None) -> None:
    cap = _config.get().enumeration_cap if cap is None else cap
    if size > cap:
        raise EnumerationCapError(size, cap)


def ground_energy_and_states(net: IsingNet, cap: int | None = None) -> tuple[int, frozenset]:
    """Exhaustive minimisation over all ``2**len(net)`` configurations.

    Returns the ground energy and the set of every configuration attaining it.
    Raises :class:`EnumerationCapError` when the net exceeds ``cap`` vertices.
    """
    _check_cap(len(net), cap)
    dense = DenseForm(net)
    best, indices = dense_ground_indices(dense, cap)
    states = frozenset(Configuration.from_index(dense.order, int(k)) for k in indices)
    return best, states


def ground_energy(net: IsingNet, cap: int | None = None) -> int:
    _check_cap(len(net), cap)
    return dense_ground_indices(DenseForm(net), cap)[0]
