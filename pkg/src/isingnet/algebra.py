"""Gluing, clamping, programs and their executions and composition."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .exceptions import (
    AssignmentError,
    GlueSpecError,
    IncompatibleProgramsError,
    SubsetError,
    VertexCollisionError,
)
from .spins import Configuration, IsingNet, QuadraticForm, ground_energy_and_states


@dataclass(frozen=True)
class GlueSpec:
    """Identifications ``(left_id, right_id, merged_id)``.

    ``merged_id`` defaults to the left id. Each left and each right vertex may
    appear at most once.
    """

    identify: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        rows = []
        for row in self.identify:
            if len(row) == 2:
                left, right = row
                merged = left
            elif len(row) == 3:
                left, right, merged = row
                merged = left if merged is None else merged
            else:
                raise GlueSpecError(f"identification must have 2 or 3 entries, got {row!r}")
            rows.append((str(left), str(right), str(merged)))
        lefts = [r[0] for r in rows]
        rights = [r[1] for r in rows]
        if len(set(lefts)) != len(lefts):
            raise GlueSpecError("a left vertex is identified more than once")
        if len(set(rights)) != len(rights):
            raise GlueSpecError("a right vertex is identified more than once")
        object.__setattr__(self, "identify", tuple(rows))

    @classmethod
    def along(cls, vertices: Iterable[str]) -> "GlueSpec":
        """Identify equally named vertices of the two nets."""
        return cls(tuple((v, v, v) for v in vertices))

    @classmethod
    def pairs(cls, pairs: Iterable[tuple[str, str]]) -> "GlueSpec":
        return cls(tuple((a, b, a) for a, b in pairs))

    @property
    def left_ids(self) -> list[str]:
        return [r[0] for r in self.identify]

    @property
    def right_ids(self) -> list[str]:
        return [r[1] for r in self.identify]

    @property
    def merged_ids(self) -> list[str]:
        return [r[2] for r in self.identify]

    def renamings(self, left: IsingNet, right: IsingNet) -> tuple[dict[str, str], dict[str, str]]:
        """Vertex maps from each side into the glued vertex set."""
        for lid, rid, _ in self.identify:
            if lid not in left.vertices:
                raise GlueSpecError(f"left vertex {lid!r} is not in the left net")
            if rid not in right.vertices:
                raise GlueSpecError(f"right vertex {rid!r} is not in the right net")
        lmap = {v: v for v in left.vertices}
        rmap = {v: v for v in right.vertices}
        for lid, rid, merged in self.identify:
            lmap[lid] = merged
            rmap[rid] = merged
        for side, mapping in (("left", lmap), ("right", rmap)):
            if len(set(mapping.values())) != len(mapping):
                raise VertexCollisionError(f"renaming of the {side} net is not injective")
        shared = set(lmap.values()) & set(rmap.values())
        if shared != set(self.merged_ids):
            clash = sorted(shared - set(self.merged_ids))
            raise VertexCollisionError(f"non-identified vertices collide after renaming: {clash}")
        return lmap, rmap


def glue(left: IsingNet, right: IsingNet, spec: GlueSpec | None = None) -> IsingNet:
    """Identify the overlap and add the two energies coefficient-wise."""
    spec = GlueSpec() if spec is None else spec
    lmap, rmap = spec.renamings(left, right)
    vertices = frozenset(lmap.values()) | frozenset(rmap.values())
    return IsingNet(vertices, left.energy.relabel(lmap) + right.energy.relabel(rmap))


def _as_config(partial) -> Configuration:
    return partial if isinstance(partial, Configuration) else Configuration(partial)


def clamp(net: IsingNet, partial: Mapping) -> IsingNet:
    """Fix the spins in ``partial`` and fold them into constant and fields."""
    partial = _as_config(partial)
    unknown = set(partial) - net.vertices
    if unknown:
        raise SubsetError(f"clamped vertices not in the net: {sorted(unknown)}")
    if not partial:
        return net
    form = net.energy
    constant = form.constant
    fields = {}
    for v, a in form.fields.items():
        if v in partial:
            constant += a * int(partial[v])
        else:
            fields[v] = a
    couplings = {}
    for (u, v), b in form.couplings.items():
        if u in partial and v in partial:
            constant += b * int(partial[u]) * int(partial[v])
        elif u in partial:
            fields[v] = fields.get(v, 0) + b * int(partial[u])
        elif v in partial:
            fields[u] = fields.get(u, 0) + b * int(partial[v])
        else:
            couplings[(u, v)] = b
    return IsingNet(net.vertices - set(partial), QuadraticForm(constant, fields, couplings))


def overlap_restrictions(states: Iterable[Configuration], mapping: Mapping[str, str]) -> set:
    """Restrict states to ``mapping``'s keys, renamed to its values."""
    out = set()
    for s in states:
        out.add(Configuration((mapping[v], s[v]) for v in mapping))
    return out


def compatible(left: IsingNet, right: IsingNet, spec: GlueSpec | None = None,
               cap: int | None = None) -> bool:
    """True iff a ground state of each side agree on the identified overlap."""
    spec = GlueSpec() if spec is None else spec
    spec.renamings(left, right)
    _, left_states = ground_energy_and_states(left, cap)
    _, right_states = ground_energy_and_states(right, cap)
    on_left = overlap_restrictions(left_states, {r[0]: r[2] for r in spec.identify})
    on_right = overlap_restrictions(right_states, {r[1]: r[2] for r in spec.identify})
    return bool(on_left & on_right)


@dataclass(frozen=True)
class Program:
    """Input and output vertex sequences on a net. They may overlap."""

    net: IsingNet
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]

    def __post_init__(self):
        inputs = tuple(str(v) for v in self.inputs)
        outputs = tuple(str(v) for v in self.outputs)
        for name, seq in (("inputs", inputs), ("outputs", outputs)):
            unknown = set(seq) - self.net.vertices
            if unknown:
                raise SubsetError(f"program {name} not in the net: {sorted(unknown)}")
            if len(set(seq)) != len(seq):
                raise SubsetError(f"program {name} repeat a vertex")
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "outputs", outputs)

    def reversed(self) -> "Program":
        return Program(self.net, self.outputs, self.inputs)


@dataclass(frozen=True)
class ExecutionResult:
    achieved_energy: int
    full_states: frozenset
    output_states: frozenset


def execute(program: Program, inputs: Mapping, cap: int | None = None) -> ExecutionResult:
    """Clamp the inputs, minimise the rest, and read off the outputs.

    ``achieved_energy`` is the ground energy of the clamped net. It lets a
    caller compare against a known bound to detect an infeasible input.
    """
    inputs = _as_config(inputs)
    if set(inputs) != set(program.inputs):
        raise AssignmentError(
            f"input must assign exactly {sorted(program.inputs)}, got {sorted(inputs)}"
        )
    clamped = clamp(program.net, inputs)
    achieved, states = ground_energy_and_states(clamped, cap)
    full = frozenset(s.merge(inputs) for s in states)
    outputs = frozenset(s.restrict(program.outputs) for s in full)
    return ExecutionResult(achieved, full, outputs)


def compose(p: Program, q: Program, spec: GlueSpec, cap: int | None = None) -> Program:
    """Glue ``p``'s outputs to ``q``'s inputs and form the composite program.

    Unidentified inputs of ``q`` join the composite inputs and unidentified
    outputs of ``p`` stay outputs, so composing along an empty overlap gives
    the parallel program.
    """
    if not set(spec.left_ids) <= set(p.outputs):
        raise GlueSpecError("identified left vertices must be outputs of the first program")
    if not set(spec.right_ids) <= set(q.inputs):
        raise GlueSpecError("identified right vertices must be inputs of the second program")
    if not compatible(p.net, q.net, spec, cap):
        raise IncompatibleProgramsError("no ground states of the two nets agree on the overlap")
    lmap, rmap = spec.renamings(p.net, q.net)
    net = glue(p.net, q.net, spec)
    matched_left = set(spec.left_ids)
    matched_right = set(spec.right_ids)
    inputs = [lmap[v] for v in p.inputs] + [rmap[v] for v in q.inputs if v not in matched_right]
    outputs = [rmap[v] for v in q.outputs] + [lmap[v] for v in p.outputs if v not in matched_left]
    return Program(net, tuple(dict.fromkeys(inputs)), tuple(dict.fromkeys(outputs)))

