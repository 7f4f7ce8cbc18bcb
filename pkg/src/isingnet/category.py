"""Morphisms, spans and pushouts of Ising nets, checked by enumeration.

A morphism ``f: source -> target`` is an injective vertex map along which
restriction carries every ground state of the target to a ground state of
the source. Ground-state sets are always computed, never declared.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

from .algebra import GlueSpec, glue
from .exceptions import NetError
from .spins import (
    Configuration,
    IsingNet,
    _check_cap,
    ground_energy_and_states,
)


@dataclass(frozen=True)
class TableNet:
    """A net whose energy is an arbitrary function of the configuration.

    Needed for reindexed nets, whose 0/1 indicator energy is not 2-local.
    """

    vertices: frozenset
    energy_fn: Callable[[Configuration], int] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(str(v) for v in self.vertices))

    @property
    def order(self) -> list[str]:
        return sorted(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


AnyNet = IsingNet | TableNet


def ground_states(net: AnyNet, cap: int | None = None) -> frozenset:
    if isinstance(net, IsingNet):
        return ground_energy_and_states(net, cap)[1]
    _check_cap(len(net), cap)
    order = net.order
    best = None
    states: list[Configuration] = []
    for index in range(1 << len(order)):
        config = Configuration.from_index(order, index)
        value = net.energy_fn(config)
        if best is None or value < best:
            best, states = value, [config]
        elif value == best:
            states.append(config)
    return frozenset(states)


def pull_back(state: Configuration, mapping: Mapping[str, str]) -> Configuration:
    """Restriction of a target state along ``mapping`` (source -> target)."""
    return Configuration((v, state[w]) for v, w in mapping.items())


@dataclass(frozen=True)
class NetMorphism:
    source: AnyNet
    target: AnyNet
    mapping: Mapping[str, str]

    def __post_init__(self):
        mapping = {str(k): str(v) for k, v in dict(self.mapping).items()}
        if set(mapping) != set(self.source.vertices):
            raise NetError("morphism must be defined on every source vertex")
        if not set(mapping.values()) <= set(self.target.vertices):
            raise NetError("morphism maps outside the target vertices")
        if len(set(mapping.values())) != len(mapping):
            raise NetError("morphism vertex map is not injective")
        object.__setattr__(self, "mapping", mapping)

    def then(self, other: "NetMorphism") -> "NetMorphism":
        """The composite ``other . self``."""
        return NetMorphism(self.source, other.target,
                           {v: other.mapping[w] for v, w in self.mapping.items()})

    @classmethod
    def identity(cls, net: AnyNet) -> "NetMorphism":
        return cls(net, net, {v: v for v in net.vertices})


def is_morphism(candidate: NetMorphism, cap: int | None = None) -> bool:
    source_ground = ground_states(candidate.source, cap)
    return all(
        pull_back(g, candidate.mapping) in source_ground
        for g in ground_states(candidate.target, cap)
    )


@dataclass(frozen=True)
class Span:
    apex: AnyNet
    left_leg: NetMorphism
    right_leg: NetMorphism

    def __post_init__(self):
        if self.left_leg.source != self.apex or self.right_leg.source != self.apex:
            raise NetError("span legs must start at the apex")

    @property
    def left(self) -> AnyNet:
        return self.left_leg.target

    @property
    def right(self) -> AnyNet:
        return self.right_leg.target

    def glue_spec(self) -> GlueSpec:
        return GlueSpec.pairs(
            (self.left_leg.mapping[v], self.right_leg.mapping[v]) for v in sorted(self.apex.vertices)
        )


def is_admissible(span: Span, cap: int | None = None) -> bool:
    """Some apex ground state restricts from ground states on both sides."""
    apex_ground = ground_states(span.apex, cap)
    from_left = {pull_back(g, span.left_leg.mapping) for g in ground_states(span.left, cap)}
    from_right = {pull_back(g, span.right_leg.mapping) for g in ground_states(span.right, cap)}
    return bool(apex_ground & from_left & from_right)


@dataclass(frozen=True)
class NoPushout:
    reason: str = "span is not admissible"

    def __bool__(self) -> bool:
        return False


def pushout(span: Span, cap: int | None = None) -> IsingNet | NoPushout:
    """The glued net when the span is admissible, otherwise :class:`NoPushout`."""
    if not isinstance(span.left, IsingNet) or not isinstance(span.right, IsingNet):
        raise NetError("pushouts are formed for quadratic nets only")
    if not is_admissible(span, cap):
        return NoPushout()
    return glue(span.left, span.right, span.glue_spec())


def reindex(net: AnyNet, mapping: Mapping[str, str], cap: int | None = None) -> TableNet:
    """Net on ``mapping``'s domain with energy 0 on restrictions of ground states of ``net``, 1 elsewhere.

    Its ground set is exactly those restrictions, the smallest one making
    ``mapping`` a morphism into ``net``.
    """
    mapping = dict(mapping)
    allowed = frozenset(pull_back(g, mapping) for g in ground_states(net, cap))
    return TableNet(frozenset(mapping), lambda config: 0 if config in allowed else 1)


def free_net(vertices) -> IsingNet:
    """Zero energy: every configuration is a ground state."""
    return IsingNet(frozenset(vertices))


def all_injections(domain: list[str], codomain: list[str]):
    for image in itertools.permutations(sorted(codomain), len(domain)):
        yield dict(zip(domain, image))


__all__ = [
    "TableNet",
    "NetMorphism",
    "Span",
    "NoPushout",
    "ground_states",
    "is_morphism",
    "is_admissible",
    "pushout",
    "reindex",
    "free_net",
    "all_injections",
]
