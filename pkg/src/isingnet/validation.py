"""Input checks shared by the estimators and the CLI."""

from __future__ import annotations

from collections.abc import Mapping

from .exceptions import NetError
from .knuth import KnuthNet
from .spins import Configuration, IsingNet, check_total


def check_net(net) -> IsingNet:
    """Accept an :class:`IsingNet`, a :class:`KnuthNet` or a net document."""
    if isinstance(net, IsingNet):
        return net
    if isinstance(net, KnuthNet):
        return net.net
    if isinstance(net, Mapping):
        from .io import net_from_dict

        return net_from_dict(dict(net))
    raise NetError(f"expected an IsingNet, got {type(net).__name__}")


def check_configuration(net: IsingNet, config) -> Configuration:
    return check_total(net, config)


def check_positive_int(value, name: str, allow_zero: bool = False) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer")
    if value < 0 or (value == 0 and not allow_zero):
        raise ValueError(f"{name} must be {'non-negative' if allow_zero else 'positive'}, got {value}")
    return value
