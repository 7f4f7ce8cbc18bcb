"""Exception hierarchy."""


class NetError(ValueError):
    """Malformed net, form or coefficient."""


class AssignmentError(NetError):
    """A configuration is not total over a net, or spins conflict."""


class EnumerationCapError(NetError):
    """Exhaustive enumeration was requested on a net above the cap."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"net has {size} vertices, above the enumeration cap of {cap}")


class GlueSpecError(NetError):
    """An identification references a missing vertex or repeats one."""


class VertexCollisionError(NetError):
    """Two distinct vertices map to the same id after renaming."""


class SubsetError(NetError):
    """A partial configuration or program set references unknown vertices."""


class LabelError(NetError):
    """Gate labels are not distinct."""


class IncompatibleProgramsError(NetError):
    """Programs cannot be composed: no pair of ground states agrees on the overlap."""


class BudgetError(ValueError):
    """Non-positive update budget."""


class EmptySampleError(ValueError):
    """Statistic requested on an empty sample."""


class TrivialSizeError(ValueError):
    """Bit length too small for a factoring net."""


class SerializationError(ValueError):
    """A net document is malformed; the message names the offending key."""
