"""Exception hierarchy shared by every module of the package."""


class TopoPoolsError(Exception):
    """Base class for all errors raised by topo_pools."""


class ConstructionError(TopoPoolsError):
    pass


class ArgumentError(TopoPoolsError, ValueError):
    pass


class JoinError(TopoPoolsError):
    pass


class DomainError(TopoPoolsError):
    pass


class ColorError(TopoPoolsError):
    pass


class SizeError(TopoPoolsError):
    """A projected enumeration exceeds its configured cap."""


class ConfigError(TopoPoolsError, ValueError):
    pass


class NotEqualPoolError(TopoPoolsError):
    pass


class BoundExceeded(TopoPoolsError):
    """No round count up to the search bound satisfies the requested property."""


class InternalError(TopoPoolsError):
    """A construction that must succeed by theory did not."""
