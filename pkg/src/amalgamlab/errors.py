"""Exception types shared across the package."""


class AmalgamlabError(Exception):
    """Base class for all package-specific errors."""


class GuardExceededError(AmalgamlabError):
    """A search or enumeration would exceed a configured hard limit.

    Guards never degrade silently: the caller either raises the limit via
    the environment or accepts that the computation is out of reach.
    """

    def __init__(self, guard: str, limit: int, needed) -> None:
        self.guard = guard
        self.limit = limit
        self.needed = needed
        super().__init__(
            f"guard '{guard}' exceeded: limit {limit}, computation needs {needed}"
        )


class DegreeMismatchError(AmalgamlabError, ValueError):
    """Operands act on different point sets."""


class FormatError(AmalgamlabError, ValueError):
    """Malformed permutation, group file or graph file text."""


class GraphError(AmalgamlabError, ValueError):
    """Graph input violates a structural requirement (simple, connected...)."""


class AmalgamError(AmalgamlabError, ValueError):
    """Amalgam input violates a structural requirement."""


class ConstructionError(AmalgamlabError, ValueError):
    """A construction precondition failed on concrete input."""


class WitnessError(AmalgamlabError, ValueError):
    """An argument fails a stated hypothesis (e.g. not a p-group)."""
