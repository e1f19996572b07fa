"""Hard limits for searches and enumerations.

Every potentially explosive routine checks one of these guards up front and
raises GuardExceededError when the input is too large.  The two guards that
practical use actually bumps into (full element scans and coset-action
degree) can be raised per process through environment variables:

    AMALGAMLAB_GUARD_ELEMENTS   element-scan cap        (default 200000)
    AMALGAMLAB_GUARD_DEGREE     coset-action degree cap (default 100000)
"""
import os
from dataclasses import dataclass

__all__ = ["Guards", "guards"]


@dataclass(frozen=True)
class Guards:
    elements: int = 200_000
    degree: int = 100_000
    order: int = 10**12
    setwise_degree: int = 512
    thompson_order: int = 4096
    isomorphism_degree: int = 64
    autos_vertices: int = 200


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc


def guards() -> Guards:
    """Current guard values, re-reading the environment on each call."""
    base = Guards()
    return Guards(
        elements=_env_int("AMALGAMLAB_GUARD_ELEMENTS", base.elements),
        degree=_env_int("AMALGAMLAB_GUARD_DEGREE", base.degree),
        order=base.order,
        setwise_degree=base.setwise_degree,
        thompson_order=base.thompson_order,
        isomorphism_degree=base.isomorphism_degree,
        autos_vertices=base.autos_vertices,
    )
