"""Exception types and the shared capacity limit."""

import os
from contextvars import ContextVar

DEFAULT_MAX_DIM = 4096

_max_dim: ContextVar[int | None] = ContextVar("kring_max_dim", default=None)


class KringError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedTypeError(KringError, ValueError):
    pass


class InvariantViolation(KringError, ValueError):
    """A value failed a structural invariant (e.g. Weyl invariance)."""


class CapacityError(KringError):
    """A computation would exceed the configured size bound."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: size {size} exceeds capacity {limit} "
                         f"(raise with --max-dim or KRING_MAX_DIM)")
        self.what = what
        self.size = size
        self.limit = limit


class VerificationError(KringError):
    """An identity that must hold by theory failed; indicates a bug."""


def max_dim() -> int:
    value = _max_dim.get()
    if value is not None:
        return value
    env = os.environ.get("KRING_MAX_DIM")
    if env:
        return int(env)
    return DEFAULT_MAX_DIM


def set_max_dim(value: int | None):
    """Override the capacity bound for the current context; returns a reset token."""
    return _max_dim.set(value)


def check_capacity(what: str, size: int) -> None:
    limit = max_dim()
    if size > limit:
        raise CapacityError(what, size, limit)
