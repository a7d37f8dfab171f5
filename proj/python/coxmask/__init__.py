"""Bruhat intervals, relative masks and the acyclic matching they induce."""

from ._coxmask import (
    Element,
    Error,
    Group,
    InputError,
    IntegrityError,
    IoError,
    NoMoveError,
    OrderingError,
    PrecisionError,
    PreconditionError,
    ResourceError,
    preset_names,
)

__all__ = [
    "Element",
    "Error",
    "Group",
    "InputError",
    "IntegrityError",
    "IoError",
    "NoMoveError",
    "OrderingError",
    "PrecisionError",
    "PreconditionError",
    "ResourceError",
    "preset_names",
]
