"""Python bindings for the diffax library."""

from ._diffax import (
    DiffaxError,
    certify,
    derive,
    groebner,
    member,
    parse,
    reduce,
    tau,
    witness_search,
)

__all__ = [
    "DiffaxError",
    "certify",
    "derive",
    "groebner",
    "member",
    "parse",
    "reduce",
    "tau",
    "witness_search",
]
