from .ring import (
    RingSpec,
    RingElement,
    add,
    multiply,
    is_unit,
    unit_count,
    euler_phi,
    factorize,
    is_prime,
    parity_case,
    classify,
)
from .field import PrimeField, GfMatrix

__all__ = [
    "RingSpec",
    "RingElement",
    "add",
    "multiply",
    "is_unit",
    "unit_count",
    "euler_phi",
    "factorize",
    "is_prime",
    "parity_case",
    "classify",
    "PrimeField",
    "GfMatrix",
]
