from __future__ import annotations


class HHCalcError(Exception):
    """Base class for every error raised by hhcalc."""


class ComplexError(HHCalcError, ValueError):
    """A simplicial-complex construction was called outside its preconditions."""


class ComplexFormatError(HHCalcError, ValueError):
    """A facet file could not be parsed."""


class FieldError(HHCalcError, ValueError):
    """Unknown or invalid coefficient field."""


class DimensionError(HHCalcError, ValueError):
    """Matrix or vector shapes do not agree."""


class CapExceededError(HHCalcError, RuntimeError):
    """The complex has more vertices than the configured enumeration cap."""

    def __init__(self, m: int, cap: int) -> None:
        super().__init__(
            f"Complex has m={m} vertices, above the enumeration cap of {cap}.\n"
            "Double homology enumerates all 2^m full subcomplexes; raise the cap with --max-m "
            "if you really mean it."
        )
        self.m = m
        self.cap = cap


class CochainError(HHCalcError, RuntimeError):
    """An algebraic identity the engine relies on (d∘d = 0, cycle decomposition) failed."""
