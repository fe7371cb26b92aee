"""
Kernel-level exceptions for lqt-kernel.

The hierarchy separates three situations that callers (and the CLI exit
code contract) must never conflate:

    InputError         : the caller handed us malformed data (exit 2)
    BudgetError        : the truncation degree cannot support a request (exit 2)
    VerificationError  : a structure failed one of its axioms (exit 1)

InfeasibleSystemError is raised by the exact solver when a well-formed
system has no solution; it is not an InputError.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .reports import AxiomCheck


class KernelError(Exception):
    """Root of every exception raised by lqt_kernel."""

    pass


class InputError(KernelError, ValueError):
    """Raised when user-supplied data is malformed.

    Subclasses ValueError so that callers written against the loader's
    ValueError contract keep working.
    """

    pass


class SpaceMismatchError(InputError):
    """Raised when two sparse objects over different index spaces are combined."""

    pass


class GroupTableError(InputError):
    """Raised when a Cayley table is not the multiplication table of a group.

    Attributes:
        row: Row of the table where the defect was detected (if known).
    """

    def __init__(self, message: str, row: int | None = None) -> None:
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row


class RamificationError(InputError):
    """Raised when a ramification references something that is not a conjugacy class."""

    pass


class CharacteristicError(InputError):
    """Raised when the requested ground field is unsupported (characteristic 2, non-prime)."""

    pass


class SchemaError(InputError):
    """Raised when an instance, module certificate or bundle fails validation."""

    pass


class BudgetError(KernelError):
    """Raised when the truncation degree N is too small for the requested computation.

    Attributes:
        required: The minimal truncation degree that would have worked.
        available: The truncation degree that was actually built.
    """

    def __init__(self, message: str, required: int | None = None, available: int | None = None):
        super().__init__(message)
        self.required = required
        self.available = available


class InfeasibleSystemError(KernelError):
    """Raised by the exact solver when the linear system has no solution."""

    def __init__(self, message: str = "linear system is infeasible", context: Any = None):
        super().__init__(message)
        self.context = context


class VerificationError(KernelError):
    """Raised by constructors when a structure they certify fails an axiom.

    Attributes:
        check: The failing AxiomCheck (name, witnesses) when available.
    """

    def __init__(self, message: str, check: "AxiomCheck | None" = None) -> None:
        super().__init__(message)
        self.check = check


class BimoduleAxiomError(VerificationError):
    """Raised when Hopf-bimodule data fails one of its axiom families.

    The message names the failing axiom and the first witness so that the
    offending table entry can be located without re-running the sweep.
    """

    pass
