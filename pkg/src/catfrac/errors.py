"""Exception taxonomy shared by every module.

InputError and DomainError mean the caller handed us something malformed or
used an operation outside its domain; the CLI maps both to exit code 2.
AxiomError means a checked mathematical property failed (exit code 1).
IntegrityError signals an internal cross-check failure, i.e. a bug here,
never a property of the input.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed data: dangling names, partial tables, bad schema."""


class DomainError(ValueError):
    """Operation applied outside its stated domain of definition."""


class AxiomError(RuntimeError):
    """A fractions axiom failed; carries the report that says where."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class IntegrityError(RuntimeError):
    """An internal consistency check failed. Indicates an implementation bug."""
