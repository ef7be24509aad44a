"""Exceptions raised by the numerical pipeline."""


class NumericalDiagnostic(RuntimeError):
    """Base class for failures of an internal numerical self-check."""


class ResidualTooLarge(NumericalDiagnostic):
    """A linear system that must be consistent was not, within tolerance."""


class SingularSystem(NumericalDiagnostic):
    """A linear system that must have full column rank did not."""


class MultiplicityMismatch(NumericalDiagnostic):
    """A null-space dimension disagreed with the combinatorial multiplicity."""


class InternalMismatch(NumericalDiagnostic):
    """Two independent counting rules disagreed."""
