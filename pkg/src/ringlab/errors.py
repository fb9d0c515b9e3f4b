"""Exception types shared by every module."""

from __future__ import annotations


class RingLabError(Exception):
    """Base class for all errors raised by ringlab."""


class InvalidParameter(RingLabError, ValueError):
    """A construction or query received ill-formed input.

    ``witness`` carries the offending instance when one exists (a factor of a
    reducible modulus, a failing closure triple, ...).
    """

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class CapacityError(RingLabError):
    """The requested object exceeds a configured size budget."""


class InternalInconsistency(RingLabError):
    """Two independent routes disagreed, or a proven shape failed to verify.

    This signals an implementation bug (or a falsified theorem instance) and
    must never be swallowed.
    """

    def __init__(self, message: str, context: dict | None = None):
        super().__init__(message)
        self.context = context or {}
