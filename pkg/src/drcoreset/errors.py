"""Exception types shared across the package."""


class CoresetError(Exception):
    """Base class for all errors raised by drcoreset."""


class InstanceFormatError(CoresetError, ValueError):
    """The instance document could not be parsed."""


class InstanceValidationError(CoresetError, ValueError):
    """The instance parsed but violates its invariants."""

    def __init__(self, report):
        self.report = list(report)
        super().__init__("invalid instance: " + "; ".join(self.report))


class UnknownItemError(CoresetError, KeyError):
    """An item id outside the ground set was used."""

    def __str__(self):
        return f"unknown item id(s): {self.args[0]!r}"


class ExchangeStructureError(CoresetError, RuntimeError):
    """No single removal restores independence in a violated matroid.

    Only happens when a constraint object does not actually satisfy the
    matroid axioms.
    """


class GuardLimitError(CoresetError, ValueError):
    """An exhaustive computation was requested on too large a ground set."""


class CoresetSizeError(CoresetError, RuntimeError):
    """The coreset grew beyond k + ceil(d / eps)."""
