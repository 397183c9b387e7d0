"""Exception types shared across the toolkit."""


class GDIKitError(Exception):
    """Base class for toolkit-specific failures."""


class CapExceededError(GDIKitError):
    """Requested enumeration would exceed the configured cell cap."""


class PolicyContractError(GDIKitError):
    """An agent or environment callable returned an invalid distribution."""


class NumericalIntegrityError(GDIKitError):
    """A quantity left its tolerance band in a way that indicates a bug, not roundoff."""


class UnsupportedConfigurationError(GDIKitError):
    """The requested construction is not available for this interface/interval shape."""
