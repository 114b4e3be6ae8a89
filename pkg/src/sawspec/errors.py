"""Exception types shared across the package."""


class SawspecError(Exception):
    """Base class for package-specific failures."""


class ResourceLimitError(SawspecError):
    """A computation would exceed a configured memory/size/enumeration budget."""
