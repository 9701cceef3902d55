"""Exception types shared across the package."""


class CloneMapError(Exception):
    """Base class for all clonemap errors."""


class ValidationError(CloneMapError):
    """Bad input: malformed arguments, out-of-range regions, invalid queries.

    The CLI maps this to exit code 1; the HTTP service maps it to 422.
    I/O failures are left as OSError (CLI exit code 2).
    """
