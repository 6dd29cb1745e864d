"""Exception hierarchy shared by the counter, the oracle and the CLI."""


class PepinError(Exception):
    """Base class for all errors raised by pepin."""


class DnfParseError(PepinError, ValueError):
    """Malformed DNF input."""


class ParameterError(PepinError, ValueError):
    """A user-supplied parameter is out of range."""


class StoreFullError(PepinError, RuntimeError):
    """Append attempted on a sample store with no free slot."""


class CounterInvariantError(PepinError, RuntimeError):
    """The counter reached a state its invariants rule out."""


class OracleInfeasibleError(PepinError, ValueError):
    """No exact counting method is feasible for the formula."""
