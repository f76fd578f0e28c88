"""Exception taxonomy shared by every module and mirrored by language bindings."""


class QcsimError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QcsimError, ValueError):
    """An argument is outside its mathematical domain (index, probability, angle count)."""


class GateError(QcsimError, ValueError):
    """Unknown gate name, wrong parameter count, bad wires, or a non-unitary matrix."""


class CircuitError(QcsimError, ValueError):
    """Invalid circuit construction: wire out of range, duplicate or unknown labels."""


class SimulationError(QcsimError, RuntimeError):
    """A run could not proceed: unset classical bit, mode restriction, size cap."""


class ParseError(QcsimError, ValueError):
    """A circuit file failed to parse; message carries the op index and field."""
