"""Exception hierarchy shared by every app."""


class MpscError(Exception):
    """Base class for errors raised by the compiler stack."""


class DimensionError(MpscError, ValueError):
    """Length or bond-shape mismatch between tensors, states or operators."""


class SiteIndexError(MpscError, IndexError):
    """Site index outside the chain, or an undefined diagonal element."""


class GateValidationError(MpscError, ValueError):
    """Gate payload is not unitary, angles are not finite or qubits are invalid."""


class ConfigurationError(MpscError, ValueError):
    pass


class OracleCapacityError(MpscError):
    """Dense reference computation requested above the configured qubit cap."""


class EigensolverError(MpscError):
    """Local eigensolve inside DMRG failed to converge."""


class BondCapExceeded(MpscError):
    pass


class NoCandidatePairsError(MpscError):
    """Every qubit pair was excluded from ADAPT pair selection."""
