class HelmFlowError(Exception):
    """Base exception for all helmflow errors."""

    pass


class CaseLoadError(HelmFlowError):
    """Raised when a case file cannot be read."""

    def __init__(self, file_path: str, reason: str):
        self.file_path = file_path
        self.reason = reason
        super().__init__(f"Failed to load case file '{file_path}': {reason}")


class CaseFormatError(HelmFlowError):
    """Raised when a case document is not valid JSON or violates the schema."""

    def __init__(self, details: str, location: str = None):
        self.details = details
        self.location = location
        message = "Malformed case document"
        if location:
            message += f" at '{location}'"
        message += f": {details}"
        super().__init__(message)


class DuplicateBusError(HelmFlowError):
    """Raised when two bus records share the same id."""

    def __init__(self, bus_id: int):
        self.bus_id = bus_id
        super().__init__(f"Duplicate bus id {bus_id}")


class SwingBusError(HelmFlowError):
    """Raised when a network does not have exactly one swing bus."""

    def __init__(self, count: int):
        self.count = count
        if count == 0:
            message = "no swing bus"
        else:
            message = f"multiple swing buses ({count} found)"
        super().__init__(message)


class UnknownBusError(HelmFlowError):
    """Raised when a branch references a bus id that does not exist."""

    def __init__(self, bus_id: int, branch_index: int):
        self.bus_id = bus_id
        self.branch_index = branch_index
        super().__init__(f"Branch {branch_index} references unknown bus {bus_id}")


class ZeroImpedanceError(HelmFlowError):
    """Raised when a branch has r = x = 0."""

    def __init__(self, branch_index: int):
        self.branch_index = branch_index
        super().__init__(f"Branch {branch_index} has zero series impedance (r = x = 0)")


class InvalidBranchError(HelmFlowError):
    """Raised when a branch violates a structural invariant other than impedance."""

    def __init__(self, branch_index: int, reason: str):
        self.branch_index = branch_index
        self.reason = reason
        super().__init__(f"Invalid branch {branch_index}: {reason}")


class InvalidBusError(HelmFlowError):
    """Raised when a bus record carries inconsistent data for its kind."""

    def __init__(self, bus_id: int, reason: str):
        self.bus_id = bus_id
        self.reason = reason
        super().__init__(f"Invalid bus {bus_id}: {reason}")


class DisconnectedBusError(HelmFlowError):
    """Raised when a bus cannot be reached from the swing bus."""

    def __init__(self, bus_id: int):
        self.bus_id = bus_id
        super().__init__(f"Bus {bus_id} is not connected to the swing bus")


class ZeroVoltageError(HelmFlowError):
    """Raised when a constant-power term is evaluated at a zero voltage."""

    def __init__(self, bus_id: int):
        self.bus_id = bus_id
        super().__init__(f"Voltage at bus {bus_id} is zero")


class SingularMatrixError(HelmFlowError):
    """Raised when a matrix is numerically singular during factorization."""

    def __init__(self, pivot: int, reason: str = None):
        self.pivot = pivot
        message = f"Matrix is singular at pivot {pivot}"
        if reason:
            message += f": {reason}"
        super().__init__(message)


class DimensionMismatchError(HelmFlowError):
    """Raised when operand dimensions do not agree."""

    def __init__(self, expected: int, actual: int, operand: str = "rhs"):
        self.expected = expected
        self.actual = actual
        self.operand = operand
        super().__init__(
            f"Dimension mismatch for {operand}: expected {expected}, got {actual}"
        )


class WhiteBranchError(HelmFlowError):
    """Raised when the zero-injection germ has a vanishing bus voltage."""

    def __init__(self, bus_id: int):
        self.bus_id = bus_id
        super().__init__(f"white branch undefined: V[0] vanishes at bus {bus_id}")


class DegenerateNetworkError(HelmFlowError):
    """Raised when the series recursion matrix cannot be factored."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Degenerate network: {reason}")


class SeriesEvaluationError(HelmFlowError):
    """Raised when a truncated series cannot be evaluated at a point."""

    def __init__(self, s: complex, reason: str):
        self.s = s
        self.reason = reason
        super().__init__(f"Series evaluation failed at s={s}: {reason}")


class DegeneratePadeTableError(HelmFlowError):
    """Raised when the Padé Toeplitz system is singular for the requested degrees."""

    def __init__(self, numerator_degree: int, denominator_degree: int):
        self.numerator_degree = numerator_degree
        self.denominator_degree = denominator_degree
        super().__init__(
            f"Padé table is degenerate for "
            f"[{numerator_degree}/{denominator_degree}]; reduce the denominator degree"
        )


class OracleError(HelmFlowError):
    """Raised when an oracle receives arguments outside its domain."""

    def __init__(self, oracle_name: str, reason: str):
        self.oracle_name = oracle_name
        self.reason = reason
        super().__init__(f"Oracle '{oracle_name}' cannot evaluate: {reason}")


class ReportFormatError(HelmFlowError):
    """Raised when a serialized report cannot be parsed back."""

    def __init__(self, details: str):
        self.details = details
        super().__init__(f"Malformed report document: {details}")


class ReportWriteError(HelmFlowError):
    """Raised when a report or dump cannot be written to disk."""

    def __init__(self, output_path: str, reason: str):
        self.output_path = output_path
        self.reason = reason
        super().__init__(f"Failed to write '{output_path}': {reason}")


class SeriesDataError(HelmFlowError):
    """Raised when coefficient data or an evaluation grid is unusable."""

    def __init__(self, details: str):
        self.details = details
        super().__init__(f"Invalid series data: {details}")
