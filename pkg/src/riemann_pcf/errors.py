"""Exception hierarchy shared by every module of the package."""


class RiemannPCFError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RiemannPCFError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(RiemannPCFError, ArithmeticError):
    """An adaptive or extrapolation procedure failed to reach its tolerance."""


class AccuracyError(RiemannPCFError, ArithmeticError):
    """Evaluation requested outside the validated accuracy box."""


class PoleError(DomainError):
    """Evaluation at a pole."""


class SingularityError(DomainError):
    """Point lies inside the exclusion radius of a zero or pole."""


class StepCollapseError(ConvergenceError):
    """Path continuation needed a step below the minimum admissible size."""


class InconsistencyError(RiemannPCFError, ArithmeticError):
    """A measured quantity that must be constant was not."""


class CertificationError(RiemannPCFError):
    """Zero scan count disagrees with the argument-principle count."""


class ZeroTableError(RiemannPCFError, ValueError):
    """Malformed or invalid zero table."""


class ParseError(ZeroTableError):
    def __init__(self, line_no: int, text: str):
        super().__init__(f"line {line_no}: cannot parse {text!r} as a positive ordinate")
        self.line_no = line_no


class OrderError(ZeroTableError):
    def __init__(self, line_no: int, value: float, previous: float):
        super().__init__(
            f"line {line_no}: ordinate {value!r} does not exceed previous {previous!r}"
        )
        self.line_no = line_no


class ValidationError(ZeroTableError):
    def __init__(self, ordinate: float, modulus: float):
        super().__init__(f"ordinate {ordinate!r} is not a zero: |zeta(1/2+it)| = {modulus:.3e}")
        self.ordinate = ordinate
