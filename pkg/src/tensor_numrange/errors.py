"""Exception types raised across the package."""


class TensorError(ValueError):
    """Invalid tensor construction or incompatible operands."""


class ShapeError(TensorError):
    pass


class NotSquareError(TensorError):
    pass


class NotHermitianError(TensorError):
    pass


class NumericalError(ArithmeticError):
    """A numerical stage failed; ``stage`` names it for diagnostics."""

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class ConvergenceError(NumericalError):
    pass


class SingularTensorError(NumericalError):
    pass
