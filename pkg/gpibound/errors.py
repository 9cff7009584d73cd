class GPIError(Exception):
    exit_code = 3


class DomainError(GPIError, ValueError):
    exit_code = 2


class InfiniteVarianceError(DomainError):
    pass


class ConvergenceError(GPIError, ArithmeticError):

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DivergenceError(GPIError, ArithmeticError):
    pass


class QuadratureError(ConvergenceError):

    def __init__(self, message, value, error):
        super().__init__(message)
        self.value = value
        self.error = error
