"""Exception hierarchy shared across the package."""


class GaussLabError(Exception):
    """Base class for all gausslab errors."""


class NotPrime(GaussLabError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class FieldTooLarge(GaussLabError):
    def __init__(self, q, q_max):
        super().__init__(f"q = {q} exceeds the configured ceiling {q_max}")
        self.q = q
        self.q_max = q_max


class NotADivisor(GaussLabError):
    def __init__(self, d, k):
        super().__init__(f"{d} does not divide {k}")
        self.d = d
        self.k = k


class DivisionByZero(GaussLabError, ZeroDivisionError):
    pass


class BadRange(GaussLabError):
    pass


class BudgetExceeded(GaussLabError):
    pass


class MassTooSmall(GaussLabError):
    pass


class UnknownCondition(GaussLabError):
    def __init__(self, condition_id):
        super().__init__(f"unknown condition id: {condition_id!r}")
        self.condition_id = condition_id


class ConfigError(GaussLabError):
    pass
