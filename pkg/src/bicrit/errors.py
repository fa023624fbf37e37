"""Exception types shared across the package."""


class BicritError(Exception):
    pass


class DomainError(BicritError, ValueError):
    """An argument lies outside the domain of the operation."""


class OracleSizeError(BicritError, ValueError):
    """Instance is too large for exact enumeration."""


class UnsupportedModelError(BicritError, ValueError):
    pass


class DegenerateError(BicritError, ValueError):
    pass


class GameConvergenceError(BicritError, RuntimeError):
    def __init__(self, message: str, gap: float):
        super().__init__(f"{message} (last gap {gap:.3e})")
        self.gap = gap
