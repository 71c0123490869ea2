"""Помилки Potentia.

InputError -> код виходу 2, NumericalError -> 3, ProvedBoundViolation -> 4
(див. apps.toolkit.cli.main).
"""


class PotentiaError(Exception):
    """Базова помилка."""


class InputError(PotentiaError):
    """Неправильні аргументи або порушена передумова."""


class SetSpecError(InputError):
    """Рядок множини / списку степенів не розібрався."""


class DomainError(InputError):
    """Точка або параметр поза областю визначення операції."""


class NumericalError(PotentiaError):
    """Числовий метод не дав результату потрібної якості."""


class SingularSystemError(NumericalError):
    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class QuadratureError(NumericalError):
    pass


class CapacityCrossCheckError(NumericalError):
    pass


class PathError(NumericalError):
    pass


class BranchError(NumericalError):
    pass


class ExchangeCyclingError(NumericalError):
    pass


class MonotonicityError(NumericalError):
    pass


class ExtrapolationError(NumericalError):
    pass


class ProvedBoundViolation(PotentiaError):
    """Доведена нерівність не виконалась: це завжди баг обчислювача."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
