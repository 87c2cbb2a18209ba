"""Exception and warning classes shared by every module."""

from __future__ import annotations


class AfcError(Exception):
    """Base class for all errors raised by this package."""

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class InvalidParameter(AfcError, ValueError):
    """A single parameter violates one of its constraints."""

    def __init__(self, name: str, value, constraint: str):
        self.name = name
        self.value = value
        self.constraint = constraint
        super().__init__(f"{name}={value!r} violates {constraint}")

    def to_dict(self) -> dict:
        return {
            "error": "InvalidParameter",
            "name": self.name,
            "value": _jsonable(self.value),
            "constraint": self.constraint,
        }


class ValidationError(InvalidParameter):
    """Several parameters failed validation at once.

    Behaves as an InvalidParameter for its first violation, so callers that
    only care about one failure can catch the base class.
    """

    def __init__(self, errors: list[InvalidParameter]):
        if not errors:
            raise ValueError("ValidationError needs at least one violation")
        self.errors = list(errors)
        first = self.errors[0]
        super().__init__(first.name, first.value, first.constraint)
        self.args = ("; ".join(str(e) for e in self.errors),)

    @property
    def names(self) -> list[str]:
        return [e.name for e in self.errors]

    def to_dict(self) -> dict:
        return {
            "error": "InvalidParameter",
            "violations": [e.to_dict() for e in self.errors],
        }


class ControlPulseDominates(AfcError):
    """The control pulse occupies the whole storage window."""


class UndersampledTrain(AfcError, ValueError):
    pass


class BandExceedsGrid(AfcError, ValueError):
    pass


class TooFewPeaks(AfcError):
    pass


class UnknownMaterial(AfcError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class OutOfRange(AfcError, ValueError):
    pass


class NoData(AfcError, LookupError):
    pass


class NonPositiveLinewidth(AfcError, ValueError):
    pass


class UnknownTarget(AfcError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class MissingParameter(AfcError, TypeError):
    pass


class UnknownCase(AfcError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class ParameterWarning(UserWarning):
    """Inputs are valid but outside the regime the formulas assume."""


class ControlPulseWarning(UserWarning):
    """Capacity went negative because of the control pulse and was clamped to 0."""


def _jsonable(value):
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)
