"""Exception hierarchy.

Every error raised for a violated precondition derives from
:class:`ContractViolation`; malformed input text raises :class:`ParseError`.
The CLI maps the two families to distinct exit codes.
"""


class ReebSpectraError(Exception):
    """Base class for all library errors."""


class ContractViolation(ReebSpectraError, ValueError):
    """A documented precondition of an operation does not hold."""


class ParseError(ReebSpectraError, ValueError):
    def __init__(self, message, text="", offset=0):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at byte offset {offset} in {text!r}")


class MixedRadicand(ContractViolation):
    pass


class NonpositiveDivisor(ContractViolation):
    pass


class NonpositiveRadius(ContractViolation):
    pass


class InsufficientTerms(ContractViolation):
    pass


class NotStarShapedModel(ContractViolation):
    pass


class RationalInput(ContractViolation):
    pass


class LTooSmall(ContractViolation):
    pass


class NotGreaterThanOne(ContractViolation):
    pass


class DegenerateTriangle(ContractViolation):
    pass


class DeterminantError(ContractViolation):
    pass


class SpectrumTooShort(ContractViolation):
    pass


class SingularGrid(ContractViolation):
    pass
