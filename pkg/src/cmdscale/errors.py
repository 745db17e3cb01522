"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` and the process exit
status the CLI uses for it (2 for bad input, 3 for numerical failure).
"""


class MDSError(Exception):
    code = "MDSError"
    exit_code = 2

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        out = {"error": self.code, "message": self.message}
        if self.details:
            out["details"] = self.details
        return out


class InputError(MDSError):
    exit_code = 2


class NumericalError(MDSError):
    exit_code = 3


class NonConvergence(NumericalError):
    code = "NonConvergence"


class InvalidDimension(InputError):
    code = "InvalidDimension"


class DimensionOutOfRange(InputError):
    code = "DimensionOutOfRange"


class NotSquare(InputError):
    code = "NotSquare"


class AsymmetryExceedsTolerance(InputError):
    code = "AsymmetryExceedsTolerance"


class NegativeEntry(InputError):
    code = "NegativeEntry"


class NonzeroDiagonal(InputError):
    code = "NonzeroDiagonal"


class ParseError(InputError):
    code = "ParseError"


class NegativeEigenvalueRetained(InputError):
    code = "NegativeEigenvalueRetained"


class DegenerateAllZero(InputError):
    code = "DegenerateAllZero"


class NonPositiveDistance(InputError):
    code = "NonPositiveDistance"


class NonEuclidean(InputError):
    code = "NonEuclidean"


class DegenerateFormula(NumericalError):
    code = "DegenerateFormula"


class FlatOrNonEuclidean(InputError):
    code = "FlatOrNonEuclidean"


class IndexOutOfRange(InputError):
    code = "IndexOutOfRange"


class SameIndex(InputError):
    code = "SameIndex"


class WrongDimension(InputError):
    code = "WrongDimension"
