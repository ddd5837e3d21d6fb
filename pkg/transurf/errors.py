#!/usr/bin/env python

__doc__ = """
Module: errors.py

Exception hierarchy shared by all transurf modules.
Every error carries a `details` dict (the structured payload printed by the cli)
and an `exit_code` used by the cli:
 * 2: input could not be parsed or was rejected,
 * 3: unsupported input or exhausted budget,
 * 4: internal invariant violation.
"""


class TransurfError(Exception):
    exit_code = 3

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def payload(self) -> dict:
        out = {"error": type(self).__name__, "message": self.message}
        out.update({k: str(v) for k, v in self.details.items()})
        return out


# structural -------------------------------------------------------------
class StructuralError(TransurfError):
    exit_code = 4


class VarSetMismatch(StructuralError):
    pass


class UndefinedElimination(StructuralError):
    pass


class ZeroDenominator(StructuralError):
    pass


class NormalizationFailed(StructuralError):
    pass


# input ------------------------------------------------------------------
class InputError(TransurfError):
    exit_code = 2


class ExprSyntaxError(InputError):
    def __init__(self, message: str, line: int = 1, col: int = 1, **details):
        super().__init__(f"{message} (line {line}, col {col})", line=line, col=col, **details)
        self.line = line
        self.col = col


class InputRejected(InputError):
    pass


class ConfigError(InputError):
    pass


class SpecError(InputError):
    pass


# curves -----------------------------------------------------------------
class CurveError(TransurfError):
    pass


class ZeroResultant(CurveError):
    pass


class EmptyProjection(CurveError):
    pass


class UnsupportedCurveClass(CurveError):
    NO_CLASS = "no_class"
    NO_RATIONAL_POINT = "no_rational_point"

    def __init__(self, message: str, reason: str = NO_CLASS, **details):
        super().__init__(message, reason=reason, **details)
        self.reason = reason


class LiftFailed(CurveError):
    pass


class InconsistentSystem(CurveError):
    pass


class NotACurve(CurveError):
    pass


class UnsupportedSpaceCurve(CurveError):
    pass


# pipeline ---------------------------------------------------------------
class VectorRejected(TransurfError):
    pass


class AllPairsExhausted(TransurfError):
    pass


class InsufficientPsiCoefficients(TransurfError):
    pass


class NotASurface(TransurfError):
    pass


class BudgetExceeded(TransurfError):
    pass


class AmbiguousFactor(TransurfError):
    pass


class RetryCapExhausted(TransurfError):
    pass
