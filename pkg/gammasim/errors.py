"""Exception hierarchy shared by every gammasim package."""


class GammaError(Exception):
    """Base class for all domain errors raised by gammasim."""


class OrdinalError(GammaError, ArithmeticError):
    """Invalid ordinal construction or arithmetic (e.g. a negative difference)."""


class ParseError(GammaError, ValueError):
    """Text could not be parsed as an ordinal, word, tape, program or real."""


class WordError(GammaError):
    """Invalid word construction or out-of-range access."""


class OperatorError(GammaError):
    """An operator was given a history it cannot rule."""


class ProgramError(GammaError):
    """A machine program is malformed."""


class EngineError(GammaError):
    """The engine was asked to do something its state forbids."""


class TransformError(GammaError):
    """A program transformation cannot be carried out."""


class CodeError(GammaError):
    """An ordinal cannot be encoded or a code is malformed."""


class ConfigError(GammaError):
    """A ``GAMMASIM_*`` environment variable holds an unusable value."""
