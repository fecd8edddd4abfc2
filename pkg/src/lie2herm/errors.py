"""Exception hierarchy shared by every module of the package."""


class Lie2Error(Exception):
    """Base class for all domain errors raised by lie2herm."""


class DimensionMismatch(Lie2Error):
    pass


class DependentInput(Lie2Error):
    pass


class NotLie2(Lie2Error):
    pass


class BadHint(Lie2Error):
    pass


class PaddingImpossible(Lie2Error):
    pass


class GenerationFailed(Lie2Error):
    pass


class DegeneratePlane(Lie2Error):
    pass


class NotOrthonormal(Lie2Error):
    pass


class NotCompatible(Lie2Error):
    pass


class NotHermitian(Lie2Error):
    pass


class NotTypeI(Lie2Error):
    pass


class NotTypeII(Lie2Error):
    pass


class BadGammaStructure(Lie2Error):
    pass


class OddGamma(Lie2Error):
    pass


class BadFrame(Lie2Error):
    pass


class OddComplement(Lie2Error):
    pass


class WrongDimension(Lie2Error):
    pass


class UnknownName(Lie2Error, KeyError):
    pass


class ParseError(Lie2Error):
    pass


class MissingJ(Lie2Error):
    pass
