"""Exception hierarchy shared by all modules."""


class AbhoError(ValueError):
    """Base class for every domain error raised by the package."""


# core
class DiagonalMismatch(AbhoError):
    pass


class PseudocolorLeak(AbhoError):
    pass


class AsymmetryError(AbhoError):
    pass


class EmptySubset(AbhoError):
    pass


class KindMismatch(AbhoError):
    pass


class PseudocolorMismatch(AbhoError):
    pass


# morph
class NotAMorphism(AbhoError):
    pass


class NotAbHo(AbhoError):
    pass


# skeleta
class MixedKinds(AbhoError):
    pass


class TooSmall(AbhoError):
    pass


class NotAffiliated(AbhoError):
    pass


class NotASkeleton(AbhoError):
    def __init__(self, msg, stalled=None):
        super().__init__(msg)
        self.stalled = stalled


# product
class NotProductable(AbhoError):
    pass


# itp
class NoItp(AbhoError):
    pass


class StructureViolation(AbhoError):
    pass


class QuotientIllFormed(AbhoError):
    pass


class NonInjectiveOmega(AbhoError):
    pass


class UnknownPrimaryId(AbhoError):
    pass


# metric
class ParseError(AbhoError):
    pass


class TriangleViolation(AbhoError):
    def __init__(self, x, y, z):
        super().__init__(f"d({x},{z}) > d({x},{y}) + d({y},{z})")
        self.triple = (x, y, z)


class NotUltrametric(AbhoError):
    pass


class NonUniformBlocks(AbhoError):
    pass


class NotMetric(AbhoError):
    pass


class BadDistances(AbhoError):
    pass


# group
class InvalidTable(AbhoError):
    pass


class NotUniquelyHomogeneous(AbhoError):
    pass


class NotSubgroup(AbhoError):
    pass


class NormalCore(AbhoError):
    pass
