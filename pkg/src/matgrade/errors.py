"""Exception hierarchy shared by all matgrade modules."""


class MatgradeError(Exception):
    """Base class for every error raised on purpose by this package."""


# group construction and arithmetic

class InvalidGroup(MatgradeError):
    """Factor list does not describe a finite abelian group."""


class GroupMismatch(MatgradeError):
    """Operands belong to different groups."""


# cyclotomic numbers and exact linear algebra

class InvalidConductor(MatgradeError):
    """Conductor must be a positive integer."""


class DivisionByZero(MatgradeError, ZeroDivisionError):
    """Inverse of the zero field element."""


class DimensionMismatch(MatgradeError):
    """Vector or matrix shapes are incompatible."""


class SingularForm(MatgradeError):
    """A matrix that must be invertible is not."""


# gradings of the full matrix algebra

class InvalidTuple(MatgradeError):
    """Defining tuple has the wrong length or lives in the wrong group."""


class SupportClash(MatgradeError):
    """Supports of tensor factors meet outside the identity."""


class KindMismatch(MatgradeError):
    """Operation applied to a grading of the wrong kind."""


class NotInAlgebra(MatgradeError):
    """Matrix is not in the span of the grading's components."""


# involutions

class MixedSymmetry(MatgradeError):
    """Bilinear form is neither symmetric nor skew-symmetric."""


class NotInvolutionStable(MatgradeError):
    """Subspace is not carried into itself by the involution."""


class IncompatibleTuple(MatgradeError):
    """Tuple fails the pairing constraints required by the involution."""


class InvalidOrder(MatgradeError):
    """Matrix size incompatible with the requested construction."""


# Lie algebra gradings

class TooSmall(MatgradeError):
    """sl(n) needs n >= 2."""


class BadMarker(MatgradeError):
    """Distinguished group element fails its order or value constraints."""


class NotInvolutionGrading(MatgradeError):
    """Input grading is not compatible with the given involution."""


class NotStable(MatgradeError):
    """Factor components are not preserved by the supplied map."""


class BadSquare(MatgradeError):
    """Square of the supplied map is not the required scalar on a component."""


class BadEmbedding(MatgradeError):
    """Claimed embedding of a group is not injective or not a homomorphism."""


class ParseError(MatgradeError):
    """Serialized input is malformed or fails the schema."""
