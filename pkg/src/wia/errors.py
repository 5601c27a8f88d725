"""Exception hierarchy shared by all wia modules."""


class WiaError(Exception):
    """Base class; every error raised by the library derives from this."""

    code = "error"


class ZeroElement(WiaError):
    code = "zero-element"


class ZeroScalar(WiaError):
    code = "zero-scalar"


class BadPrime(WiaError):
    code = "bad-prime"


class MixedFields(WiaError):
    code = "mixed-fields"


class OrderingMismatch(WiaError):
    code = "ordering-mismatch"


class UnsupportedField(WiaError):
    code = "unsupported-field"


class SquareArgument(WiaError):
    code = "square-argument"


class PreconditionError(WiaError):
    code = "precondition"


class ImproperPreordering(WiaError):
    code = "improper-preordering"


class MixedUnitaryCentres(WiaError):
    code = "mixed-unitary-centres"


class ShapeMismatch(WiaError):
    code = "shape-mismatch"


class UnsupportedShape(WiaError):
    code = "unsupported-shape"


class DegenerateAlgebra(WiaError):
    code = "degenerate-algebra"


class NonrealOrdering(WiaError):
    code = "nonreal-ordering"


class UndecidableShape(WiaError):
    code = "undecidable-shape"


class InternalInconsistency(WiaError):
    """A theorem-backed consistency condition failed; indicates a bug."""

    code = "internal-inconsistency"


class ParseError(WiaError):
    code = "parse-error"

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.expected = tuple(expected)
