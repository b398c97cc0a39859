"""Exception hierarchy shared by every module."""


class PrecsympError(Exception):
    pass


class AlgebraMismatchError(PrecsympError):
    """Operands live in different free graded-commutative algebras."""


class DegreeMismatchError(PrecsympError):
    pass


class ParseError(PrecsympError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DifferentialError(PrecsympError):
    """D∘D ≠ 0, or an image of the wrong degree."""

    def __init__(self, message, residues=None):
        super().__init__(message)
        self.residues = residues or {}


class NotKSExtensionError(PrecsympError):
    pass


class PreconditionError(PrecsympError):
    def __init__(self, message, residue=None):
        super().__init__(message)
        self.residue = residue


class ShapeError(PrecsympError):
    """Model does not have the normal form an operation requires."""


class ResourceError(PrecsympError):
    pass
