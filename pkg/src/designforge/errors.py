"""Exception types raised by designforge.

Domain errors derive from :class:`DesignError`; the CLI maps them to exit
code 1.  Malformed input text raises :class:`ParseError` (exit code 2).
"""


class DesignError(Exception):
    """Base class for domain errors."""


class ParseError(ValueError):
    """Input text does not follow the expected file format."""


class InvalidArray(DesignError):
    pass


class AlphabetTooSmall(DesignError):
    pass


class DimensionMismatch(DesignError):
    pass


class AlphabetOverlap(DesignError):
    pass


class NotLatin(DesignError):
    pass


class InvalidDesign(DesignError):
    pass


class TooLarge(DesignError):
    pass


class NotAdjacent(DesignError):
    pass


class InvalidSigmaSet(DesignError):
    pass


class NotBiplane(DesignError):
    def __init__(self, prop, detail=""):
        self.prop = prop
        super().__init__(f"{prop}: {detail}" if detail else prop)


class BlockSizeTooSmall(DesignError):
    pass


class ChainAxiomViolation(DesignError):
    pass


class WrongBlockSize(DesignError):
    pass


class NotEquireplicate(DesignError):
    pass


class BlockSizesVary(DesignError):
    pass


class Disconnected(DesignError):
    pass


class NoConvergence(DesignError):
    pass


class UnsupportedReplication(DesignError):
    pass


class UnknownDesign(DesignError):
    pass
