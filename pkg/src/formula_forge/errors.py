"""Exception hierarchy shared by every module of the package."""


class FormulaError(Exception):
    pass


class DomainError(FormulaError, ValueError):
    """Input outside an operation's domain (e.g. encoding zero)."""


class ResourceLimitError(FormulaError):
    """A configured size, bit or entry cap would be exceeded."""


class ParseError(FormulaError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ArityError(ParseError):
    """Dangling operator or leftover operand in prefix/postfix text."""


class SoundnessError(FormulaError):
    """A gap-of-two adjunction produced a value that is not prime."""


class CompletenessError(FormulaError):
    """A windowed Zeta iteration left a hole in the covered range."""
