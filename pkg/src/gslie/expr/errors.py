"""Exceptions raised by the expression engine."""


class ExprError(Exception):
    """Base class for expression-engine failures."""


class ExprSyntaxError(ExprError, ValueError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnknownSymbol(ExprError, ValueError):
    pass


class UnboundSymbol(ExprError, KeyError):
    def __str__(self):
        return f"unbound symbol {self.args[0]!r}"


class DomainError(ExprError, ValueError):
    pass


class UnresolvedFuncSym(ExprError):
    pass


class DivisionByZeroSymbolic(ExprError, ZeroDivisionError):
    pass
