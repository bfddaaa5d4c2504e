"""Self-contained expression engine: parse, print, differentiate, normalise, evaluate."""

from .calculus import diff
from .errors import (
    DivisionByZeroSymbolic,
    DomainError,
    ExprError,
    ExprSyntaxError,
    UnboundSymbol,
    UnknownSymbol,
    UnresolvedFuncSym,
)
from .nodes import (
    ALPHABET,
    FUNC_SYMBOLS,
    FUNCTIONS,
    JETS,
    ONE,
    ZERO,
    Apply,
    Const,
    Expr,
    FuncSym,
    NamedConst,
    Power,
    Product,
    Sum,
    Var,
    add,
    apply,
    as_expr,
    const,
    free_symbols,
    func,
    func_symbols,
    mul,
    power,
    subs,
    subs_funcs,
    var,
)
from .normal import collect, constant_value, is_zero, linear_relations, normalize, to_rf
from .numeric import (
    NonZero,
    NumericallyZero,
    ProvenZero,
    equiv,
    equiv_zero,
    eval_num,
    is_zero_verdict,
)
from .parser import parse
from .printer import to_text

# alternative name for rendering
print_expr = to_text

__all__ = [name for name in dir() if not name.startswith("_")]
