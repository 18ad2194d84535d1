"""Immutable AST for the Solidity subset the extractor needs to reach calls.

Everything the parser does not model is kept as an opaque, balanced token
span (``Unknown`` / ``UnknownMember`` / ``InlineAssembly``) so that no
construct is silently lost.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .lexer import Token

# -- expressions -------------------------------------------------------------


@dataclass(frozen=True)
class Identifier:
    name: str


@dataclass(frozen=True)
class This:
    pass


@dataclass(frozen=True)
class MemberAccess:
    expr: "Expr"
    member: str


@dataclass(frozen=True)
class Call:
    callee: "Expr"
    args: tuple["Expr", ...] = ()
    # values of `{value: ..., gas: ...}` call options
    options: tuple["Expr", ...] = ()


@dataclass(frozen=True)
class New:
    type_name: str


@dataclass(frozen=True)
class Tuple:
    items: tuple[Optional["Expr"], ...]


@dataclass(frozen=True)
class Index:
    base: "Expr"
    index: Optional["Expr"] = None
    end: Optional["Expr"] = None  # slice upper bound


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"
    prefix: bool = True


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Assign:
    op: str
    target: "Expr"
    value: "Expr"


@dataclass(frozen=True)
class Conditional:
    cond: "Expr"
    then: "Expr"
    orelse: "Expr"


@dataclass(frozen=True)
class Literal:
    token: Token


@dataclass(frozen=True)
class TypeExpr:
    name: str


Expr = Union[
    Identifier, This, MemberAccess, Call, New, Tuple, Index, Unary, Binary,
    Assign, Conditional, Literal, TypeExpr,
]

# -- statements --------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    stmts: tuple["Stmt", ...]


@dataclass(frozen=True)
class If:
    cond: Expr
    then: "Stmt"
    orelse: Optional["Stmt"] = None


@dataclass(frozen=True)
class For:
    init: Optional["Stmt"]
    cond: Optional[Expr]
    post: Optional[Expr]
    body: "Stmt"


@dataclass(frozen=True)
class While:
    cond: Expr
    body: "Stmt"


@dataclass(frozen=True)
class DoWhile:
    body: "Stmt"
    cond: Expr


@dataclass(frozen=True)
class CatchClause:
    name: Optional[str]
    params: tuple["Param", ...]
    body: Block


@dataclass(frozen=True)
class Try:
    expr: Expr
    returns: tuple["Param", ...]
    body: Block
    catches: tuple[CatchClause, ...]


@dataclass(frozen=True)
class Emit:
    expr: Expr


@dataclass(frozen=True)
class Return:
    expr: Optional[Expr] = None


@dataclass(frozen=True)
class VarDecl:
    # one entry per declared component; tuple destructuring leaves holes as None
    type_names: tuple[Optional[str], ...]
    names: tuple[Optional[str], ...]
    value: Optional[Expr] = None


@dataclass(frozen=True)
class ExprStmt:
    expr: Expr


@dataclass(frozen=True)
class InlineAssembly:
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class Unknown:
    tokens: tuple[Token, ...]


Stmt = Union[
    Block, If, For, While, DoWhile, Try, Emit, Return, VarDecl, ExprStmt,
    InlineAssembly, Unknown,
]

# -- contract members --------------------------------------------------------

Span = tuple[int, int]  # [start, end) token indices within the file


@dataclass(frozen=True)
class Param:
    type_name: str
    name: Optional[str] = None


@dataclass(frozen=True)
class ModifierInvocation:
    name: str
    args: Optional[tuple[Expr, ...]] = None


@dataclass(frozen=True)
class FunctionDef:
    name: str
    params: tuple[Param, ...]
    modifiers: tuple[ModifierInvocation, ...]
    body: Optional[Block]
    returns: tuple[Param, ...] = ()
    span: Span = (0, 0)


@dataclass(frozen=True)
class ConstructorDef:
    params: tuple[Param, ...]
    modifiers: tuple[ModifierInvocation, ...]
    body: Optional[Block]
    span: Span = (0, 0)

    name = "constructor"


@dataclass(frozen=True)
class ModifierDef:
    name: str
    params: tuple[Param, ...]
    body: Optional[Block]
    span: Span = (0, 0)


@dataclass(frozen=True)
class EventDef:
    name: str
    params: tuple[Param, ...]
    span: Span = (0, 0)


@dataclass(frozen=True)
class StateVarDef:
    name: str
    type_name: str
    value: Optional[Expr] = None
    span: Span = (0, 0)


@dataclass(frozen=True)
class UsingForDef:
    library: str
    target: str
    span: Span = (0, 0)


@dataclass(frozen=True)
class TypeDef:
    name: str
    kind: str  # struct | enum | value-type
    span: Span = (0, 0)


@dataclass(frozen=True)
class UnknownMember:
    tokens: tuple[Token, ...]
    span: Span = (0, 0)


Member = Union[
    FunctionDef, ConstructorDef, ModifierDef, EventDef, StateVarDef,
    UsingForDef, TypeDef, UnknownMember,
]

# -- top level ---------------------------------------------------------------


@dataclass(frozen=True)
class ImportDirective:
    path: str
    # (name, alias) pairs for `import {A, B as C} from "..."`
    symbols: tuple[tuple[str, Optional[str]], ...] = ()
    unit_alias: Optional[str] = None

    def local_names(self) -> list[str]:
        names = [alias or name for name, alias in self.symbols]
        if self.unit_alias:
            names.append(self.unit_alias)
        return names


@dataclass(frozen=True)
class BaseSpec:
    name: str
    args: Optional[tuple[Expr, ...]] = None


@dataclass(frozen=True)
class TopDecl:
    kind: str  # contract | interface | library
    name: str
    bases: tuple[BaseSpec, ...]
    members: tuple[Member, ...]
    file: str
    span: Span = (0, 0)
    abstract: bool = False


@dataclass(frozen=True)
class SourceUnit:
    file: str
    pragmas: tuple[str, ...] = ()
    imports: tuple[ImportDirective, ...] = ()
    declarations: tuple[TopDecl, ...] = ()
    # file-level struct/enum/user-defined value types
    type_defs: tuple[TypeDef, ...] = ()

    def imported_names(self) -> set[str]:
        names: set[str] = set()
        for imp in self.imports:
            names.update(imp.local_names())
        return names
