"""Recursive-descent parser for the call-relevant Solidity subset.

Only contract structure, signatures, statements and expressions needed to
reach call sites are modelled. Any member or statement the grammar subset
does not cover is captured as a balanced token span and parsing resumes
after it, so a single exotic construct never costs the rest of the file.
"""
from __future__ import annotations

import re
from typing import Optional

from . import nodes as n
from .lexer import Token, TokenKind, tokenize

OPENERS = {"{": "}", "(": ")", "[": "]"}
CLOSERS = {v: k for k, v in OPENERS.items()}

_ELEMENTARY_RE = re.compile(
    r"(u?int\d*|bytes\d*|bool|string|address|byte|u?fixed(\d+x\d+)?|var|payable)$"
)
ETHER_UNITS = frozenset(
    "wei gwei ether szabo finney seconds minutes hours days weeks years".split()
)
ASSIGN_OPS = frozenset("= |= ^= &= <<= >>= >>>= += -= *= /= %=".split())
BINARY_PRECEDENCE = {
    "||": 1, "&&": 2, "==": 3, "!=": 3, "<": 4, ">": 4, "<=": 4, ">=": 4,
    "|": 5, "^": 6, "&": 7, "<<": 8, ">>": 8, ">>>": 8, "+": 9, "-": 9,
    "*": 10, "/": 10, "%": 10, "**": 11,
}
PREFIX_OPS = frozenset(["!", "~", "-", "+", "++", "--", "delete"])
FUNCTION_ATTRIBUTES = frozenset(
    "public private internal external view pure payable virtual constant".split()
)
STATE_VAR_ATTRIBUTES = frozenset(
    "public private internal constant immutable transient".split()
)
DATA_LOCATIONS = frozenset(["memory", "storage", "calldata"])


def is_elementary(type_name: str) -> bool:
    """True for built-in value types, mappings and function types."""
    base = re.split(r"[\[(\s]", type_name.strip(), maxsplit=1)[0]
    return base in ("mapping", "function") or bool(_ELEMENTARY_RE.match(base))


class ParseError(Exception):
    """The file cannot be parsed at all (unbalanced brackets)."""

    def __init__(self, message: str, token: Optional[Token] = None, file: str = ""):
        where = f"{token.file}:{token.line}:{token.column}: " if token else f"{file}: "
        super().__init__(where + message)
        self.token = token


class _Backtrack(Exception):
    """Internal: the current production does not match; caller recovers."""


def check_balanced(tokens: list[Token], file: str = "") -> None:
    stack: list[Token] = []
    for tok in tokens:
        if tok.kind is not TokenKind.PUNCT:
            continue
        if tok.lexeme in OPENERS:
            stack.append(tok)
        elif tok.lexeme in CLOSERS:
            if not stack:
                raise ParseError(f"unmatched {tok.lexeme!r}", tok)
            opener = stack.pop()
            if OPENERS[opener.lexeme] != tok.lexeme:
                raise ParseError(
                    f"{tok.lexeme!r} closes {opener.lexeme!r} opened at "
                    f"{opener.line}:{opener.column}",
                    tok,
                )
    if stack:
        raise ParseError(f"unclosed {stack[-1].lexeme!r}", stack[-1])


def skip_balanced(tokens: list[Token], start: int) -> int:
    """Return the index one past the closer matching the opener at ``start``."""
    first = tokens[start]
    if first.kind is not TokenKind.PUNCT or first.lexeme not in OPENERS:
        raise ParseError(f"expected an opening bracket, found {first.lexeme!r}", first)
    depth = 0
    for i in range(start, len(tokens)):
        tok = tokens[i]
        if tok.kind is not TokenKind.PUNCT:
            continue
        if tok.lexeme in OPENERS:
            depth += 1
        elif tok.lexeme in CLOSERS:
            depth -= 1
            if depth == 0:
                return i + 1
    raise ParseError(f"end of input before {first.lexeme!r} was closed", first)


class Parser:
    def __init__(self, tokens: list[Token], file: str):
        self.toks = tokens
        self.file = file
        self.pos = 0

    # -- token helpers -------------------------------------------------------

    def peek(self, k: int = 0) -> Optional[Token]:
        i = self.pos + k
        return self.toks[i] if i < len(self.toks) else None

    def at(self, *lexemes: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok is not None and tok.kind is not TokenKind.STRING and tok.lexeme in lexemes

    def at_kind(self, kind: TokenKind, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok is not None and tok.kind is kind

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise _Backtrack("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, lexeme: str) -> Token:
        if not self.at(lexeme):
            raise _Backtrack(f"expected {lexeme!r}")
        return self.advance()

    def accept(self, lexeme: str) -> bool:
        if self.at(lexeme):
            self.pos += 1
            return True
        return False

    def identifier(self) -> str:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.IDENTIFIER:
            raise _Backtrack("expected identifier")
        self.pos += 1
        return tok.lexeme

    def skip_group(self) -> tuple[Token, ...]:
        end = skip_balanced(self.toks, self.pos)
        span = tuple(self.toks[self.pos : end])
        self.pos = end
        return span

    def skip_item(self) -> tuple[Token, ...]:
        """Consume one unmodelled statement or declaration.

        Stops after a `;` or a brace group at nesting depth 0, and never
        consumes a closer that belongs to the enclosing construct.
        """
        start = self.pos
        while self.pos < len(self.toks):
            tok = self.toks[self.pos]
            if tok.kind is TokenKind.PUNCT:
                if tok.lexeme in CLOSERS:
                    if self.pos == start:
                        self.pos += 1
                    break
                if tok.lexeme in OPENERS:
                    self.pos = skip_balanced(self.toks, self.pos)
                    if tok.lexeme == "{" and not self.at("else", "catch", "while"):
                        break
                    continue
                if tok.lexeme == ";":
                    self.pos += 1
                    break
            self.pos += 1
        return tuple(self.toks[start : self.pos])

    # -- source unit ---------------------------------------------------------

    def parse_unit(self) -> n.SourceUnit:
        pragmas, imports, decls, type_defs = [], [], [], []
        while self.peek() is not None:
            start = self.pos
            try:
                if self.at("pragma"):
                    pragmas.append(self.parse_pragma())
                elif self.at("import"):
                    imports.append(self.parse_import())
                elif self.at("contract", "interface", "library") or (
                    self.at("abstract") and self.at("contract", k=1)
                ):
                    decls.append(self.parse_contract())
                elif self.at("struct", "enum") or (self.at("type") and self.at("is", k=2)):
                    type_defs.append(self.parse_type_def())
                else:
                    self.skip_item()
            except _Backtrack:
                self.pos = start
                self.skip_item()
        return n.SourceUnit(
            file=self.file,
            pragmas=tuple(pragmas),
            imports=tuple(imports),
            declarations=tuple(decls),
            type_defs=tuple(type_defs),
        )

    def parse_pragma(self) -> str:
        self.expect("pragma")
        parts: list[str] = []
        prev: Optional[Token] = None
        while not self.at(";"):
            tok = self.advance()
            if prev is not None and tok.offset != prev.end:
                parts.append(" ")
            parts.append(tok.lexeme)
            prev = tok
        self.expect(";")
        return "".join(parts)

    def _string(self) -> str:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.STRING:
            raise _Backtrack("expected string literal")
        self.pos += 1
        return tok.lexeme[1:-1]

    def parse_import(self) -> n.ImportDirective:
        self.expect("import")
        symbols: list[tuple[str, Optional[str]]] = []
        alias = None
        if self.at_kind(TokenKind.STRING):
            path = self._string()
            if self.accept("as"):
                alias = self.identifier()
        else:
            if self.accept("*"):
                self.expect("as")
                alias = self.identifier()
            elif self.accept("{"):
                while not self.accept("}"):
                    name = self.identifier()
                    sym_alias = self.identifier() if self.accept("as") else None
                    symbols.append((name, sym_alias))
                    if not self.at("}"):
                        self.expect(",")
            else:
                alias = self.identifier()
                if self.accept("as"):
                    alias = self.identifier()
            if self.identifier() != "from":
                raise _Backtrack("expected 'from'")
            path = self._string()
        self.expect(";")
        return n.ImportDirective(path=path, symbols=tuple(symbols), unit_alias=alias)

    def parse_type_def(self) -> n.TypeDef:
        start = self.pos
        if self.accept("type"):
            name = self.identifier()
            self.skip_item()
            return n.TypeDef(name, "value-type", (start, self.pos))
        kind = self.advance().lexeme
        name = self.identifier()
        if not self.at("{"):
            raise _Backtrack("expected '{'")
        self.skip_group()
        return n.TypeDef(name, kind, (start, self.pos))

    # -- contracts -----------------------------------------------------------

    def qualified_name(self) -> str:
        name = self.identifier()
        while self.at(".") and self.at_kind(TokenKind.IDENTIFIER, k=1):
            self.pos += 1
            name += "." + self.identifier()
        return name

    def parse_contract(self) -> n.TopDecl:
        start = self.pos
        abstract = self.accept("abstract")
        kind = self.advance().lexeme
        name = self.identifier()
        bases: list[n.BaseSpec] = []
        if self.accept("is"):
            while True:
                base = self.qualified_name()
                args = self.parse_call_args()[0] if self.at("(") else None
                bases.append(n.BaseSpec(base, args))
                if not self.accept(","):
                    break
        if not self.at("{"):
            raise _Backtrack("expected contract body")
        body_end = skip_balanced(self.toks, self.pos) - 1
        self.pos += 1
        members: list[n.Member] = []
        while self.pos < body_end:
            members.append(self.parse_member(body_end))
        self.pos = body_end + 1
        return n.TopDecl(
            kind=kind,
            name=name,
            bases=tuple(bases),
            members=tuple(members),
            file=self.file,
            span=(start, self.pos),
            abstract=abstract,
        )

    def parse_member(self, limit: int) -> n.Member:
        start = self.pos
        try:
            member = self._member()
            if self.pos > limit:
                raise _Backtrack("member overran contract body")
            return member
        except _Backtrack:
            self.pos = start
            span = self.skip_item()
            return n.UnknownMember(span, (start, self.pos))

    def _member(self) -> n.Member:
        start = self.pos
        if self.at("function"):
            return self.parse_function()
        if self.at("receive", "fallback") and self.at("(", k=1):
            return self.parse_function(named=self.advance().lexeme)
        if self.at("constructor"):
            self.advance()
            params = self.parse_params()
            modifiers, _, body = self.parse_function_tail()
            return n.ConstructorDef(params, modifiers, body, (start, self.pos))
        if self.at("modifier"):
            self.advance()
            name = self.identifier()
            params = self.parse_params() if self.at("(") else ()
            _, _, body = self.parse_function_tail()
            return n.ModifierDef(name, params, body, (start, self.pos))
        if self.at("event"):
            self.advance()
            name = self.identifier()
            params = self.parse_params()
            if self.at("anonymous"):
                self.advance()
            self.expect(";")
            return n.EventDef(name, params, (start, self.pos))
        if self.at("using"):
            self.advance()
            library = self.qualified_name()
            if not self.accept("for"):
                raise _Backtrack("expected 'for'")
            if self.accept("*"):
                target = "*"
            else:
                target = self.parse_type_name()
            self.skip_item()
            return n.UsingForDef(library, target, (start, self.pos))
        if self.at("struct", "enum") or (self.at("type") and self.at("is", k=2)):
            return self.parse_type_def()
        if self.at("error") and self.at_kind(TokenKind.IDENTIFIER, k=1):
            raise _Backtrack("custom errors are kept opaque")
        return self.parse_state_var()

    def parse_state_var(self) -> n.StateVarDef:
        start = self.pos
        type_name = self.parse_type_name()
        while True:
            if self.at(*STATE_VAR_ATTRIBUTES):
                self.advance()
            elif self.at("override"):
                self.advance()
                if self.at("("):
                    self.skip_group()
            else:
                break
        name = self.identifier()
        value = None
        if self.accept("="):
            value = self.parse_expression()
        self.expect(";")
        return n.StateVarDef(name, type_name, value, (start, self.pos))

    def parse_function(self, named: Optional[str] = None) -> n.FunctionDef:
        start = self.pos
        if named is None:
            self.expect("function")
            if self.at("("):
                name = "fallback"
            else:
                tok = self.advance()
                if tok.kind not in (TokenKind.IDENTIFIER, TokenKind.KEYWORD):
                    raise _Backtrack("expected function name")
                name = tok.lexeme
        else:
            name = named
        params = self.parse_params()
        modifiers, returns, body = self.parse_function_tail()
        return n.FunctionDef(name, params, modifiers, body, returns, (start, self.pos))

    def parse_function_tail(self):
        modifiers: list[n.ModifierInvocation] = []
        returns: tuple[n.Param, ...] = ()
        while True:
            if self.at("{"):
                return tuple(modifiers), returns, self.parse_block()
            if self.accept(";"):
                return tuple(modifiers), returns, None
            if self.accept("returns"):
                returns = self.parse_params()
            elif self.at(*FUNCTION_ATTRIBUTES):
                self.advance()
            elif self.accept("override"):
                if self.at("("):
                    self.skip_group()
            elif self.at_kind(TokenKind.IDENTIFIER):
                name = self.qualified_name()
                args = self.parse_call_args()[0] if self.at("(") else None
                modifiers.append(n.ModifierInvocation(name, args))
            else:
                raise _Backtrack("unexpected token in function header")

    def parse_params(self) -> tuple[n.Param, ...]:
        self.expect("(")
        params: list[n.Param] = []
        while not self.accept(")"):
            type_name = self.parse_type_name()
            while self.at(*DATA_LOCATIONS) or self.at("indexed"):
                self.advance()
            name = self.identifier() if self.at_kind(TokenKind.IDENTIFIER) else None
            params.append(n.Param(type_name, name))
            if not self.at(")"):
                self.expect(",")
        return tuple(params)

    def parse_type_name(self) -> str:
        if self.accept("function"):
            if self.at("("):
                self.skip_group()
            while self.at(*FUNCTION_ATTRIBUTES):
                self.advance()
            if self.accept("returns"):
                if self.at("("):
                    self.skip_group()
            name = "function"
        elif self.accept("mapping"):
            if not self.at("("):
                raise _Backtrack("expected '(' after mapping")
            self.skip_group()
            name = "mapping"
        elif self.accept("address"):
            self.accept("payable")
            name = "address"
        elif self.at_kind(TokenKind.IDENTIFIER):
            name = self.qualified_name()
        else:
            raise _Backtrack("expected type name")
        while self.at("["):
            self.skip_group()
            name += "[]"
        return name

    # -- statements ----------------------------------------------------------

    def parse_block(self) -> n.Block:
        self.expect("{")
        stmts: list[n.Stmt] = []
        while not self.at("}"):
            if self.peek() is None:
                raise _Backtrack("unterminated block")
            stmts.append(self.parse_statement())
        self.advance()
        return n.Block(tuple(stmts))

    def parse_statement(self) -> n.Stmt:
        start = self.pos
        try:
            return self._statement()
        except _Backtrack:
            self.pos = start
            return n.Unknown(self.skip_item())

    def _statement(self) -> n.Stmt:
        if self.at("{"):
            return self.parse_block()
        if self.accept("if"):
            self.expect("(")
            cond = self.parse_expression()
            self.expect(")")
            then = self.parse_statement()
            orelse = self.parse_statement() if self.accept("else") else None
            return n.If(cond, then, orelse)
        if self.accept("for"):
            self.expect("(")
            init = None if self.accept(";") else self.parse_simple_statement()
            cond = None if self.at(";") else self.parse_expression()
            self.expect(";")
            post = None if self.at(")") else self.parse_expression()
            self.expect(")")
            return n.For(init, cond, post, self.parse_statement())
        if self.accept("while"):
            self.expect("(")
            cond = self.parse_expression()
            self.expect(")")
            return n.While(cond, self.parse_statement())
        if self.accept("do"):
            body = self.parse_statement()
            self.expect("while")
            self.expect("(")
            cond = self.parse_expression()
            self.expect(")")
            self.expect(";")
            return n.DoWhile(body, cond)
        if self.accept("try"):
            return self.parse_try()
        if self.accept("emit"):
            expr = self.parse_expression()
            self.expect(";")
            return n.Emit(expr)
        if self.accept("return"):
            expr = None if self.at(";") else self.parse_expression()
            self.expect(";")
            return n.Return(expr)
        if self.at("assembly"):
            start = self.pos
            while not self.at("{"):
                self.advance()
            self.skip_group()
            return n.InlineAssembly(tuple(self.toks[start : self.pos]))
        if self.at("unchecked") and self.at("{", k=1):
            raise _Backtrack("unchecked blocks are kept opaque")
        if self.at("break", "continue", "throw", "_"):
            raise _Backtrack("no calls in control transfer")
        if self.at("revert") and self.at_kind(TokenKind.IDENTIFIER, k=1):
            raise _Backtrack("custom error revert")
        return self.parse_simple_statement()

    def parse_try(self) -> n.Try:
        expr = self.parse_expression()
        returns: tuple[n.Param, ...] = ()
        if self.accept("returns"):
            returns = self.parse_params()
        body = self.parse_block()
        catches: list[n.CatchClause] = []
        while self.accept("catch"):
            name = self.identifier() if self.at_kind(TokenKind.IDENTIFIER) else None
            params = self.parse_params() if self.at("(") else ()
            catches.append(n.CatchClause(name, params, self.parse_block()))
        return n.Try(expr, returns, body, tuple(catches))

    def parse_simple_statement(self) -> n.Stmt:
        start = self.pos
        try:
            return self.parse_var_decl()
        except _Backtrack:
            self.pos = start
        expr = self.parse_expression()
        self.expect(";")
        return n.ExprStmt(expr)

    def parse_var_decl(self) -> n.VarDecl:
        if self.accept("("):
            types: list[Optional[str]] = []
            names: list[Optional[str]] = []
            while True:
                if self.at(",", ")"):
                    types.append(None)
                    names.append(None)
                else:
                    types.append(self.parse_type_name())
                    while self.at(*DATA_LOCATIONS):
                        self.advance()
                    names.append(self.identifier())
                if self.accept(")"):
                    break
                self.expect(",")
            self.expect("=")
            value = self.parse_expression()
            self.expect(";")
            return n.VarDecl(tuple(types), tuple(names), value)
        type_name = self.parse_type_name()
        while self.at(*DATA_LOCATIONS):
            self.advance()
        name = self.identifier()
        value = None
        if self.accept("="):
            value = self.parse_expression()
        self.expect(";")
        return n.VarDecl((type_name,), (name,), value)

    # -- expressions ---------------------------------------------------------

    def parse_expression(self) -> n.Expr:
        target = self.parse_conditional()
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.PUNCT and tok.lexeme in ASSIGN_OPS:
            self.advance()
            return n.Assign(tok.lexeme, target, self.parse_expression())
        return target

    def parse_conditional(self) -> n.Expr:
        cond = self.parse_binary(1)
        if self.accept("?"):
            then = self.parse_expression()
            self.expect(":")
            return n.Conditional(cond, then, self.parse_expression())
        return cond

    def parse_binary(self, min_prec: int) -> n.Expr:
        left = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is None or tok.kind is not TokenKind.PUNCT:
                return left
            prec = BINARY_PRECEDENCE.get(tok.lexeme)
            if prec is None or prec < min_prec:
                return left
            self.advance()
            # `**` is right-associative
            right = self.parse_binary(prec if tok.lexeme == "**" else prec + 1)
            left = n.Binary(tok.lexeme, left, right)

    def parse_unary(self) -> n.Expr:
        tok = self.peek()
        if tok is not None and tok.kind in (TokenKind.PUNCT, TokenKind.IDENTIFIER):
            if tok.lexeme in PREFIX_OPS and not (
                tok.lexeme == "delete" and self.at(".", "(", ";", k=1)
            ):
                self.advance()
                return n.Unary(tok.lexeme, self.parse_unary())
        return self.parse_postfix(self.parse_primary())

    def _at_call_options(self) -> bool:
        return (
            self.at("{")
            and self.at_kind(TokenKind.IDENTIFIER, k=1)
            and self.at(":", k=2)
        )

    def parse_postfix(self, expr: n.Expr) -> n.Expr:
        options: tuple[n.Expr, ...] = ()
        while True:
            if self.accept("."):
                tok = self.advance()
                if tok.kind not in (TokenKind.IDENTIFIER, TokenKind.KEYWORD):
                    raise _Backtrack("expected member name")
                expr = n.MemberAccess(expr, tok.lexeme)
            elif self.at("("):
                args, _ = self.parse_call_args()
                expr = n.Call(expr, args, options)
                options = ()
            elif self.accept("["):
                index = end = None
                if not self.at(":", "]"):
                    index = self.parse_expression()
                if self.accept(":"):
                    if not self.at("]"):
                        end = self.parse_expression()
                self.expect("]")
                expr = n.Index(expr, index, end)
            elif self._at_call_options():
                options = self.parse_named_values()
            elif self.at("++", "--"):
                expr = n.Unary(self.advance().lexeme, expr, prefix=False)
            else:
                if options:
                    expr = n.Call(expr, (), options)
                return expr

    def parse_named_values(self) -> tuple[n.Expr, ...]:
        self.expect("{")
        values: list[n.Expr] = []
        while not self.accept("}"):
            self.identifier()
            self.expect(":")
            values.append(self.parse_expression())
            if not self.at("}"):
                self.expect(",")
        return tuple(values)

    def parse_call_args(self) -> tuple[tuple[n.Expr, ...], bool]:
        self.expect("(")
        if self._at_call_options():
            values = self.parse_named_values()
            self.expect(")")
            return values, True
        args: list[n.Expr] = []
        while not self.accept(")"):
            args.append(self.parse_expression())
            if not self.at(")"):
                self.expect(",")
        return tuple(args), False

    def parse_primary(self) -> n.Expr:
        tok = self.peek()
        if tok is None:
            raise _Backtrack("unexpected end of input")
        kind, lex = tok.kind, tok.lexeme
        if kind is TokenKind.NUMBER:
            self.advance()
            if self.at_kind(TokenKind.IDENTIFIER) and self.peek().lexeme in ETHER_UNITS:
                self.advance()
            return n.Literal(tok)
        if kind is TokenKind.STRING:
            self.advance()
            while self.at_kind(TokenKind.STRING):
                self.advance()
            return n.Literal(tok)
        if kind is TokenKind.PUNCT:
            if lex == "(":
                return self.parse_tuple("(", ")")
            if lex == "[":
                return self.parse_tuple("[", "]")
            raise _Backtrack(f"unexpected {lex!r}")
        if kind is TokenKind.KEYWORD:
            if lex == "this":
                self.advance()
                return n.This()
            if lex == "new":
                self.advance()
                return n.New(self.parse_type_name())
            if lex in ("address", "payable"):
                self.advance()
                if lex == "address" and self.at("payable"):
                    self.advance()
                return n.TypeExpr(lex)
            if lex == "require":
                self.advance()
                return n.Identifier(lex)
            if lex == "mapping" or lex == "function":
                return n.TypeExpr(self.parse_type_name())
            raise _Backtrack(f"unexpected keyword {lex!r}")
        # identifier
        self.advance()
        if lex in ("true", "false"):
            return n.Literal(tok)
        if lex in ("hex", "unicode") and self.at_kind(TokenKind.STRING):
            self.advance()
            return n.Literal(tok)
        if _ELEMENTARY_RE.match(lex) and lex != "var":
            return n.TypeExpr(lex)
        return n.Identifier(lex)

    def parse_tuple(self, opener: str, closer: str) -> n.Expr:
        self.expect(opener)
        items: list[Optional[n.Expr]] = []
        trailing_comma = False
        while not self.accept(closer):
            if self.at(","):
                items.append(None)
            else:
                items.append(self.parse_expression())
            trailing_comma = False
            if not self.at(closer):
                self.expect(",")
                trailing_comma = True
                if self.at(closer):
                    items.append(None)
        if opener == "(" and len(items) == 1 and not trailing_comma and items[0] is not None:
            return items[0]
        return n.Tuple(tuple(items))


def parse_unit(tokens: list[Token], file: str = "<memory>") -> n.SourceUnit:
    """Parse one file's tokens. Raises ParseError only for unbalanced brackets."""
    check_balanced(tokens, file)
    try:
        return Parser(tokens, file).parse_unit()
    except RecursionError as exc:
        raise ParseError("nesting too deep", file=file) from exc


def parse_source(source: str, file: str = "<memory>") -> n.SourceUnit:
    return parse_unit(tokenize(source, file), file)
