"""Contract-call extraction.

Walks every function, constructor, modifier and contract-scope expression
of a parsed file and emits one ``CallRecord`` per interaction:

* ``constructor``: each constructor is a call of the contract to itself;
* ``global``: base-constructor arguments in the inheritance list, and the
  source function of anything found outside a function body;
* ``this``: every occurrence of ``this``;
* ``cast``: ``T(x)`` or ``new T(...)`` for a scanned type ``T``;
* ``construct``: member calls on typed variables, static ``L.m(...)``
  access, modifier invocations and event emission;
* ``external``: the same shapes when the target is not in the scanned set.

Inline assembly and unparsed spans are never descended into.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import nodes as n
from .resolve import DeclRegistry, TypeBinding, bind_types

EXTERNAL = "External"
GLOBAL = "Global"
CONSTRUCTOR = "constructor"
RULES = ("constructor", "global", "this", "cast", "construct", "external")


@dataclass(frozen=True)
class CallRecord:
    file: str
    source_contract: str
    source_function: str
    target_contract: str
    chain: tuple[str, ...] = ()
    rule: Optional[str] = None  # provenance only; not serialized to CSV
    source_kind: str = "function"  # function | constructor | modifier | global

    @property
    def source_node(self) -> str:
        return f"{self.source_contract}.{self.source_function}"


BindingsProvider = Callable[[DeclRegistry, n.TopDecl, Optional[n.Member]], TypeBinding]


class _Walker:
    def __init__(self, unit: n.SourceUnit, registry: DeclRegistry, bindings: BindingsProvider):
        self.unit = unit
        self.registry = registry
        self.bindings = bindings
        self.imported = unit.imported_names() - set(registry.decls)
        self.records: list[CallRecord] = []
        # per-construct context
        self.contract = ""
        self.function = ""
        self.kind = "function"
        self.scope = TypeBinding()

    def emit(self, target: str, chain=(), rule: str = "construct") -> None:
        self.records.append(
            CallRecord(
                file=self.unit.file,
                source_contract=self.contract,
                source_function=self.function,
                target_contract=target,
                chain=tuple(chain),
                rule=rule,
                source_kind=self.kind,
            )
        )

    def enter(self, decl: n.TopDecl, member: Optional[n.Member], function: str, kind: str) -> None:
        self.contract = decl.name
        self.function = function
        self.kind = kind
        self.scope = self.bindings(self.registry, decl, member)

    # -- declarations --------------------------------------------------------

    def walk_unit(self) -> list[CallRecord]:
        for decl in self.unit.declarations:
            # a duplicate declaration lost the registry slot to an earlier file
            if self.registry.decls.get(decl.name) is None or self.registry[decl.name].file != decl.file:
                continue
            self.walk_decl(decl)
        return self.records

    def walk_decl(self, decl: n.TopDecl) -> None:
        self.enter(decl, None, GLOBAL, "global")
        for base in decl.bases:
            if base.args is None:
                continue
            name = base.name.rsplit(".", 1)[-1]
            if name in self.registry:
                self.emit(name, (), "global")
            for arg in base.args:
                self.expr(arg)

        for member in decl.members:
            if isinstance(member, n.StateVarDef):
                if member.value is not None:
                    self.enter(decl, None, GLOBAL, "global")
                    self.expr(member.value)
            elif isinstance(member, n.ConstructorDef):
                self.enter(decl, member, CONSTRUCTOR, "constructor")
                self.emit(decl.name, (), "constructor")
                self.modifiers(member.modifiers, constructor=True)
                self.stmt(member.body)
            elif isinstance(member, n.FunctionDef):
                self.enter(decl, member, member.name, "function")
                self.modifiers(member.modifiers)
                self.stmt(member.body)
            elif isinstance(member, n.ModifierDef):
                self.enter(decl, member, member.name, "modifier")
                self.stmt(member.body)

    def modifiers(self, invocations, constructor: bool = False) -> None:
        for inv in invocations:
            name = inv.name.rsplit(".", 1)[-1]
            if constructor and name in self.registry and self.registry.kind_of(name) != "library":
                # base constructor invoked from the constructor header
                self.emit(name, (), "construct")
            else:
                owner = self.registry.resolve_member(self.contract, name, "modifier")
                if owner is None:
                    self.emit(EXTERNAL, (name,), "external")
                else:
                    self.emit(owner, (name,), "construct")
            for arg in inv.args or ():
                self.expr(arg)

    # -- statements ----------------------------------------------------------

    def stmt(self, s: Optional[n.Stmt]) -> None:
        if s is None:
            return
        if isinstance(s, n.Block):
            for inner in s.stmts:
                self.stmt(inner)
        elif isinstance(s, n.ExprStmt):
            self.expr(s.expr)
        elif isinstance(s, n.VarDecl):
            self.expr(s.value)
        elif isinstance(s, n.If):
            self.expr(s.cond)
            self.stmt(s.then)
            self.stmt(s.orelse)
        elif isinstance(s, n.For):
            self.stmt(s.init)
            self.expr(s.cond)
            self.expr(s.post)
            self.stmt(s.body)
        elif isinstance(s, n.While):
            self.expr(s.cond)
            self.stmt(s.body)
        elif isinstance(s, n.DoWhile):
            self.stmt(s.body)
            self.expr(s.cond)
        elif isinstance(s, n.Try):
            self.expr(s.expr)
            self.stmt(s.body)
            for clause in s.catches:
                self.stmt(clause.body)
        elif isinstance(s, n.Return):
            self.expr(s.expr)
        elif isinstance(s, n.Emit):
            self.emit_event(s.expr)
        # InlineAssembly and Unknown spans are opaque

    def emit_event(self, e: n.Expr) -> None:
        if not isinstance(e, n.Call):
            self.expr(e)
            return
        callee = e.callee
        if isinstance(callee, n.Identifier):
            owner = self.registry.resolve_member(self.contract, callee.name, "event")
            if owner is None:
                self.emit(EXTERNAL, (callee.name,), "external")
            else:
                self.emit(owner, (callee.name,), "construct")
        elif isinstance(callee, n.MemberAccess) and isinstance(callee.expr, n.Identifier):
            qualifier, event = callee.expr.name, callee.member
            if qualifier in self.registry:
                owner = self.registry.resolve_member(qualifier, event, "event") or qualifier
                self.emit(owner, (event,), "construct")
            else:
                self.emit(EXTERNAL, (event,), "external")
        else:
            self.expr(callee)
        for arg in (*e.args, *e.options):
            self.expr(arg)

    # -- expressions ---------------------------------------------------------

    def is_cast(self, call: n.Call) -> bool:
        callee = call.callee
        if isinstance(callee, n.New):
            return True
        return isinstance(callee, n.Identifier) and (
            callee.name in self.registry or callee.name in self.imported
        )

    def expr(self, e: Optional[n.Expr]) -> None:
        if e is None:
            return
        if isinstance(e, (n.MemberAccess, n.Call, n.Index)):
            self.chain(e)
        elif isinstance(e, n.This):
            self.emit(self.contract, (), "this")
        elif isinstance(e, n.New):
            self.new(e)
        elif isinstance(e, n.Tuple):
            for item in e.items:
                self.expr(item)
        elif isinstance(e, n.Unary):
            self.expr(e.operand)
        elif isinstance(e, n.Binary):
            self.expr(e.left)
            self.expr(e.right)
        elif isinstance(e, n.Assign):
            self.expr(e.target)
            self.expr(e.value)
        elif isinstance(e, n.Conditional):
            self.expr(e.cond)
            self.expr(e.then)
            self.expr(e.orelse)
        # Identifier, Literal, TypeExpr: nothing to record

    def new(self, e: n.New, chain=()) -> None:
        name = e.type_name
        if name in self.registry:
            self.emit(name, (), "cast")
        elif name in self.imported:
            self.emit(EXTERNAL, (), "external")

    def chain(self, e: n.Expr) -> None:
        """Flatten a postfix chain down to its root and classify the root."""
        names: list[str] = []
        pending: list[tuple[n.Expr, ...]] = []
        called = False
        node = e
        while True:
            if isinstance(node, n.MemberAccess):
                names.append(node.member)
                node = node.expr
            elif isinstance(node, n.Call):
                if self.is_cast(node):
                    break
                called = True
                pending.append((*node.args, *node.options))
                node = node.callee
            elif isinstance(node, n.Index):
                pending.append((node.index, node.end))
                node = node.base
            else:
                break
        names.reverse()

        if isinstance(node, n.Call):
            callee = node.callee
            if isinstance(callee, n.New):
                self.new(callee)
            elif callee.name in self.registry:
                self.emit(callee.name, names, "cast")
            else:
                self.emit(EXTERNAL, names, "external")
            for arg in (*node.args, *node.options):
                self.expr(arg)
        elif isinstance(node, n.This):
            self.emit(self.contract, names, "this")
        elif isinstance(node, n.Identifier):
            if names and called:
                self.identifier_root(node.name, names)
        elif node is not e:
            self.expr(node)

        for group in reversed(pending):
            for arg in group:
                self.expr(arg)

    def identifier_root(self, name: str, names: list[str]) -> None:
        bound = self.scope.get(name)
        if bound is not None:
            self.emit(bound, names, "construct")
        elif name in self.scope.external:
            self.emit(EXTERNAL, names, "external")
        elif name in self.registry:
            self.emit(name, names, "construct")
        elif name in self.imported:
            self.emit(EXTERNAL, names, "external")


def extract_calls(
    unit: n.SourceUnit,
    registry: DeclRegistry,
    bindings: BindingsProvider = bind_types,
) -> list[CallRecord]:
    """All call records of one parsed file, in source order."""
    return _Walker(unit, registry, bindings).walk_unit()
