"""DApp-wide declaration registry and name resolution.

Resolution is by global name across every scanned file; import paths are
not followed. Anything missing from the registry is, by definition, not
part of the scanned DApp.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import nodes as n
from .parser import is_elementary

log = logging.getLogger(__name__)

MEMBER_CLASSES = ("function", "event", "modifier")


@dataclass(frozen=True)
class MemberTable:
    functions: frozenset[str] = frozenset()
    events: frozenset[str] = frozenset()
    modifiers: frozenset[str] = frozenset()
    state_vars: tuple[tuple[str, str], ...] = ()  # (name, declared type) in source order

    def has(self, name: str, member_class: str) -> bool:
        if member_class == "function":
            return name in self.functions
        if member_class == "event":
            return name in self.events
        if member_class == "modifier":
            return name in self.modifiers
        raise ValueError(f"unknown member class {member_class!r}")


@dataclass(frozen=True)
class DeclInfo:
    name: str
    kind: str
    file: str
    bases: tuple[str, ...]
    members: MemberTable


@dataclass
class DeclRegistry:
    decls: dict[str, DeclInfo] = field(default_factory=dict)
    # struct / enum / value-type names seen anywhere; never call targets
    type_names: frozenset[str] = frozenset()
    warnings: list[str] = field(default_factory=list)

    def __contains__(self, name: object) -> bool:
        return name in self.decls

    def __getitem__(self, name: str) -> DeclInfo:
        return self.decls[name]

    def __len__(self) -> int:
        return len(self.decls)

    def kind_of(self, name: str) -> Optional[str]:
        info = self.decls.get(name)
        return info.kind if info else None

    def ancestors(self, name: str) -> list[str]:
        """Self first, then bases depth-first, left to right; cycles cut."""
        order: list[str] = []
        seen: set[str] = set()

        def visit(current: str, path: tuple[str, ...]) -> None:
            if current in path:
                log.debug("inheritance cycle through %s", " -> ".join(path + (current,)))
                return
            if current in seen or current not in self.decls:
                return
            seen.add(current)
            order.append(current)
            for base in self.decls[current].bases:
                visit(base, path + (current,))

        visit(name, ())
        return order

    def resolve_member(self, contract: str, member: str, member_class: str) -> Optional[str]:
        for owner in self.ancestors(contract):
            if self.decls[owner].members.has(member, member_class):
                return owner
        return None


def _short(name: str) -> str:
    return name.rsplit(".", 1)[-1]


def _member_table(decl: n.TopDecl) -> MemberTable:
    functions, events, modifiers, state_vars = set(), set(), set(), []
    for m in decl.members:
        if isinstance(m, n.FunctionDef):
            functions.add(m.name)
        elif isinstance(m, n.EventDef):
            events.add(m.name)
        elif isinstance(m, n.ModifierDef):
            modifiers.add(m.name)
        elif isinstance(m, n.StateVarDef):
            state_vars.append((m.name, m.type_name))
    return MemberTable(frozenset(functions), frozenset(events), frozenset(modifiers), tuple(state_vars))


def _find_cycles(registry: DeclRegistry) -> list[str]:
    found = []
    state: dict[str, int] = {}

    def visit(name: str, stack: list[str]) -> None:
        state[name] = 1
        stack.append(name)
        for base in registry.decls[name].bases:
            if base not in registry.decls:
                continue
            if state.get(base) == 1:
                cycle = stack[stack.index(base):] + [base]
                found.append("inheritance cycle: " + " -> ".join(cycle))
            elif base not in state:
                visit(base, stack)
        stack.pop()
        state[name] = 2

    for name in sorted(registry.decls):
        if name not in state:
            visit(name, [])
    return found


def _find_ambiguities(registry: DeclRegistry) -> list[str]:
    """Members whose nearest owner differs between direct bases."""
    out = []
    for name in sorted(registry.decls):
        info = registry.decls[name]
        bases = [b for b in info.bases if b in registry.decls]
        if len(bases) < 2:
            continue
        for member_class in MEMBER_CLASSES:
            candidates: set[str] = set()
            for anc in registry.ancestors(name)[1:]:
                table = registry.decls[anc].members
                candidates.update(
                    {"function": table.functions, "event": table.events,
                     "modifier": table.modifiers}[member_class]
                )
            for member in sorted(candidates):
                if info.members.has(member, member_class):
                    continue
                owners = {registry.resolve_member(b, member, member_class) for b in bases}
                owners.discard(None)
                if len(owners) > 1:
                    out.append(
                        f"{name}: {member_class} {member!r} declared in several bases "
                        f"({', '.join(sorted(owners))}); using depth-first order"
                    )
    return out


def build_registry(units: Iterable[n.SourceUnit]) -> DeclRegistry:
    registry = DeclRegistry()
    type_names: set[str] = set()
    for unit in units:
        type_names.update(t.name for t in unit.type_defs)
        for decl in unit.declarations:
            type_names.update(m.name for m in decl.members if isinstance(m, n.TypeDef))
            if decl.name in registry.decls:
                first = registry.decls[decl.name]
                registry.warnings.append(
                    f"duplicate declaration of {decl.name} in {decl.file}; "
                    f"keeping the one from {first.file}"
                )
                continue
            registry.decls[decl.name] = DeclInfo(
                name=decl.name,
                kind=decl.kind,
                file=decl.file,
                bases=tuple(_short(b.name) for b in decl.bases),
                members=_member_table(decl),
            )
    registry.type_names = frozenset(type_names - registry.decls.keys())
    registry.warnings.extend(_find_cycles(registry))
    registry.warnings.extend(_find_ambiguities(registry))
    for w in registry.warnings:
        log.warning(w)
    return registry


def resolve_member(registry: DeclRegistry, contract: str, member: str, member_class: str) -> Optional[str]:
    """Nearest declaration (self, then bases depth-first) that declares ``member``."""
    return registry.resolve_member(contract, member, member_class)


@dataclass(frozen=True)
class TypeBinding:
    """Variables in scope whose declared type is a user-defined contract type.

    ``types`` holds names bound to a type in the registry; ``external`` holds
    names whose declared type is user-defined but not part of the scanned set.
    """

    types: dict[str, str] = field(default_factory=dict)
    external: frozenset[str] = frozenset()

    def get(self, name: str) -> Optional[str]:
        return self.types.get(name)


def _plain_user_type(type_name: Optional[str]) -> bool:
    return bool(type_name) and not is_elementary(type_name) and "." not in type_name and "[" not in type_name


def _local_decls(stmt) -> Iterable[tuple[Optional[str], Optional[str]]]:
    if stmt is None:
        return
    if isinstance(stmt, n.VarDecl):
        yield from zip(stmt.type_names, stmt.names)
    elif isinstance(stmt, n.Block):
        for s in stmt.stmts:
            yield from _local_decls(s)
    elif isinstance(stmt, n.If):
        yield from _local_decls(stmt.then)
        yield from _local_decls(stmt.orelse)
    elif isinstance(stmt, n.For):
        yield from _local_decls(stmt.init)
        yield from _local_decls(stmt.body)
    elif isinstance(stmt, (n.While, n.DoWhile)):
        yield from _local_decls(stmt.body)
    elif isinstance(stmt, n.Try):
        for p in stmt.returns:
            yield p.type_name, p.name
        yield from _local_decls(stmt.body)
        for c in stmt.catches:
            for p in c.params:
                yield p.type_name, p.name
            yield from _local_decls(c.body)


def bind_types(registry: DeclRegistry, decl: n.TopDecl, member: Optional[n.Member] = None) -> TypeBinding:
    """Scope map for ``member`` of ``decl``; ``member=None`` gives contract scope.

    Shadowing order: inherited state variables, own state variables,
    parameters, then locals. A later elementary-typed declaration removes
    an earlier binding of the same name.
    """
    declared: list[tuple[Optional[str], Optional[str]]] = []
    ancestors = registry.ancestors(decl.name) if decl.name in registry else []
    for anc in reversed(ancestors[1:]):
        declared.extend((t, v) for v, t in registry.decls[anc].members.state_vars)
    declared.extend((m.type_name, m.name) for m in decl.members if isinstance(m, n.StateVarDef))
    if member is not None:
        params = getattr(member, "params", ())
        returns = getattr(member, "returns", ())
        declared.extend((p.type_name, p.name) for p in (*params, *returns))
        declared.extend(_local_decls(getattr(member, "body", None)))

    types: dict[str, str] = {}
    external: set[str] = set()
    for type_name, name in declared:
        if not name:
            continue
        types.pop(name, None)
        external.discard(name)
        if type_name in registry:
            types[name] = type_name
        elif _plain_user_type(type_name) and type_name not in registry.type_names:
            external.add(name)
    return TypeBinding(types, frozenset(external))
