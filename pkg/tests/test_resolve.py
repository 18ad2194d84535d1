from hypothesis import given, settings
from hypothesis import strategies as st

from dappnet.parser import is_elementary, parse_source
from dappnet.pipeline import ScanConfig, scan_sources
from dappnet.resolve import bind_types, build_registry, resolve_member


def units(*sources):
    return [parse_source(src, f"f{i}.sol") for i, src in enumerate(sources)]


def registry_of(*sources):
    return build_registry(units(*sources))


def fn(decl, name):
    return next(m for m in decl.members if getattr(m, "name", None) == name)


def test_three_contract_registry(fixtures_dir):
    result = scan_sources(ScanConfig([fixtures_dir / "three_contracts"]))
    reg = result.registry
    assert sorted(reg.decls) == ["Contract1", "Contract2", "Contract3"]
    for i in (1, 2, 3):
        info = reg[f"Contract{i}"]
        assert info.kind == "contract"
        assert info.members.functions == {f"func{i}"}
        assert info.file == f"Contract{i}.sol"
    assert reg.warnings == []


def test_empty_registry():
    reg = build_registry([])
    assert len(reg) == 0 and reg.warnings == []


def test_duplicate_names_first_wins_with_warning():
    reg = registry_of(
        "contract Ownable { function a() public {} }",
        "contract Ownable { function b() public {} }",
    )
    assert len(reg) == 1
    assert reg["Ownable"].file == "f0.sol"
    assert reg["Ownable"].members.functions == {"a"}
    assert len(reg.warnings) == 1 and "Ownable" in reg.warnings[0]


def test_resolve_member_self_and_base(fixtures_dir):
    own = scan_sources(ScanConfig([fixtures_dir / "ownable"])).registry
    assert resolve_member(own, "Ownable", "onlyPolicy", "modifier") == "Ownable"
    mint = scan_sources(ScanConfig([fixtures_dir / "mint"])).registry
    assert resolve_member(mint, "ERC20", "Transfer", "event") == "IERC20"
    assert resolve_member(mint, "ERC20", "nosuch", "function") is None


def test_depth_first_left_to_right_order():
    reg = registry_of(
        """
        contract Root { event E(); function r() public {} }
        contract Left is Root { }
        contract Right { event E(); function r() public {} }
        contract Leaf is Left, Right { }
        """
    )
    assert reg.ancestors("Leaf") == ["Leaf", "Left", "Root", "Right"]
    assert resolve_member(reg, "Leaf", "E", "event") == "Root"
    assert any("Leaf" in w and "'E'" in w for w in reg.warnings)


def test_linear_override_chain_is_not_ambiguous():
    reg = registry_of(
        """
        contract A { function f() public virtual {} }
        contract B is A { function f() public virtual override {} }
        contract C is B { }
        """
    )
    assert resolve_member(reg, "C", "f", "function") == "B"
    assert reg.warnings == []


def test_inheritance_cycle_warns_and_terminates():
    reg = registry_of("contract A is B { } contract B is A { event Z(); }")
    assert any("cycle" in w for w in reg.warnings)
    assert resolve_member(reg, "A", "Z", "event") == "B"
    assert resolve_member(reg, "A", "nothing", "event") is None


def test_bindings_for_three_contract_function(fixtures_dir):
    result = scan_sources(ScanConfig([fixtures_dir / "three_contracts"]))
    unit = next(u for u in result.units if u.file == "Contract3.sol")
    decl = unit.declarations[0]
    binding = bind_types(result.registry, decl, fn(decl, "func3"))
    assert binding.types == {"contract1": "Contract1", "contract2": "Contract2"}


def test_markdown_bindings_are_empty(fixtures_dir):
    result = scan_sources(ScanConfig([fixtures_dir / "markdown"]))
    unit = next(u for u in result.units if u.file == "BondCalculator.sol")
    decl = next(d for d in unit.declarations if d.name == "BondCalculator")
    binding = bind_types(result.registry, decl, fn(decl, "markdown"))
    assert binding.types == {}
    assert binding.external == frozenset()


def test_local_declaration_binding():
    (unit,) = units(
        """
        contract Vault { function pull() public {} }
        contract User {
            function go(address a) public {
                Vault v = Vault(a);
                v.pull();
            }
        }
        """
    )
    reg = build_registry([unit])
    decl = unit.declarations[1]
    assert bind_types(reg, decl, fn(decl, "go")).types == {"v": "Vault"}


def test_shadowing_and_external_types():
    (unit,) = units(
        """
        contract Vault { }
        contract Base { Vault internal inherited; }
        contract User is Base {
            struct Pos { uint a; }
            Vault keeper;
            IMissing remote;
            Pos position;
            function go(uint keeper, Vault other) public returns (IMissing answer) {
                Vault local = other;
            }
        }
        """
    )
    reg = build_registry([unit])
    decl = unit.declarations[2]
    binding = bind_types(reg, decl, fn(decl, "go"))
    assert binding.types == {"inherited": "Vault", "other": "Vault", "local": "Vault"}
    assert binding.external == {"remote", "answer"}
    contract_scope = bind_types(reg, decl)
    assert contract_scope.types == {"inherited": "Vault", "keeper": "Vault"}


# -- properties ---------------------------------------------------------------

type_names = st.sampled_from(["uint", "address", "bool", "bytes32", "string", "A", "B", "C", "Ghost", "S"])
var_names = st.sampled_from(["x", "y", "z", "w"])


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(type_names, var_names), max_size=8), st.lists(st.tuples(type_names, var_names), max_size=4))
def test_bindings_only_name_registry_types(state, params):
    state_src = "\n".join(f"{t} {v};" for t, v in state)
    param_src = ", ".join(f"{t} p_{v}" for t, v in params)
    source = f"""
        contract A {{ }}
        library B {{ }}
        interface C {{ }}
        contract T {{
            struct S {{ uint q; }}
            {state_src}
            function f({param_src}) public {{ }}
        }}
    """
    (unit,) = units(source)
    reg = build_registry([unit])
    decl = unit.declarations[3]
    binding = bind_types(reg, decl, fn(decl, "f"))
    for var, t in binding.types.items():
        assert t in reg and not is_elementary(t)
    # the last declaration of a name decides its binding
    last = {}
    for t, v in state:
        last[v] = t
    for t, v in params:
        last[f"p_{v}"] = t
    for var, t in last.items():
        assert binding.get(var) == (t if t in ("A", "B", "C") else None)
        assert (var in binding.external) == (t == "Ghost")


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_registry_is_scan_order_insensitive(rnd):
    sources = [
        "contract A is B { event E(); function f() public {} }",
        "contract B { modifier m() { _; } }",
        "interface I { function g() external; }",
        "library L { function h() internal {} }",
        "contract D is A, I { uint internal v; }",
    ]
    base = build_registry(units(*sources))
    order = list(range(len(sources)))
    rnd.shuffle(order)
    shuffled = build_registry([parse_source(sources[i], f"f{i}.sol") for i in order])
    assert shuffled.decls == base.decls
    assert shuffled.type_names == base.type_names


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.sampled_from("ABCDE"), st.sampled_from("ABCDE")), max_size=8),
       st.sampled_from("ABCDE"), st.sampled_from(["f", "g"]))
def test_self_precedence(edges, owner, member):
    bases = {c: [] for c in "ABCDE"}
    for child, base in edges:
        if base not in bases[child] and base != child:
            bases[child].append(base)
    parts = []
    for c in "ABCDE":
        is_clause = f" is {', '.join(bases[c])}" if bases[c] else ""
        body = f"function {member}() public {{}}" if c == owner else ""
        parts.append(f"contract {c}{is_clause} {{ {body} }}")
    reg = registry_of("\n".join(parts))
    assert resolve_member(reg, owner, member, "function") == owner
    for c in "ABCDE":
        found = resolve_member(reg, c, member, "function")
        assert found in (None, owner)
        assert (found == owner) == (owner in reg.ancestors(c))
