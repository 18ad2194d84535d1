"""Synthetic inputs: preferential-attachment graphs and generated Solidity corpora."""
from __future__ import annotations

import random
from pathlib import Path


def preferential_attachment(n: int, m: int = 2, seed: int = 0) -> dict[int, dict[int, float]]:
    """Barabasi-Albert style graph: each new node links to ``m`` degree-biased targets."""
    if n <= m:
        raise ValueError("need n > m")
    rng = random.Random(seed)
    adj: dict[int, dict[int, float]] = {i: {} for i in range(n)}
    # every endpoint appears once per incident edge, so sampling is degree-proportional
    endpoints: list[int] = []
    targets = list(range(m))
    for new in range(m, n):
        for t in set(targets):
            adj[new][t] = 1.0
            adj[t][new] = 1.0
            endpoints.extend((new, t))
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(rng.choice(endpoints))
        targets = sorted(chosen)
    return adj


def random_graph(n: int, p: float, seed: int = 0, weighted: bool = False) -> dict[int, dict[int, float]]:
    rng = random.Random(seed)
    adj: dict[int, dict[int, float]] = {i: {} for i in range(n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                w = float(rng.randint(1, 20)) if weighted else 1.0
                adj[u][v] = adj[v][u] = w
    return adj


_INTERFACE = """\
// SPDX-License-Identifier: MIT
pragma solidity ^0.7.6;

interface {name} {{
    event Moved{idx}(address indexed from, uint256 amount);
    function ping{idx}(uint256 x) external returns (uint256);
    function total{idx}() external view returns (uint256);
}}
"""

_LIBRARY = """\
// SPDX-License-Identifier: MIT
pragma solidity ^0.7.6;

library {name} {{
    function scale{idx}(uint256 a, uint256 b) internal pure returns (uint256) {{
        return a * b / 1e18;
    }}
}}
"""

_CONTRACT = """\
// SPDX-License-Identifier: MIT
pragma solidity ^0.7.6;

{imports}

contract {name} is {base} {{
    using {lib} for uint256;

    {iface} public peer;
    {other} internal helper;
    uint256 private counter;
    mapping(address => uint256) public balances;

    event Touched{idx}(address indexed who, uint256 value);

    modifier guarded{idx}() {{
        require(msg.sender != address(0), "zero sender");
        _;
    }}

    constructor({iface} _peer, {other} _helper) {{
        peer = _peer;
        helper = _helper;
    }}

    function run{idx}(uint256 amount) external guarded{idx} returns (uint256) {{
        uint256 got = peer.ping{iidx}(amount);
        if ({iface}(address(peer)).total{iidx}() > got) {{
            counter += {lib}.scale{lidx}(got, 2);
        }}
        for (uint256 i = 0; i < 3; i++) {{
            balances[msg.sender] = balances[msg.sender] + i;
        }}
        emit Touched{idx}(address(this), amount);
        return helper.step{oidx}(got);
    }}

    function step{idx}(uint256 v) public returns (uint256) {{
        assembly {{
            let x := add(v, 1)
        }}
        return this.peek{idx}() + v;
    }}

    function peek{idx}() public view returns (uint256) {{
        return counter;
    }}
}}
"""

_BASE = """\
// SPDX-License-Identifier: MIT
pragma solidity ^0.7.6;

abstract contract {name} {{
    address internal owner;
    event OwnerSet(address indexed owner);

    modifier onlyOwner() {{
        require(msg.sender == owner, "not owner");
        _;
    }}

    function setOwner(address next) public onlyOwner {{
        owner = next;
        emit OwnerSet(next);
    }}
}}
"""


def generate_corpus(root: Path, contracts: int = 600, seed: int = 0) -> list[Path]:
    """Write a DApp-like tree of ``contracts`` declarations, one per file.

    Roughly a tenth are interfaces, a twentieth libraries, one abstract base,
    and the rest concrete contracts calling each other through typed state
    variables, casts, library calls, modifiers, events and ``this``.
    """
    rng = random.Random(seed)
    root = Path(root)
    n_iface = max(1, contracts // 10)
    n_lib = max(1, contracts // 20)
    n_contract = max(1, contracts - n_iface - n_lib - 1)
    written: list[Path] = []

    def put(rel: str, text: str) -> None:
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        written.append(path)

    put("base/Base.sol", _BASE.format(name="Base"))
    for i in range(n_iface):
        put(f"interfaces/IPeer{i}.sol", _INTERFACE.format(name=f"IPeer{i}", idx=i))
    for i in range(n_lib):
        put(f"libraries/Math{i}.sol", _LIBRARY.format(name=f"Math{i}", idx=i))
    for i in range(n_contract):
        iidx = rng.randrange(n_iface)
        lidx = rng.randrange(n_lib)
        oidx = rng.randrange(n_contract)
        imports = "\n".join(
            f'import "{p}";'
            for p in ("../base/Base.sol", f"../interfaces/IPeer{iidx}.sol", f"../libraries/Math{lidx}.sol")
        )
        put(
            f"contracts/group{i % 12}/Unit{i}.sol",
            _CONTRACT.format(
                imports=imports,
                name=f"Unit{i}",
                base="Base",
                idx=i,
                iface=f"IPeer{iidx}",
                iidx=iidx,
                lib=f"Math{lidx}",
                lidx=lidx,
                other=f"Unit{oidx}",
                oidx=oidx,
            ),
        )
    return written
