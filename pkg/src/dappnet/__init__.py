"""Static call-graph extraction for Solidity DApps and network analysis of the result."""
from .extract import CallRecord, extract_calls
from .graph import GraphOptions, build_bipartite, project_contracts, project_functions
from .lexer import LexError, tokenize
from .parser import ParseError, parse_source, parse_unit
from .pipeline import ScanConfig, ScanReport, scan, scan_sources
from .resolve import bind_types, build_registry, resolve_member

__all__ = [
    "CallRecord",
    "GraphOptions",
    "LexError",
    "ParseError",
    "ScanConfig",
    "ScanReport",
    "bind_types",
    "build_bipartite",
    "build_registry",
    "extract_calls",
    "parse_source",
    "parse_unit",
    "project_contracts",
    "project_functions",
    "resolve_member",
    "scan",
    "scan_sources",
    "tokenize",
]
