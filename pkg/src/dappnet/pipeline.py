"""Directory scanning: discover, lex/parse, build the registry, extract, write CSV."""
from __future__ import annotations

import csv
import io
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import nodes as n
from .extract import CONSTRUCTOR, EXTERNAL, GLOBAL, CallRecord, extract_calls
from .graph import GraphOptions
from .lexer import LexError, tokenize
from .parser import ParseError, parse_unit
from .resolve import DeclRegistry, build_registry

log = logging.getLogger(__name__)

CSV_HEADER = ("File", "Source Contract", "Source Function", "Target Contract", "Chain")
CHAIN_SEP = "->"
WORKERS_ENV = "DAPPNET_WORKERS"


class ScanError(Exception):
    pass


@dataclass
class ScanConfig:
    inputs: Sequence[Path]
    out_dir: Path = Path(".")
    name: Optional[str] = None
    include_constructors: bool = False
    include_global: bool = False
    include_external: bool = True
    alpha: float = 0.05
    step: float = 0.02
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        self.inputs = [Path(p) for p in self.inputs]
        self.out_dir = Path(self.out_dir)
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if not 0 < self.step <= 0.5:
            raise ValueError(f"step fraction must be in (0, 0.5], got {self.step}")
        if self.workers < 1:
            raise ValueError(f"worker count must be >= 1, got {self.workers}")

    @property
    def graph_options(self) -> GraphOptions:
        return GraphOptions(self.include_constructors, self.include_global, self.include_external)

    @property
    def dapp_name(self) -> str:
        if self.name:
            return self.name
        return self.inputs[0].resolve().name if self.inputs else "dapp"

    def effective_workers(self) -> int:
        env = os.environ.get(WORKERS_ENV)
        if env:
            try:
                value = int(env)
            except ValueError:
                raise ValueError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
            if value < 1:
                raise ValueError(f"{WORKERS_ENV} must be >= 1, got {value}")
            return value
        return self.workers


@dataclass
class ScanReport:
    name: str
    files_scanned: int = 0
    files_skipped: list[tuple[str, str]] = field(default_factory=list)
    contracts: int = 0
    records: int = 0
    seconds: float = 0.0
    warnings: list[str] = field(default_factory=list)

    @property
    def files_discovered(self) -> int:
        return self.files_scanned + len(self.files_skipped)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "files_discovered": self.files_discovered,
            "files_scanned": self.files_scanned,
            "files_skipped": [{"file": f, "error": e} for f, e in self.files_skipped],
            "contracts": self.contracts,
            "records": self.records,
            "seconds": self.seconds,
            "warnings": list(self.warnings),
        }

    def summary(self) -> str:
        lines = [
            f"dapp: {self.name}",
            f"files: {self.files_scanned} scanned, {len(self.files_skipped)} skipped",
            f"contracts: {self.contracts}",
            f"records: {self.records}",
            f"seconds: {self.seconds:.3f}",
        ]
        lines += [f"skipped {f}: {e}" for f, e in self.files_skipped]
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines)


@dataclass
class ScanResult:
    records: list[CallRecord]
    report: ScanReport
    registry: DeclRegistry
    units: list[n.SourceUnit]


def discover(roots: Iterable[Path]) -> list[tuple[str, Path]]:
    """(file id, path) for every ``.sol`` file, sorted by file id."""
    found: dict[str, Path] = {}
    roots = [Path(r) for r in roots]
    for root in roots:
        if not root.exists():
            raise ScanError(f"input does not exist: {root}")
        if root.is_file():
            paths = [root] if root.suffix == ".sol" else []
            base = root.parent
        else:
            paths = [p for p in root.rglob("*.sol") if p.is_file()]
            base = root
        for p in paths:
            file_id = p.relative_to(base).as_posix()
            if len(roots) > 1:
                file_id = f"{root.name}/{file_id}"
            found.setdefault(file_id, p)
    return sorted(found.items())


def parse_file(path: Path, file_id: str) -> n.SourceUnit:
    source = Path(path).read_text(encoding="utf-8")
    return parse_unit(tokenize(source, file_id), file_id)


def _parse_job(job: tuple[str, Path]):
    file_id, path = job
    try:
        return parse_file(path, file_id), None
    except (LexError, ParseError, UnicodeDecodeError, OSError) as exc:
        return None, str(exc)


_worker_registry: Optional[DeclRegistry] = None


def _init_extractor(registry: DeclRegistry) -> None:
    global _worker_registry
    _worker_registry = registry


def _extract_job(unit: n.SourceUnit) -> list[CallRecord]:
    return extract_calls(unit, _worker_registry)


def scan_sources(config: ScanConfig) -> ScanResult:
    start = time.perf_counter()
    jobs = discover(config.inputs)
    if not jobs:
        raise ScanError(f"no .sol files found under {', '.join(map(str, config.inputs))}")
    workers = config.effective_workers()
    report = ScanReport(name=config.dapp_name)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parsed = list(pool.map(_parse_job, jobs, chunksize=8))
    else:
        parsed = [_parse_job(job) for job in jobs]

    units: list[n.SourceUnit] = []
    for (file_id, _), (unit, error) in zip(jobs, parsed):
        if unit is None:
            report.files_skipped.append((file_id, error))
            log.warning("skipping %s: %s", file_id, error)
        else:
            units.append(unit)
    report.files_scanned = len(units)

    registry = build_registry(units)
    report.warnings.extend(registry.warnings)
    report.contracts = len(registry)

    if workers > 1 and len(units) > 1:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_init_extractor, initargs=(registry,)
        ) as pool:
            per_file = list(pool.map(_extract_job, units, chunksize=8))
    else:
        per_file = [extract_calls(u, registry) for u in units]

    records = [r for file_records in per_file for r in file_records]
    report.records = len(records)
    report.seconds = time.perf_counter() - start
    return ScanResult(records, report, registry, units)


# -- CSV ---------------------------------------------------------------------


def records_to_csv(records: Iterable[CallRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            (r.file, r.source_contract, r.source_function, r.target_contract, CHAIN_SEP.join(r.chain))
        )
    return buf.getvalue()


def write_csv(records: Iterable[CallRecord], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))
    return path


def _infer_source_kind(function: str) -> str:
    if function == CONSTRUCTOR:
        return "constructor"
    if function == GLOBAL:
        return "global"
    return "function"


def read_csv(path: Path) -> list[CallRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_HEADER:
            raise ScanError(f"{path}: not a call-record CSV (bad header {header!r})")
        records = []
        for row in reader:
            if not row:
                continue
            if len(row) != 5:
                raise ScanError(f"{path}:{reader.line_num}: expected 5 columns, got {len(row)}")
            file, src, fn, tgt, chain = row
            records.append(
                CallRecord(
                    file=file,
                    source_contract=src,
                    source_function=fn,
                    target_contract=tgt,
                    chain=tuple(chain.split(CHAIN_SEP)) if chain else (),
                    rule="external" if tgt == EXTERNAL else None,
                    source_kind=_infer_source_kind(fn),
                )
            )
    return records


def scan(config: ScanConfig) -> tuple[Path, ScanResult]:
    """Scan the inputs and write ``<out_dir>/<dapp-name>.csv``."""
    result = scan_sources(config)
    csv_path = write_csv(result.records, config.out_dir / f"{config.dapp_name}.csv")
    return csv_path, result


def load_records(path: Path, config: Optional[ScanConfig] = None) -> tuple[list[CallRecord], dict[str, str]]:
    """Records from a CSV file or by scanning a directory, plus known contract kinds."""
    path = Path(path)
    if path.is_file() and path.suffix == ".csv":
        return read_csv(path), {}
    cfg = config or ScanConfig([path])
    if config is not None:
        cfg = ScanConfig(**{**config.__dict__, "inputs": [path]})
    result = scan_sources(cfg)
    kinds = {name: info.kind for name, info in result.registry.decls.items()}
    return result.records, kinds
