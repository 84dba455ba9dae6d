"""Batch experiments over (n, p) grids with reproducible seeds.

A config names a grid of cells, a mode and a seed rule. Each (cell, seed)
pair becomes one :class:`ResultRow`; rows are sorted by (cell, seed) before
they are written, so tables are identical across runs and worker counts
apart from the ``wall_time`` column.

Seed rule: with ``seed_list`` set those seeds are used for every cell;
otherwise cell ``i`` uses ``derive_seed(master_seed, EXPERIMENT, i, k)`` for
``k < seeds``.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Iterable, Sequence

from . import seeding
from .cover import GREEDY, desk_split_plan, hitting_time_experiment, optimal_cover, verify_cover
from .errors import CoverFailure, ParameterError
from .graph import Graph, complete_graph, cycle_graph, generate_gnp
from .hamilton import SearchBudget, pack_hamilton_cycles
from .pseudorandom import PASS, SAMPLED, check_pseudorandom

MODES = ("cover", "pack", "survey", "hitting-time")
FAMILIES = ("gnp", "cycle", "complete")
SUCCESS, FAIL, EXHAUSTED = "success", "fail", "exhausted"


@dataclass(frozen=True)
class ExperimentConfig:
    grid: tuple[tuple[int, float], ...] = ()
    mode: str = "cover"
    family: str = "gnp"
    seeds: int = 1
    seed_list: tuple[int, ...] = ()
    master_seed: int = 0
    strategy: str = "auto"
    desk_scale: bool = True
    time_cap: int = 60_000
    max_rotations: int = 10_000
    workers: int = 1
    csv_path: str = ""
    json_path: str = ""
    summary_path: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.family not in FAMILIES:
            raise ParameterError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.seeds < 0 or self.workers < 1:
            raise ParameterError("seeds must be >= 0 and workers >= 1")
        for n, p in self.grid:
            if n < 1 or not 0 <= p <= 1:
                raise ParameterError(f"bad grid cell n={n}, p={p}")

    def cell_seeds(self, index: int) -> list[int]:
        if self.seed_list:
            return list(self.seed_list)
        return [seeding.derive_seed(self.master_seed, seeding.EXPERIMENT, index, k) for k in range(self.seeds)]

    @property
    def budget(self) -> SearchBudget:
        return SearchBudget(max_rotations=self.max_rotations, time_cap=self.time_cap)


def cell_id(n: int, p: float) -> str:
    return f"n={n},p={p:g}"


def parse_grid(text: str) -> tuple[tuple[int, float], ...]:
    """``"64:0.3, 128:0.5"`` or ``"64,128 x 0.3,0.5"`` (cartesian product)."""
    text = text.strip()
    if not text:
        return ()
    if "x" in text:
        ns, ps = text.split("x", 1)
        return tuple((int(n), float(p)) for n in ns.split(",") if n.strip() for p in ps.split(",") if p.strip())
    cells = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        n, sep, p = item.partition(":")
        if not sep:
            raise ParameterError(f"grid cell {item!r} is not of the form n:p")
        cells.append((int(n), float(p)))
    return tuple(cells)


_INT_KEYS = {"seeds", "master_seed", "time_cap", "max_rotations", "workers"}
_KEY_ALIASES = {"csv": "csv_path", "json": "json_path", "summary": "summary_path"}


def config_from_mapping(values: dict[str, str], base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Build a config from string values (INI entries or CLI overrides)."""
    known = {f.name for f in fields(ExperimentConfig)}
    kwargs: dict = {}
    for raw_key, raw in values.items():
        key = _KEY_ALIASES.get(raw_key.replace("-", "_"), raw_key.replace("-", "_"))
        if key not in known:
            raise ParameterError(f"unknown config key {raw_key!r}")
        raw = str(raw).strip()
        try:
            if key == "grid":
                kwargs[key] = parse_grid(raw)
            elif key == "seed_list":
                kwargs[key] = tuple(int(s) for s in raw.split(",") if s.strip())
            elif key == "desk_scale":
                kwargs[key] = raw.lower() in ("1", "true", "yes", "on")
            elif key in _INT_KEYS:
                kwargs[key] = int(raw)
            else:
                kwargs[key] = raw
        except ValueError as exc:
            raise ParameterError(f"bad value for {raw_key}: {raw!r}") from exc
    return replace(base or ExperimentConfig(), **kwargs)


def load_config(path: str, overrides: dict[str, str] | None = None) -> ExperimentConfig:
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ParameterError(f"cannot parse config {path}: {exc}") from exc
    section = parser["experiment"] if parser.has_section("experiment") else parser.defaults()
    values = dict(section)
    values.update(overrides or {})
    return config_from_mapping(values)


@dataclass(frozen=True)
class ResultRow:
    cell: str
    n: int
    p: float
    seed: int
    mode: str
    outcome: str
    size: int | None
    bound: int | None
    optimal: bool
    strategy: str
    wall_time: float = field(compare=False)
    detail: str = ""

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("wall_time")
        return d


COLUMNS = [f.name for f in fields(ResultRow)]


def make_graph(family: str, n: int, p: float, seed: int) -> Graph:
    if family == "cycle":
        return cycle_graph(n)
    if family == "complete":
        return complete_graph(n)
    return generate_gnp(n, p, seed)


def run_one(config: ExperimentConfig, n: int, p: float, seed: int) -> ResultRow:
    start = time.perf_counter()
    cell = cell_id(n, p)
    mode = config.mode
    outcome, size, bound, optimal, strategy, detail = FAIL, None, None, False, "", ""
    if mode == "hitting-time":
        res = hitting_time_experiment(n, seed, config.budget)
        size, bound = res.t_cover_estimate, res.t_hamiltonian
        outcome = SUCCESS if res.t_hamiltonian is not None else EXHAUSTED
        optimal = res.t_cover_estimate is not None and res.t_cover_estimate == res.t_hamiltonian
        strategy = GREEDY
    else:
        g = make_graph(config.family, n, p, seed)
        if mode == "cover":
            bound = math.ceil(g.max_degree / 2)
            try:
                plan = None
                if config.family == "gnp" and config.desk_scale and 0 < p < 1 and n >= 3:
                    plan = desk_split_plan(n, p)
                cert = optimal_cover(g, seed, config.budget, config.strategy, plan)
            except CoverFailure as exc:
                outcome, detail = EXHAUSTED, f"{exc.stage}: {exc}"
            else:
                check = verify_cover(g, cert)
                outcome = SUCCESS if check else FAIL
                size, optimal, strategy = len(cert.cycles), cert.optimal, cert.strategy
                detail = check.detail
        elif mode == "pack":
            bound = g.min_degree // 2 if g.n >= 3 else 0
            cycles = pack_hamilton_cycles(g, bound, config.budget, seed)
            size = len(cycles)
            optimal = size == bound
            outcome = SUCCESS if all(c.verify(g) for c in cycles) else FAIL
        else:
            reports = check_pseudorandom(g, p, mode=SAMPLED, seed=seed)
            size = sum(r.verdict == PASS for r in reports)
            bound = len(reports)
            optimal = size == bound
            outcome = SUCCESS
            detail = " ".join(f"{r.property}:{r.verdict}" for r in reports)
    wall = time.perf_counter() - start
    return ResultRow(cell, n, p, seed, mode, outcome, size, bound, optimal, strategy, round(wall, 4), detail)


def _run_job(job):
    return run_one(*job)


def _check_writable(paths: Iterable[str]) -> None:
    for path in paths:
        if not path:
            continue
        directory = os.path.dirname(os.path.abspath(path)) or "."
        if not os.path.isdir(directory) or not os.access(directory, os.W_OK):
            raise OSError(f"cannot write output {path}: directory {directory} is not writable")
        if os.path.exists(path) and not os.access(path, os.W_OK):
            raise OSError(f"cannot write output {path}")


def run_experiment(config: ExperimentConfig) -> list[ResultRow]:
    """One row per (cell, seed), sorted by (cell index, seed)."""
    _check_writable([config.csv_path, config.json_path, config.summary_path])
    jobs = []
    order = {}
    for i, (n, p) in enumerate(config.grid):
        order[cell_id(n, p)] = i
        for seed in config.cell_seeds(i):
            jobs.append((config, n, p, seed))
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_run_job, jobs))
    else:
        rows = [_run_job(job) for job in jobs]
    rows.sort(key=lambda r: (order[r.cell], r.seed))
    if config.csv_path:
        with open(config.csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(rows_to_csv(rows))
    summary = summarize(rows)
    if config.json_path:
        with open(config.json_path, "w", encoding="utf-8") as fh:
            json.dump(summary.to_json(rows), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if config.summary_path:
        with open(config.summary_path, "w", encoding="utf-8") as fh:
            fh.write(summary.to_text())
    return rows


def rows_to_csv(rows: Sequence[ResultRow], timing: bool = True) -> str:
    buf = io.StringIO()
    cols = COLUMNS if timing else [c for c in COLUMNS if c != "wall_time"]
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_dict(timing))
    return buf.getvalue()


@dataclass(frozen=True)
class CellSummary:
    cell: str
    runs: int
    successes: int
    exhausted: int
    failed: int
    mean_size: float | None
    min_size: int | None
    max_size: int | None
    optimal_fraction: float | None
    median_wall_time: float

    @property
    def success_rate(self) -> float:
        return self.successes / self.runs if self.runs else 0.0


@dataclass(frozen=True)
class Summary:
    cells: tuple[CellSummary, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        names = [f.name for f in fields(CellSummary)] + ["success_rate"]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(names)
        for c in self.cells:
            writer.writerow([*(getattr(c, f.name) for f in fields(CellSummary)), c.success_rate])
        return buf.getvalue()

    def to_json(self, rows: Sequence[ResultRow] = ()) -> dict:
        out = {"schema": 1, "cells": [{**asdict(c), "success_rate": c.success_rate} for c in self.cells]}
        if rows:
            out["rows"] = [r.to_dict() for r in rows]
        return out

    def to_text(self) -> str:
        lines = [f"{'cell':<18} {'runs':>5} {'ok':>5} {'exh':>5} {'size(mean/min/max)':>20} {'opt%':>6} {'med s':>8}"]
        for c in self.cells:
            sizes = "-" if c.mean_size is None else f"{c.mean_size:.2f}/{c.min_size}/{c.max_size}"
            opt = "-" if c.optimal_fraction is None else f"{100 * c.optimal_fraction:.1f}"
            lines.append(f"{c.cell:<18} {c.runs:>5} {c.successes:>5} {c.exhausted:>5} {sizes:>20} {opt:>6} "
                         f"{c.median_wall_time:>8.3f}")
        return "\n".join(lines) + "\n"


def summarize(rows: Sequence[ResultRow]) -> Summary:
    """Per-cell aggregates in first-appearance order.

    Size statistics and the optimal fraction use successful rows only;
    exhausted and failed rows are counted separately.
    """
    cells: dict[str, list[ResultRow]] = {}
    for r in rows:
        cells.setdefault(r.cell, []).append(r)
    out = []
    for name, group in cells.items():
        ok = [r for r in group if r.outcome == SUCCESS]
        sizes = [r.size for r in ok if r.size is not None]
        out.append(CellSummary(
            cell=name,
            runs=len(group),
            successes=len(ok),
            exhausted=sum(r.outcome == EXHAUSTED for r in group),
            failed=sum(r.outcome == FAIL for r in group),
            mean_size=statistics.fmean(sizes) if sizes else None,
            min_size=min(sizes) if sizes else None,
            max_size=max(sizes) if sizes else None,
            optimal_fraction=sum(r.optimal for r in ok) / len(ok) if ok else None,
            median_wall_time=statistics.median(r.wall_time for r in group),
        ))
    return Summary(tuple(out))

