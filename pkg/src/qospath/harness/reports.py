"""CSV and JSON renderings of optimizer runs, oracle catalogs and comparisons.

Every writer is a pure function of its inputs, so identical runs give
byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict

from ..encoding import path_text
from ..ga import GaConfig, GenerationReport
from ..oracle import PathCatalog
from ..qos import QosRequirement
from ..sa import SaConfig, SaResult
from ..topology import format_number

GENERATION_COLUMNS = ("generation", "chromosome", "ab", "fitness", "nodes_visited", "selection_probability")
TRACE_COLUMNS = ("current", "candidate", "delta", "stall_remaining", "temperature", "accepted")
CATALOG_COLUMNS = ("chromosome", "ab", "fitness", "nodes_visited")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _num(x):
    return format_number(x) if math.isfinite(x) else str(x)


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(payload) -> str:
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"


def qos_dict(req: QosRequirement) -> dict:
    return {
        "demand": req.required_bandwidth,
        "max_delay": req.max_delay,
        "max_jitter": req.max_jitter,
        "max_loss": req.max_loss,
    }


def generations_csv(reports: list[GenerationReport]) -> str:
    return _csv(
        GENERATION_COLUMNS,
        (
            (
                rep.generation_index,
                path_text(row.chromosome),
                _num(row.ab),
                _num(row.fitness),
                row.nodes_visited,
                _num(row.selection_probability),
            )
            for rep in reports
            for row in rep.rows
        ),
    )


def ga_json(reports, cfg: GaConfig, req: QosRequirement, selected, alternate) -> str:
    return dumps(
        {
            "method": "ga",
            "parameters": asdict(cfg),
            "qos": qos_dict(req),
            "selected": path_text(selected),
            "alternate": path_text(alternate) if alternate else None,
            "generations": [
                {
                    "generation": rep.generation_index,
                    "rows": [
                        {
                            "chromosome": path_text(row.chromosome),
                            "ab": row.ab,
                            "fitness": row.fitness,
                            "nodes_visited": row.nodes_visited,
                            "selection_probability": row.selection_probability,
                        }
                        for row in rep.rows
                    ],
                    "operator_log": [
                        {
                            "operator": rec.operator,
                            "parents": [path_text(p) for p in rec.parents],
                            "offspring": [path_text(p) for p in rec.offspring],
                            "kept": [path_text(p) for p in rec.kept],
                        }
                        for rec in rep.operator_log
                    ],
                }
                for rep in reports
            ],
        }
    )


def sa_header(cfg: SaConfig) -> str:
    return (
        f"T={format_number(cfg.initial_temperature)} Tstop={format_number(cfg.stop_temperature)} "
        f"N={cfg.inner_iterations} alpha={format_number(cfg.cooling_factor)} ts={cfg.stall_limit}"
    )


def trace_csv(result: SaResult) -> str:
    return _csv(
        TRACE_COLUMNS,
        (
            (
                path_text(row.current),
                path_text(row.candidate),
                _num(row.delta),
                row.stall_remaining,
                _num(row.temperature),
                int(row.accepted),
            )
            for row in result.trace
        ),
    )


def sa_json(result: SaResult, cfg: SaConfig, req: QosRequirement) -> str:
    return dumps(
        {
            "method": "sa",
            "header": sa_header(cfg),
            "parameters": asdict(cfg),
            "qos": qos_dict(req),
            "selected": path_text(result.best),
            "final_state": path_text(result.final_state),
            "objective_pool": [path_text(c) for c in result.pool],
            "objective_denominator": result.objective.denominator,
            "temperatures": result.temperatures,
            "trace": [
                {
                    "current": path_text(row.current),
                    "candidate": path_text(row.candidate),
                    "delta": row.delta,
                    "stall_remaining": row.stall_remaining,
                    "temperature": row.temperature,
                    "accepted": row.accepted,
                }
                for row in result.trace
            ],
        }
    )


def catalog_csv(catalog: PathCatalog) -> str:
    return _csv(
        CATALOG_COLUMNS,
        ((path_text(e.chromosome), _num(e.ab), _num(e.fitness), e.nodes_visited) for e in catalog.entries),
    )


def catalog_json(catalog: PathCatalog, optimum) -> str:
    return dumps(
        {
            "optimum": path_text(optimum),
            "qos": qos_dict(catalog.req),
            "paths": [
                {"chromosome": path_text(e.chromosome), "ab": e.ab, "fitness": e.fitness, "nodes_visited": e.nodes_visited}
                for e in catalog.entries
            ],
        }
    )
