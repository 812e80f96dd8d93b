"""Canonical text rendering of run results.

Files written by the CLI are a bit-exact contract: UTF-8, LF line
endings, ``.`` decimal separator, 12 significant digits, and a comment
header embedding the artifact version, the fully resolved config, and the
seed, so identical requests always produce identical bytes.
"""

from __future__ import annotations

import json

from .schemas import (
    CollideResponse,
    ElectricResponse,
    HomResponse,
    LGResponse,
    WalkResponse,
    WidthScanResponse,
)

__all__ = [
    "fmt",
    "distribution_csv",
    "widthscan_csv",
    "lg_csv",
    "collide_csv",
    "walk_sidecar_json",
    "hom_json",
]


def fmt(value: float) -> str:
    """12-significant-digit rendering with negative zero normalized."""
    v = float(value)
    if v == 0.0:
        v = 0.0
    return f"{v:.12g}"


def _canonical_config(response) -> str:
    return json.dumps(response.config.model_dump(), sort_keys=True, separators=(",", ":"))


def _header(response) -> list[str]:
    return [
        f"# atomwalk {response.version}",
        f"# command: {response.command}",
        f"# config: {_canonical_config(response)}",
        f"# seed: {response.config.seed}",
    ]


def _csv(response, column_header: str, rows: list[str]) -> str:
    return "\n".join(_header(response) + [column_header] + rows) + "\n"


def distribution_csv(response: WalkResponse | ElectricResponse) -> str:
    rows = [f"{row.x},{fmt(row.probability)}" for row in response.distribution]
    return _csv(response, "x,probability", rows)


def widthscan_csv(response: WidthScanResponse) -> str:
    rows = [f"{row.n},{fmt(row.rms)}" for row in response.rows]
    return _csv(response, "n,rms", rows)


def lg_csv(response: LGResponse) -> str:
    rows = [
        f"{fmt(row.theta)},{fmt(row.c21)},{fmt(row.c32)},{fmt(row.c31)},{fmt(row.k)}"
        for row in response.rows
    ]
    return _csv(response, "theta,c21,c32,c31,k", rows)


def collide_csv(response: CollideResponse) -> str:
    rows = [
        f"{row.point},{fmt(row.true_pcoll)},{fmt(row.estimate)},"
        f"{fmt(row.ci_low)},{fmt(row.ci_high)}"
        for row in response.rows
    ]
    return _csv(response, "point,true_pcoll,estimate,ci_low,ci_high", rows)


def _json_document(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def walk_sidecar_json(response: WalkResponse | ElectricResponse) -> str:
    return _json_document(
        {
            "artifact": "atomwalk",
            "version": response.version,
            "command": response.command,
            "config": response.config.model_dump(),
            "seed": response.config.seed,
            "rms_width": response.rms_width,
        }
    )


def hom_json(response: HomResponse) -> str:
    return _json_document(
        {
            "artifact": "atomwalk",
            "version": response.version,
            "command": response.command,
            "config": response.config.model_dump(),
            "seed": response.config.seed,
            "p_same_site": response.p_same_site,
            "p_diff_site": response.p_diff_site,
            "counts": response.counts.model_dump(),
            "z_score": response.z_score,
        }
    )
