"""Pydantic request/response models shared by the HTTP service and the CLI.

Requests reject unknown keys so a typo in a config file fails loudly, and
every response echoes the fully resolved request so output artifacts are
self-describing.
"""

from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

MAX_SEED = 2**64 - 1
HALF_PI = math.pi / 2.0


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default=0, ge=0, le=MAX_SEED)


class WalkRequest(_Request):
    steps: int = Field(ge=0)
    theta: float = HALF_PI
    alpha: float = 0.0
    beta: float = 0.0
    p_spin: float = Field(default=0.0, ge=0.0, le=1.0)
    p_pos: float = Field(default=0.0, ge=0.0, le=1.0)
    trajectories: Optional[int] = Field(default=None, ge=1)
    half_width: Optional[int] = Field(default=None, ge=1)


class WidthScanRequest(_Request):
    max_steps: int = Field(ge=0)
    theta: float = HALF_PI
    p_spin: float = Field(default=0.0, ge=0.0, le=1.0)


class ElectricRequest(_Request):
    steps: int = Field(ge=0)
    phi: float
    theta: float = HALF_PI
    half_width: Optional[int] = Field(default=None, ge=1)


class LGRequest(_Request):
    thetas: list[float] = Field(min_length=1)
    mode: Literal["negative", "projective", "none"] = "negative"
    p_spin: float = Field(default=0.0, ge=0.0, le=1.0)
    p_pos: float = Field(default=0.0, ge=0.0, le=1.0)


class HomRequest(_Request):
    overlap: float = Field(ge=0.0, le=1.0)
    events: int = Field(ge=1)
    survival: float = Field(default=0.91, ge=0.0, le=1.0)
    parity_eff: float = Field(default=1.0, ge=0.0, le=1.0)


class CollideRequest(_Request):
    p: float = Field(ge=0.0, le=1.0)
    pcoll: list[float] = Field(min_length=1)
    events: int = Field(ge=1)
    p_known: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    @field_validator("pcoll")
    @classmethod
    def _pcoll_in_unit_interval(cls, values: list[float]) -> list[float]:
        for v in values:
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"pcoll entries must lie in [0, 1], got {v}")
        return values


class _Response(BaseModel):
    version: str
    command: str


class DistributionRow(BaseModel):
    x: int
    probability: float


class WalkResponse(_Response):
    config: WalkRequest
    distribution: list[DistributionRow]
    rms_width: float


class WidthRow(BaseModel):
    n: int
    rms: float


class WidthScanResponse(_Response):
    config: WidthScanRequest
    rows: list[WidthRow]


class ElectricResponse(_Response):
    config: ElectricRequest
    distribution: list[DistributionRow]
    rms_width: float


class LGRow(BaseModel):
    theta: float
    c21: float
    c32: float
    c31: float
    k: float


class LGResponse(_Response):
    config: LGRequest
    rows: list[LGRow]


class HomCounts(BaseModel):
    both_seen: int
    one_seen: int
    none_seen: int
    anti_bunched_seen: int


class HomResponse(_Response):
    config: HomRequest
    p_same_site: float
    p_diff_site: float
    counts: HomCounts
    z_score: float


class CollideRow(BaseModel):
    point: int
    true_pcoll: float
    estimate: float
    ci_low: float
    ci_high: float


class CollideResponse(_Response):
    config: CollideRequest
    rows: list[CollideRow]
