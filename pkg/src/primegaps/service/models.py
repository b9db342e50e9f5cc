"""Request/response schemas for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class ChampionReportModel(BaseModel):
    x: int
    n_star: int
    champions: list[int]
    total_gaps: int


class ChampionsRequest(BaseModel):
    limit: int = Field(ge=3)
    checkpoints: Optional[list[int]] = None
    workers: Optional[int] = Field(default=None, ge=1)
    segment_size: Optional[int] = Field(default=None, ge=64)
    resume_path: Optional[str] = None
    max_segments: Optional[int] = Field(default=None, ge=1)


class ChampionsResponse(BaseModel):
    limit: int
    completed: bool
    resumed_from: Optional[int] = None
    reports: list[ChampionReportModel]
    histogram: list[tuple[int, int]]


class SeriesResponse(BaseModel):
    value: float
    error_bound: float
    truncation_prime: int


class PredictResponse(BaseModel):
    x: int
    d: int
    model: str
    predicted: float
    observed: Optional[int] = None
    ratio: Optional[float] = None


class CheckModel(BaseModel):
    name: str
    passed: bool
    details: dict


class VerifyRequest(BaseModel):
    suite: Literal["table1", "lemma1", "sandwich", "bounds"]
    k: Optional[int] = Field(default=None, ge=2, le=7)
    x: Optional[int] = Field(default=None, ge=3)
    workers: Optional[int] = Field(default=None, ge=1)


class VerifyResponse(BaseModel):
    suite: str
    passed: bool
    checks: list[CheckModel]


class ThetaResponse(BaseModel):
    y: float
    log_y: float
    floor_index: int
    floor_value: int
    theta_index: int
    p_n: int
    p_next: int
    theta_p_n: float
    theta_p_next: float
    consistent: bool


class HealthResponse(BaseModel):
    status: str
    version: str
