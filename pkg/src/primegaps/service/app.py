"""HTTP service exposing the sieve, series, and verification machinery."""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import CheckpointError, PrecisionError, ResourceLimitError
from ..gaps import gap_histogram
from ..predict import predicted_count
from ..primes import SieveConfig
from ..primorials import theta_characterization
from ..runner import run_champions, run_verify
from ..series import (
    DEFAULT_TRUNCATION,
    TripleConfig,
    singular_series,
    triple_singular_series,
    twin_prime_constant,
)
from .models import (
    ChampionReportModel,
    ChampionsRequest,
    ChampionsResponse,
    HealthResponse,
    PredictResponse,
    SeriesResponse,
    ThetaResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="primegaps", version=__version__)

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(OverflowError)
    async def _overflow_error(_: Request, exc: OverflowError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ResourceLimitError)
    async def _resource_error(_: Request, exc: ResourceLimitError) -> JSONResponse:
        return JSONResponse(status_code=413, content={"detail": str(exc)})

    @app.exception_handler(CheckpointError)
    async def _checkpoint_error(_: Request, exc: CheckpointError) -> JSONResponse:
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(PrecisionError)
    async def _precision_error(_: Request, exc: PrecisionError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/champions", response_model=ChampionsResponse)
    def champions_run(request: ChampionsRequest) -> ChampionsResponse:
        result = run_champions(
            limit=request.limit,
            checkpoints=request.checkpoints,
            workers=request.workers,
            segment_size=request.segment_size,
            resume_path=request.resume_path,
            max_segments=request.max_segments,
        )
        return ChampionsResponse(
            limit=result.limit,
            completed=result.completed,
            resumed_from=result.resumed_from,
            reports=[ChampionReportModel(**r.to_dict()) for r in result.reports],
            histogram=[(d, result.histogram.counts[d]) for d in sorted(result.histogram.counts)],
        )

    @app.get("/constant", response_model=SeriesResponse)
    def constant(truncation: int = Query(default=DEFAULT_TRUNCATION, ge=3)) -> SeriesResponse:
        return SeriesResponse(**twin_prime_constant(truncation).to_dict())

    @app.get("/series", response_model=SeriesResponse)
    def series(d: int, truncation: int = Query(default=DEFAULT_TRUNCATION, ge=3)) -> SeriesResponse:
        return SeriesResponse(**singular_series(d, truncation).to_dict())

    @app.get("/series/triple", response_model=SeriesResponse)
    def series_triple(
        d: int,
        d_prime: int,
        truncation: Optional[int] = Query(default=None, ge=3),
    ) -> SeriesResponse:
        value = triple_singular_series(TripleConfig(d=d, d_prime=d_prime), truncation)
        return SeriesResponse(**value.to_dict())

    @app.get("/predict", response_model=PredictResponse)
    def predict(
        limit: int,
        d: int,
        model: str = Query(default="asymptotic", pattern="^(asymptotic|integral)$"),
        observed: bool = False,
        workers: Optional[int] = Query(default=None, ge=1),
    ) -> PredictResponse:
        prediction = predicted_count(limit, d, model)
        response = PredictResponse(**prediction.to_dict())
        if observed:
            config = SieveConfig(limit, worker_count=workers) if workers else None
            hist = gap_histogram(limit, config)
            count = hist.count(d)
            response.observed = count
            if prediction.predicted_count > 0:
                response.ratio = count / prediction.predicted_count
        return response

    @app.post("/verify", response_model=VerifyResponse)
    def verify(request: VerifyRequest) -> VerifyResponse:
        report = run_verify(request.suite, k=request.k, x=request.x, workers=request.workers)
        return VerifyResponse(**report.to_dict())

    @app.get("/theta", response_model=ThetaResponse)
    def theta(x: float = Query(ge=2)) -> ThetaResponse:
        return ThetaResponse(**theta_characterization(x).to_dict())

    return app


app = create_app()
