from fastapi import FastAPI, HTTPException, Depends, File, Request, UploadFile
from fastapi.responses import Response
from fastapi.middleware.cors import CORSMiddleware
from slowapi import Limiter, _rate_limit_exceeded_handler
from slowapi.util import get_remote_address
from slowapi.errors import RateLimitExceeded
from pydantic import ValidationError
from datetime import datetime, timezone
from typing import Optional
import asyncio
import io

from .models import EvaluateRequest, RunReport, ComparisonReport, Method, TrainingConfig
from .config import settings
from .dataset import Dataset, load_csv, write_csv
from .exceptions import ResamplingError
from .pipeline import evaluate, resample
from .compare import process_comparison
from .cache import ReportCache, content_digest

# Initialize rate limiter
limiter = Limiter(key_func=get_remote_address)

report_cache = ReportCache(ttl_seconds=settings.CACHE_TTL_SECONDS)

# Initialize FastAPI application
app = FastAPI(
    title="Resampling Lab API",
    description="SMOTE and ADASYN oversampling for two-class tabular data, with a logistic baseline to measure the effect",
    version="1.0.0",
    docs_url="/docs",
    redoc_url="/redoc",
    license_info={
        "name": "MIT License",
        "url": "https://opensource.org/licenses/MIT"
    }
)

# Configure rate limiting
app.state.limiter = limiter
app.add_exception_handler(RateLimitExceeded, _rate_limit_exceeded_handler)

# Configure CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)

# ============================================================================
# DEPENDENCIES
# ============================================================================

def evaluate_params(
    label_column: str,
    positive_label: str,
    method: Method = "none",
    train_fraction: float = settings.TRAIN_FRACTION,
    seed: int = settings.RESAMPLE_SEED,
    k: int = settings.DEFAULT_K,
    n_synthetic: Optional[int] = None,
    beta: float = 1.0,
    delta_override: Optional[float] = None,
    threshold: float = settings.DECISION_THRESHOLD,
    learning_rate: float = settings.LEARNING_RATE,
    epochs: int = settings.EPOCHS,
) -> EvaluateRequest:
    """Collect query parameters into a validated request"""
    try:
        return EvaluateRequest(
            method=method,
            label_column=label_column,
            positive_label=positive_label,
            train_fraction=train_fraction,
            seed=seed,
            k=k,
            n_synthetic=n_synthetic,
            beta=beta,
            delta_override=delta_override,
            threshold=threshold,
            training=TrainingConfig(learning_rate=learning_rate, epochs=epochs),
        )
    except ValidationError as e:
        raise HTTPException(status_code=422, detail=e.errors(include_url=False))

async def _load_upload(file: UploadFile, label_column: str, positive_label: str) -> tuple[Dataset, bytes]:
    content = await file.read()
    try:
        return load_csv(io.BytesIO(content), label_column, positive_label), content
    except ResamplingError as e:
        raise HTTPException(status_code=400, detail=str(e))

# ============================================================================
# ROOT & HEALTH ENDPOINTS
# ============================================================================

@app.get(
    "/",
    summary="API Information",
    tags=["Information"],
    response_description="API information and available endpoints"
)
async def get_api_info():
    """
    Returns basic information about the Resampling Lab API and its endpoints.
    """
    return {
        "message": "Resampling Lab API",
        "version": "1.0.0",
        "description": "Synthetic minority oversampling (SMOTE, ADASYN) with before/after evaluation",
        "documentation": "/docs",
        "endpoints": {
            "resample": "POST /resample",
            "evaluate": "POST /evaluate",
            "compare": "POST /compare",
            "cache_stats": "GET /cache/stats"
        },
        "methods": ["none", "smote", "adasyn"]
    }

@app.get(
    "/health",
    summary="Health Check",
    tags=["Information"],
    response_description="Health status with timestamp"
)
async def health_check():
    return {
        "status": "healthy",
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "version": "1.0.0"
    }

# ============================================================================
# RESAMPLING ENDPOINTS
# ============================================================================

@app.post(
    "/resample",
    summary="Resample a CSV",
    tags=["Resampling"],
    response_description="The input rows followed by synthetic minority rows, as CSV"
)
async def resample_csv(
    label_column: str,
    positive_label: str,
    method: Method = "smote",
    k: int = settings.DEFAULT_K,
    seed: int = settings.RESAMPLE_SEED,
    n_synthetic: Optional[int] = None,
    beta: float = 1.0,
    delta_override: Optional[float] = None,
    file: UploadFile = File(...)
):
    """
    Append synthetic minority samples to an uploaded CSV.

    **Parameters:**
    - **method**: smote (N samples, default balances the classes) or adasyn (G = beta * (n - m))
    - **k**: nearest minority neighbors to interpolate toward
    - **delta_override**: fixed interpolation coefficient in [0, 1]
    """
    ds, _ = await _load_upload(file, label_column, positive_label)

    try:
        result = await asyncio.to_thread(
            resample, ds, method, k=k, seed=seed, n_synthetic=n_synthetic,
            beta=beta, delta_override=delta_override
        )
    except ValidationError as e:
        raise HTTPException(status_code=422, detail=e.errors(include_url=False))
    except ResamplingError as e:
        raise HTTPException(status_code=400, detail=str(e))

    buffer = io.StringIO()
    write_csv(result.dataset, buffer)
    return Response(
        content=buffer.getvalue(),
        media_type="text/csv",
        headers={"X-Synthetic-Rows": str(len(result.samples))}
    )

@app.post(
    "/evaluate",
    response_model=RunReport,
    summary="Evaluate one resampling method",
    tags=["Evaluation"],
    response_description="Measures on the untouched test partition"
)
@limiter.limit(settings.RATE_LIMIT)
async def evaluate_csv(
    request: Request,
    params: EvaluateRequest = Depends(evaluate_params),
    file: UploadFile = File(...)
):
    """
    Split, standardize, resample the training partition, fit the logistic
    baseline and report accuracy, precision, recall, F1 and both AUC readings.
    """
    ds, content = await _load_upload(file, params.label_column, params.positive_label)

    # Check cache first
    cache_params = {"digest": content_digest(content), **params.model_dump()}
    cached = report_cache.get("evaluate", cache_params)
    if cached:
        return cached

    try:
        evaluation = await asyncio.to_thread(evaluate, ds, params)
    except ValidationError as e:
        raise HTTPException(status_code=422, detail=e.errors(include_url=False))
    except ResamplingError as e:
        raise HTTPException(status_code=400, detail=str(e))

    report_cache.set("evaluate", cache_params, evaluation.report)
    return evaluation.report

@app.post(
    "/compare",
    response_model=ComparisonReport,
    summary="Compare none, SMOTE and ADASYN",
    tags=["Evaluation"],
    response_description="One report per method plus the best method by F1 and by ROC AUC"
)
@limiter.limit(settings.RATE_LIMIT)
async def compare_csv(
    request: Request,
    params: EvaluateRequest = Depends(evaluate_params),
    file: UploadFile = File(...)
):
    ds, content = await _load_upload(file, params.label_column, params.positive_label)

    cache_params = {"digest": content_digest(content), **params.model_dump(exclude={"method"})}
    cached = report_cache.get("compare", cache_params)
    if cached:
        return cached

    try:
        comparison = await process_comparison(ds, params)
    except ValidationError as e:
        raise HTTPException(status_code=422, detail=e.errors(include_url=False))
    except ResamplingError as e:
        raise HTTPException(status_code=400, detail=str(e))

    report_cache.set("compare", cache_params, comparison)
    return comparison

# ============================================================================
# CACHE MANAGEMENT
# ============================================================================

@app.get(
    "/cache/stats",
    summary="Cache Statistics",
    tags=["Information"]
)
async def get_cache_stats():
    cleared = report_cache.clear_expired()
    return {**report_cache.get_stats(), "expired_cleared": cleared}
