from typing import List, Tuple
import asyncio
import time

from .dataset import Dataset
from .models import ComparisonReport, EvaluateRequest, RunReport
from .pipeline import evaluate

METHODS: Tuple[str, ...] = ("none", "smote", "adasyn")

async def evaluate_method(ds: Dataset, request: EvaluateRequest, method: str) -> RunReport:
    """Evaluate one resampling method on its own worker thread"""
    run_request = request.model_copy(update={"method": method})
    evaluation = await asyncio.to_thread(evaluate, ds, run_request)
    return evaluation.report

async def process_comparison(ds: Dataset, request: EvaluateRequest) -> ComparisonReport:
    """Run every method concurrently on the same split and pick the winners"""
    start_time = time.time()

    # Same seed for every method, so all runs share one split and one test partition
    tasks = [evaluate_method(ds, request, method) for method in METHODS]
    runs: List[RunReport] = list(await asyncio.gather(*tasks))

    # max() keeps the first of equal scores, i.e. the simpler method
    best_by_f1 = max(runs, key=lambda run: run.measures.f1).method
    best_by_auc = max(runs, key=lambda run: run.measures.auc_roc).method

    processing_time = (time.time() - start_time) * 1000

    return ComparisonReport(
        runs=runs,
        best_by_f1=best_by_f1,
        best_by_auc=best_by_auc,
        processing_time_ms=round(processing_time, 2)
    )

def compare(ds: Dataset, request: EvaluateRequest) -> ComparisonReport:
    return asyncio.run(process_comparison(ds, request))
