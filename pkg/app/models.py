from pydantic import BaseModel, Field
from typing import Optional, List, Dict, Literal

Method = Literal["none", "smote", "adasyn"]

class SmoteConfig(BaseModel):
    n_synthetic: int = Field(..., ge=0, description="Number of synthetic samples N")
    k: int = Field(5, ge=1, description="Nearest minority neighbors to choose from")
    seed: int = Field(0, description="Seed for the PCG64 draw stream")
    delta_override: Optional[float] = Field(None, ge=0.0, le=1.0, description="Fixed interpolation coefficient")

class AdasynConfig(BaseModel):
    beta: float = Field(1.0, gt=0.0, le=1.0, description="Balance level; G = beta * (n - m)")
    k: int = Field(5, ge=1, description="Neighbors for both density and generation queries")
    seed: int = Field(0, description="Seed for the PCG64 draw stream")
    delta_override: Optional[float] = Field(None, ge=0.0, le=1.0, description="Fixed interpolation coefficient")

class TrainingConfig(BaseModel):
    learning_rate: float = Field(0.1, gt=0.0, description="Fixed gradient descent step")
    epochs: int = Field(1000, ge=1, description="Full-batch iterations")
    seed: int = Field(0, description="Recorded for provenance; zero initialization needs no randomness")

class EvaluateRequest(BaseModel):
    method: Method = Field("none", description="Resampling applied to the training partition")
    label_column: str = Field(..., description="Name of the label column")
    positive_label: str = Field(..., description="Minority/positive class value")
    train_fraction: float = Field(0.8, gt=0.0, lt=1.0, description="Share of each class used for training")
    seed: int = Field(42, description="Seed for the split and the resampler")
    k: int = Field(5, ge=1, description="Nearest neighbors for SMOTE/ADASYN")
    n_synthetic: Optional[int] = Field(None, ge=0, description="SMOTE N; defaults to balancing the train partition")
    beta: float = Field(1.0, gt=0.0, le=1.0, description="ADASYN balance level")
    delta_override: Optional[float] = Field(None, ge=0.0, le=1.0)
    threshold: float = Field(0.5, gt=0.0, lt=1.0, description="Decision threshold on predicted scores")
    training: TrainingConfig = Field(default_factory=TrainingConfig)

class ClassCounts(BaseModel):
    minority: int
    majority: int

class Measures(BaseModel):
    accuracy: float
    precision: float
    recall: float
    f1: float
    auc_roc: float
    auc_single_point: float

class RunReport(BaseModel):
    method: Method
    seed: int
    train_fraction: float
    k: int
    before: ClassCounts
    after: ClassCounts
    generated: int
    test: ClassCounts
    measures: Measures
    degenerate: List[str] = Field(default_factory=list, description="Measures whose denominator was zero")
    final_loss: float
    timings_ms: Dict[str, float] = Field(default_factory=dict)

class ComparisonReport(BaseModel):
    runs: List[RunReport]
    best_by_f1: Method
    best_by_auc: Method
    processing_time_ms: float
