import os
from pathlib import Path

import pytest

from app.dataset import load_csv, write_csv
from tests.helpers import TABLE1_CSV, imbalanced_blobs

BLOOD_TRANSFUSION_DEFAULT = Path(__file__).parent / "data" / "transfusion.data"


@pytest.fixture
def table1_path(tmp_path: Path) -> Path:
    path = tmp_path / "table1.csv"
    path.write_text(TABLE1_CSV, encoding="utf-8")
    return path


@pytest.fixture
def table1(table1_path):
    return load_csv(table1_path, "class", "No")


@pytest.fixture
def blobs_path(tmp_path: Path) -> Path:
    path = tmp_path / "blobs.csv"
    write_csv(imbalanced_blobs(seed=7), path)
    return path


@pytest.fixture
def blood_transfusion_path() -> Path:
    """The UCI Blood Transfusion Service Center CSV: tests/data/transfusion.data, or $BLOOD_TRANSFUSION_CSV."""
    location = Path(os.environ.get("BLOOD_TRANSFUSION_CSV", BLOOD_TRANSFUSION_DEFAULT))
    if not location.is_file():
        pytest.skip(f"{location} not found; place the UCI transfusion.data file there to run this check")
    return location
