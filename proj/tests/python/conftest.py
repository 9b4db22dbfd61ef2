import os
from pathlib import Path

import pytest

ROOT = Path(os.environ.get("DIFFELIM_ROOT", Path(__file__).resolve().parents[2]))


@pytest.fixture
def fixtures():
    return ROOT / "fixtures"


@pytest.fixture
def schema_dir():
    return ROOT / "schema"


@pytest.fixture
def cli():
    path = os.environ.get("DIFFELIM_CLI", str(ROOT / "build" / "diffelim"))
    if not Path(path).exists():
        pytest.skip("command-line tool not built")
    return path
