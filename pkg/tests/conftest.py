"""
Shared fixtures for the modkernel test suite
"""
import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "python"))

from utils.config import KernelConfig


DELTA_COEFFICIENTS = [
    1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
    534612, -370944, -577738, 401856, 1217160, 987136, -6905934, 2727432, 10661420,
]


@pytest.fixture
def delta_coefficients() -> list:
    """tau(1..19)"""
    return list(DELTA_COEFFICIENTS)


@pytest.fixture
def kernel_config() -> KernelConfig:
    return KernelConfig()


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    """A config file that keeps the log file inside tmp_path"""
    path = tmp_path / "modkernel.json"
    path.write_text(json.dumps({"logDir": str(tmp_path / "logs"), "logLevel": "warning"}))
    return path
