import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from morphtip import FingertipConfig, LinkageParams


@pytest.fixture
def params() -> LinkageParams:
    return LinkageParams()


@pytest.fixture
def cfg() -> FingertipConfig:
    return FingertipConfig()
