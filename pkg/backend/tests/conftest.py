"""
Shared fixtures: sample tables, sample circuits and an API client.
"""
from random import Random

import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.models.truth_table import TruthTable
from app.services.truth_table import parse_hex

# 6-input tables with hand-checked signatures
HALF_SPLIT = "FFFF3777C8880000"
MIXED_GROUPS = "5DAE51AE5DA251A2"

# x1 AND x2 feeding a second AND with x3
TWO_LEVEL_AAG = "aag 5 3 0 1 2\n2\n4\n6\n10\n8 2 4\n10 8 6\n"
SINGLE_AND_AAG = "aag 3 2 0 1 1\n2\n4\n6\n6 4 2\n"


@pytest.fixture
def half_split() -> TruthTable:
    return parse_hex(HALF_SPLIT)


@pytest.fixture
def mixed_groups() -> TruthTable:
    return parse_hex(MIXED_GROUPS)


@pytest.fixture
def rng() -> Random:
    return Random(1234)


@pytest.fixture
def two_input_tables() -> list[TruthTable]:
    return [TruthTable(2, bits) for bits in range(16)]


@pytest.fixture
def three_input_tables() -> list[TruthTable]:
    return [TruthTable(3, bits) for bits in range(256)]


@pytest.fixture
def client() -> TestClient:
    return TestClient(app)
