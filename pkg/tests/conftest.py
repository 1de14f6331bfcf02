import json
from fractions import Fraction
from pathlib import Path

import pytest


@pytest.fixture(scope="session")
def fx():
    return json.loads((Path(__file__).parent / "fixtures.json").read_text())


def fraction_of(record: dict) -> Fraction:
    return Fraction(int(record["num"]), int(record["den"]))
