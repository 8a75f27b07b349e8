import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from hyperladder.families import make_family

# keep the property tests inside the suite's time budget
settings.register_profile("suite", max_examples=40, deadline=None)
settings.load_profile("suite")

DATA = Path(__file__).resolve().parent / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def family_of(entry):
    return make_family(entry["family"], {k: Fraction(v) for k, v in entry["params"].items()})


def case_id(entry):
    inner = ",".join(f"{k}={v}" for k, v in sorted(entry["params"].items()))
    return f"{entry['family']}({inner})" if inner else entry["family"]


POLY_CASES = load("oracle_polys.json")
NORM_CASES = load("oracle_norms.json")


@pytest.fixture(params=POLY_CASES, ids=case_id)
def poly_case(request):
    return request.param


@pytest.fixture(params=NORM_CASES, ids=case_id)
def norm_case(request):
    return request.param
