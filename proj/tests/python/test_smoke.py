import pytest

import triq


def test_unit_index_golden():
    assert triq.unit_index(41, 13) == 16
    assert triq.unit_index(41, 29) == 32


def test_analyze_report():
    rep = triq.analyze(41, 13)
    assert rep["schema"] == 1
    assert rep["qK"] == "16"
    assert rep["case"]["theorem"] == "MT4"
    assert len(rep["generators"]) == 7


def test_verified_index_matches():
    assert triq.verified_index(5, 13) == triq.unit_index(5, 13) == 32


def test_norm_signature():
    assert triq.norm_signature(41, 13) == (-1, -1, -1, -1)


def test_fundamental_unit():
    assert triq.fundamental_unit(5) == (1, 1, 2, -1)
    assert triq.fundamental_unit(34) == (35, 6, 1, 1)


def test_preconditions():
    with pytest.raises(triq.PreconditionError):
        triq.unit_index(7, 13)
    with pytest.raises(triq.PreconditionError):
        triq.unit_index(41, 41)
