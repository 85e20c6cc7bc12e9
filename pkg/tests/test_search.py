import pytest

from qdomains.algebra import X, Y, proportional
from qdomains.intertwine import (
    DeformedMedium,
    build_bundle,
    check_intertwining,
    search_deformed,
)

TARGET = X**2 * (Y**2 * 5 - X**2)


def test_small_search_finds_the_target():
    result = search_deformed(2, 4, target=TARGET)
    assert not result.exhausted
    assert DeformedMedium(kseq=[1, 4], phases=[1, 0]) in [hit.medium for hit in result.hits]
    assert all(proportional(hit.zeta, TARGET) for hit in result.hits)


def test_search_counts_candidates():
    result = search_deformed(1, 3)
    # one sine: four frequencies, two phases each
    assert result.examined == 8
    assert result.hits
    assert result.to_config()["exhausted"] is False


def test_unreachable_target_reports_exhausted_space():
    result = search_deformed(1, 2, target=X**7)
    assert result.exhausted
    assert result.hits == []
    assert result.examined == 6


@pytest.mark.slow
def test_full_search_bounds():
    result = search_deformed(3, 6, target=TARGET)
    assert not result.exhausted
    for hit in result.hits:
        assert check_intertwining(build_bundle(hit.medium), degree=6).passed


def test_axis_medium_is_the_only_linear_hit():
    result = search_deformed(1, 3, target=X)
    assert [hit.medium for hit in result.hits] == [DeformedMedium(kseq=[1], phases=[1])]
    assert proportional(result.hits[0].zeta, X)
    assert not result.exhausted
