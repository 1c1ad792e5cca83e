import pytest

from simpcx.errors import UnsupportedSpec
from simpcx.groups import GroupSpec, normalize_chain, parse_group


@pytest.mark.parametrize("text", [
    "trivial", "free:3", "cyclic:5", "finite_abelian:2,4", "abelian:2", "abelian:1:(3,6)",
    "surface:2", "freeprod:(cyclic:2,finite_abelian:2,4,free:1)",
])
def test_text_round_trip(text):
    assert parse_group(text).to_text() == text
    assert parse_group(parse_group(text).to_text()) == parse_group(text)


@pytest.mark.parametrize("text", [
    "cyclic:1", "finite_abelian:2,3", "finite_abelian:", "surface:0", "free:-1", "abelian:x",
    "freeprod:()", "lens:3", "freeprod:(cyclic:2", "trivial:1",
])
def test_rejects(text):
    with pytest.raises(UnsupportedSpec):
        parse_group(text)


def test_derived_data():
    g = parse_group("freeprod:(cyclic:2,cyclic:3,surface:1)")
    assert g.abelian_rank == 2
    assert g.torsion == (6,) and g.torsion_order == 6
    assert not g.is_free
    assert parse_group("freeprod:(free:2,abelian:1)").is_free
    assert not parse_group("abelian:2").is_free


def test_normalize_chain():
    assert normalize_chain([2, 3]) == (6,)
    assert normalize_chain([4, 6, 1]) == (2, 12)
    assert normalize_chain([]) == ()


def test_to_dict():
    d = GroupSpec.fg_abelian(1, (2,)).to_dict()
    assert d == {"variant": "fg_abelian", "text": "abelian:1:(2)", "rank": 1, "chain": [2]}
