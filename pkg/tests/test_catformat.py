from pathlib import Path

import pytest

from torsionkit.catformat import (
    parse_band,
    parse_category,
    parse_functor_map,
    serialize_band,
    serialize_category,
)
from torsionkit.errors import FormatError, LawError
from torsionkit.standard import pointed_pair

TESTDATA = Path(__file__).resolve().parent.parent / "testdata"


def test_parse_minimal_category():
    parsed = parse_category("category pt\nobject *\n")
    assert parsed.cat.objects == ("*",)
    assert parsed.cat.morphisms == ("id_*",)


def test_parse_with_comments_and_subsets():
    text = """
# a poset
category two
object 0
object 1
morphism u : 0 -> 1   # the only arrow
subset Top = 1
"""
    parsed = parse_category(text)
    assert parsed.cat.hom_set("0", "1") == ("u",)
    assert parsed.subsets == {"Top": ("1",)}


def test_declared_identity_is_reused():
    text = "category c\nobject A\nmorphism id_A : A -> A\n"
    parsed = parse_category(text)
    assert parsed.cat.identity["A"] == "id_A"
    assert len(parsed.cat.morphisms) == 1


def test_missing_composite_is_flagged():
    text = """
category c
object A
object B
object C
morphism f : A -> B
morphism g : B -> C
"""
    with pytest.raises(LawError) as exc:
        parse_category(text)
    assert exc.value.code == "missing_composite"
    assert exc.value.witness == {"g": "g", "f": "f"}


def test_explicit_identity_composites_are_allowed():
    text = """
category c
object A
morphism id_A : A -> A
compose id_A . id_A = id_A
"""
    assert parse_category(text).cat.comp("id_A", "id_A") == "id_A"


def test_unknown_directive_rejected():
    with pytest.raises(FormatError):
        parse_category("category c\nobjekt A\n")


def test_unknown_subset_member_rejected():
    with pytest.raises(FormatError) as exc:
        parse_category("category c\nobject A\nsubset S = B\n")
    assert exc.value.code == "unknown_subset_member"


def test_serialize_parse_roundtrip(p2):
    subsets = {"Zero": ("S1",), "Epis": ("id_S1", "id_S2", "z")}
    text = serialize_category(p2, subsets)
    parsed = parse_category(text)
    assert parsed.cat.objects == p2.objects
    assert parsed.cat.morphisms == p2.morphisms
    assert parsed.cat.compose == p2.compose
    assert parsed.subsets == subsets
    assert serialize_category(parsed.cat, parsed.subsets) == text


def test_testdata_files_match_standard_categories():
    parsed = parse_category((TESTDATA / "p2.fincat").read_text())
    p2 = pointed_pair()
    assert parsed.cat.objects == p2.objects
    assert parsed.cat.compose == p2.compose


def test_band_roundtrip():
    rows = [[0, 1, 0, 1], [0, 1, 0, 1], [2, 3, 2, 3], [2, 3, 2, 3]]
    assert parse_band(serialize_band(rows)) == rows
    with pytest.raises(FormatError):
        parse_band("band 2\n0 1\n")
    with pytest.raises(FormatError):
        parse_band("0 1\n1 0\n")


def test_parse_functor_map(p2):
    text = "funmap id\n" + "".join(f"object {o} -> {o}\n" for o in p2.objects) + "".join(
        f"morphism {m} -> {m}\n" for m in p2.morphisms if not p2.is_identity(m)
    )
    functor = parse_functor_map(text, p2, p2)
    assert functor.obj_map == {o: o for o in p2.objects}
    assert functor.mor_map["id_S1"] == "id_S1"  # identities filled in


def test_parse_functor_map_rejects_non_functor(p2):
    text = (
        "funmap bad\nobject S1 -> S1\nobject S2 -> S1\n"
        "morphism z -> id_S1\nmorphism e -> id_S1\nmorphism n -> id_S1\n"
    )
    # collapsing S2 onto S1 is a functor; breaking one composite is not
    functor = parse_functor_map(text, p2, p2)
    assert functor.obj_map["S2"] == "S1"
    bad = text.replace("morphism n -> id_S1", "morphism n -> e")
    with pytest.raises(LawError):
        parse_functor_map(bad, p2, p2)
