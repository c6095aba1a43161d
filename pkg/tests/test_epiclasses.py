import pytest

from torsionkit.errors import LawError
from torsionkit.epiclasses import (
    arrow_pretorsion,
    build_epiclass,
    check_rectangular_class,
    check_torsion_class,
    has_binary_products,
    is_normal_epi,
    is_product_projection,
    is_regular_epi,
    ses_shape_check,
    standard_class,
)
from torsionkit.exactness import null_ideal
from torsionkit.fincat import classify_morphism, find_extremal_objects
from torsionkit.standard import pointed_pair, poset2, terminal_category


def all_epis(cat):
    return tuple(m for m in cat.morphisms if classify_morphism(cat, m).epi)


def test_standard_classes_on_p2_coincide(p2):
    minimal = set(standard_class(p2, "minimal"))
    assert minimal == set(standard_class(p2, "split"))
    assert minimal == set(standard_class(p2, "projections"))
    assert minimal == set(standard_class(p2, "regular"))
    assert minimal == set(all_epis(p2))
    assert minimal == {"id_S1", "id_S2", "z"}


def test_build_epiclass_validates_input(p2, two):
    with pytest.raises(LawError) as exc:
        build_epiclass(two, list(two.morphisms))
    assert exc.value.code == "not_pointed"
    with pytest.raises(LawError) as exc:
        build_epiclass(p2, ["id_S1", "z"])
    assert exc.value.code == "missing_iso"
    assert exc.value.witness == {"morphism": "id_S2"}
    with pytest.raises(LawError) as exc:
        build_epiclass(p2, ["id_S1", "id_S2"])
    assert exc.value.code == "missing_zero_target"
    with pytest.raises(LawError) as exc:
        build_epiclass(p2, list(p2.morphisms))
    assert exc.value.code == "non_epi_in_class"


def test_arrow_category_zero_objects_are_the_intersection(p2):
    p = build_epiclass(p2, standard_class(p2, "minimal"))
    ext = find_extremal_objects(p.arrow.cat)
    assert set(ext.zero) == set(p.torsion_objects) & set(p.free_objects) == {"id_S1"}


def test_minimal_class_is_a_torsion_class(p2):
    p = build_epiclass(p2, standard_class(p2, "minimal"))
    tc = check_torsion_class(p)
    assert tc.direct and tc.generic and tc.arrow_pointed
    assert arrow_pretorsion(p).ok


def test_one_object_category_is_vacuously_a_torsion_class(pt):
    p = build_epiclass(pt, standard_class(pt, "minimal"))
    tc = check_torsion_class(p)
    assert tc.direct and tc.generic
    rc = check_rectangular_class(p)
    assert rc.rectangular_generic and rc.all_projections and rc.binary_products_complete


def test_non_normal_epi_breaks_the_torsion_class(p3):
    cls = classify_morphism(p3, "f3to2_11")
    assert cls.epi
    p_all = build_epiclass(p3, all_epis(p3))
    assert not is_normal_epi(p_all, "f3to2_11")
    tc = check_torsion_class(p_all)
    assert not tc.direct and not tc.generic
    assert tc.direct_witness == {"morphism": "f3to2_11", "reason": "not_a_cokernel"}


def test_minimal_class_on_p3_is_a_torsion_class(p3):
    p = build_epiclass(p3, standard_class(p3, "minimal"))
    tc = check_torsion_class(p)
    assert tc.direct and tc.generic


def test_split_epis_on_p3_are_not_a_torsion_class(p3):
    split = standard_class(p3, "split")
    assert set(split) == set(all_epis(p3)) == set(standard_class(p3, "regular"))
    p = build_epiclass(p3, split)
    tc = check_torsion_class(p)
    assert not tc.direct and not tc.generic
    assert tc.direct_witness == {"morphism": "f3to2_11", "reason": "not_a_cokernel"}
    rc = check_rectangular_class(p)
    assert not rc.all_projections and not rc.rectangular_generic and rc.rectangular_agreement
    assert rc.class_is_all_split_epis and rc.class_is_all_regular_epis
    assert not rc.class_is_all_projections


def test_projections_on_p3_form_a_torsion_class_but_not_rectangular(p3):
    projections = standard_class(p3, "projections")
    assert set(projections) == set(standard_class(p3, "minimal"))
    p = build_epiclass(p3, projections)
    assert check_torsion_class(p).direct
    rc = check_rectangular_class(p)
    assert rc.all_projections and not rc.binary_products_complete
    assert not rc.rectangular_generic and rc.rectangular_agreement


def test_product_projection_witness_in_p2(p2):
    verdict = is_product_projection(p2, "z")
    assert verdict.ok
    assert verdict.complement == "S2" and verdict.second_leg == "id_S2"
    # the table solves the universal property exactly
    for (f, g), h in verdict.table.items():
        assert p2.comp("z", h) == f and p2.comp("id_S2", h) == g
    # identities are projections against the zero object, found first
    assert is_product_projection(p2, "id_S2").complement == "S1"


def test_mono_non_iso_is_never_a_projection(p2):
    assert not is_product_projection(p2, "e").ok
    assert not is_product_projection(p2, "n").ok


def test_regular_epis(p2, p3):
    assert is_regular_epi(p2, "z")
    assert not is_regular_epi(p2, "e")
    # the merge map coequalizes the two sections picking the merged points
    assert is_regular_epi(p3, "f3to2_11")


def test_p2_lacks_binary_products(p2, pt):
    assert not has_binary_products(p2)  # the square of the two-point carrier is missing
    assert has_binary_products(pt)


def test_rectangularity_needs_binary_products(p2):
    p = build_epiclass(p2, standard_class(p2, "split"))
    rc = check_rectangular_class(p)
    assert rc.all_projections
    assert not rc.binary_products_complete
    assert not rc.rectangular_generic
    assert rc.rectangular_agreement  # rectangular <=> (projections and products)
    assert rc.torsion_class
    assert rc.class_is_all_split_epis and rc.class_is_all_projections and rc.class_is_all_regular_epis


def test_shape_criterion_agrees_in_scope(p2, p3):
    for base, mode in [(p2, "minimal"), (p2, "split"), (p3, "minimal")]:
        p = build_epiclass(base, standard_class(base, mode))
        acat = p.arrow.cat
        inter = [m for m in p.torsion_objects if m in set(p.free_objects)]
        ideal = null_ideal(acat, inter)
        in_scope = 0
        for s1 in acat.morphisms:
            for s2 in acat.mor_out[acat.tgt[s1]]:
                verdict = ses_shape_check(p, s1, s2, ideal)
                if verdict.in_scope:
                    in_scope += 1
                    assert verdict.agree
        assert in_scope > 0


def test_shape_criterion_detects_non_iso_bottom(p2):
    p = build_epiclass(p2, standard_class(p2, "minimal"))
    acat = p.arrow.cat
    inter = [m for m in p.torsion_objects if m in set(p.free_objects)]
    ideal = null_ideal(acat, inter)
    seen_failing_in_scope = False
    for s1 in acat.morphisms:
        for s2 in acat.mor_out[acat.tgt[s1]]:
            verdict = ses_shape_check(p, s1, s2, ideal)
            if verdict.in_scope and not verdict.shape_ok:
                assert not verdict.generic_ok
                seen_failing_in_scope = True
    assert seen_failing_in_scope


def test_normal_epi_with_its_kernel_is_exact(p2):
    # the collapse z together with its kernel square is the exact sequence
    # of the object z in the arrow category
    p = build_epiclass(p2, standard_class(p2, "minimal"))
    acat = p.arrow.cat
    inter = [m for m in p.torsion_objects if m in set(p.free_objects)]
    ideal = null_ideal(acat, inter)
    first = acat.identity["z"]  # z is its own kernel part: ker z = S2 over the zero object
    second = next(m for m in acat.hom_set("z", "id_S1"))
    verdict = ses_shape_check(p, first, second, ideal)
    assert verdict.in_scope and verdict.shape_ok and verdict.generic_ok


def test_degenerate_exact_pair_from_zero(p2):
    # an invertible member together with the square out of a null object
    p = build_epiclass(p2, standard_class(p2, "minimal"))
    acat = p.arrow.cat
    inter = [m for m in p.torsion_objects if m in set(p.free_objects)]
    ideal = null_ideal(acat, inter)
    z_obj = inter[0]
    e = "id_S2"
    first = next(m for m in acat.hom_set(z_obj, e))
    second = acat.identity[e]
    verdict = ses_shape_check(p, first, second, ideal)
    assert verdict.in_scope and verdict.shape_ok and verdict.generic_ok


def test_every_projection_member_is_normal_with_kernel_on_p2(p2):
    # instance-level consequence: on this base, projections are normal and
    # have kernels
    p = build_epiclass(p2, standard_class(p2, "projections"))
    rc = check_rectangular_class(p)
    assert rc.all_projections
    assert rc.all_normal and rc.all_with_kernel
