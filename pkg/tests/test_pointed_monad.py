import dataclasses
import itertools

import pytest

from torsionkit.errors import LawError
from torsionkit.fincat import compose_functors, functor_maps_equal, identity_functor, make_functor
from torsionkit.pointed_monad import (
    PseudoAlgebraData,
    algebra_to_pretorsion,
    build_pseudo_algebra,
    check_pseudo_algebra,
    check_pseudo_morphism,
    compose_pseudo_morphism_cells,
    free_algebra,
    monad_instance,
    pseudo_morphism_from_functor,
    roundtrip_from_algebra,
    roundtrip_from_presentation,
)
from torsionkit.pretorsion import (
    check_pretorsion,
    check_pretorsion_morphism,
    is_rectangular,
    two_sided_construct,
)
from torsionkit.standard import discrete, pointed_pair, poset2, relabel, terminal_category


@pytest.mark.parametrize("make", [terminal_category, poset2, pointed_pair])
def test_monad_laws_hold_exactly(make):
    cat = make()
    inst = monad_instance(cat)
    # unit laws restated directly on the stored maps
    for o in cat.objects:
        assert inst.eta.obj_map[o] == inst.square.obj_of[(o, o)]
    for a, b in itertools.product(inst.square.cat.objects, repeat=2):
        w = inst.square2.obj_of[(a, b)]
        ta, tb = inst.square.obj_tuple[a], inst.square.obj_tuple[b]
        assert inst.mu.obj_map[w] == inst.square.obj_of[(ta[0], tb[1])]


def test_monad_instance_requires_bi_quasi_pointed():
    with pytest.raises(LawError) as exc:
        monad_instance(discrete(2))
    assert exc.value.code == "not_bi_quasi_pointed"


def test_monad_instance_reports_pointedness():
    assert monad_instance(pointed_pair()).pointed
    assert not monad_instance(poset2()).pointed


def test_build_algebra_on_square_pair(theory22):
    alg = build_pseudo_algebra(theory22.presentation)
    report = check_pseudo_algebra(alg)
    assert report.ok, report.first_failure()


def test_build_algebra_on_terminal_theory(pt):
    p = check_pretorsion(pt, ["*"], ["*"]).presentation
    alg = build_pseudo_algebra(p)
    assert check_pseudo_algebra(alg).ok
    # the structure functor is constant and all cells are identities
    assert set(alg.unit_cell.values()) == {"id_*"}
    assert set(alg.mult_cell.values()) == {"id_*"}


def test_build_algebra_on_one_sided_pair(two):
    # symmetrical but not pointed: everything torsion, terminals free
    p = check_pretorsion(two, ["0", "1"], ["1"]).presentation
    alg = build_pseudo_algebra(p)
    assert check_pseudo_algebra(alg).ok
    r = roundtrip_from_presentation(p)
    assert r.ok
    assert roundtrip_from_algebra(alg).ok


def test_build_algebra_requires_rectangular(two):
    p = check_pretorsion(two, ["0", "1"], ["0", "1"]).presentation
    with pytest.raises(LawError) as exc:
        build_pseudo_algebra(p)
    assert exc.value.code == "not_rectangular"


def test_algebra_structure_values_on_pointed_square(theory_p2p2, rect_p2p2, algebra_p2p2):
    p = theory_p2p2.presentation
    alg = algebra_p2p2
    # pairing with the null object on the right lands on the torsion part
    z = p.zero_witness
    for x in p.base.objects:
        assert alg.q_obj(x, z) in set(p.torsion)
        assert alg.q_obj(z, x) in set(p.free)
    # the structure map fixes the null object
    assert alg.q_obj(z, z) == z


def test_unit_cell_mutation_is_caught(theory_p2p2, rect_p2p2, algebra_p2p2):
    alg = algebra_p2p2
    cat = alg.base
    broken_unit = dict(alg.unit_cell)
    x = "(S2,S2)"
    non_iso = "(n,n)"
    assert cat.src[non_iso] == x and cat.tgt[non_iso] == alg.q_obj(x, x)
    broken_unit[x] = non_iso
    mutated = PseudoAlgebraData(
        base=alg.base,
        square=alg.square,
        structure=alg.structure,
        mult_cell=alg.mult_cell,
        unit_cell=broken_unit,
    )
    report = check_pseudo_algebra(mutated)
    assert not report.ok
    failure = report.first_failure()
    assert failure.name == "unit_cell_iso"
    assert failure.witness == {"object": x}


def test_mult_cell_mutation_is_caught(theory_p2p2, algebra_p2p2):
    alg = algebra_p2p2
    quad = ("(S2,S2)", "(S2,S2)", "(S2,S2)", "(S2,S2)")
    broken = dict(alg.mult_cell)
    broken[quad] = "(n,n)"
    mutated = dataclasses.replace(alg, mult_cell=broken)
    report = check_pseudo_algebra(mutated)
    assert not report.ok
    assert report.first_failure().name == "mult_cell_iso"


def test_free_algebra_is_strict_and_coherent(two):
    alg = free_algebra(two)
    assert check_pseudo_algebra(alg).ok
    carrier = alg.base
    assert all(alg.unit_cell[w] == carrier.identity[w] for w in carrier.objects)


def test_free_algebra_extraction_recovers_two_sided_theory(two):
    alg = free_algebra(two)
    extract = algebra_to_pretorsion(alg)
    expected = two_sided_construct(two, two).presentation
    assert set(extract.presentation.torsion) == set(expected.torsion)
    assert set(extract.presentation.free) == set(expected.free)
    for x in expected.base.objects:
        assert extract.presentation.ses[x].left == expected.ses[x].left
        assert extract.presentation.ses[x].right == expected.ses[x].right


def test_free_algebra_extraction_on_pointed_pair(p2):
    alg = free_algebra(p2)
    extract = algebra_to_pretorsion(alg)
    expected = two_sided_construct(p2, p2).presentation
    assert set(extract.presentation.torsion) == set(expected.torsion)
    assert set(extract.presentation.free) == set(expected.free)


def test_extraction_recovers_classes_exactly(theory_p2p2, rect_p2p2, algebra_p2p2):
    extract = algebra_to_pretorsion(algebra_p2p2)
    p = theory_p2p2.presentation
    assert set(extract.presentation.torsion) == set(p.torsion)
    assert set(extract.presentation.free) == set(p.free)
    # several objects admit more than one essential preimage, so the
    # preimage-independence assertion is not vacuous here
    assert extract.independence_comparisons > 0
    # the comparison between canonical and structure parts is a natural iso
    cat = p.base
    from torsionkit.fincat import inverse_of

    for x in cat.objects:
        assert inverse_of(cat, extract.canonical_vs_structure_first[x]) is not None
        assert inverse_of(cat, extract.canonical_vs_structure_second[x]) is not None


def test_incoherent_algebra_rejected_by_extraction(algebra_p2p2):
    broken_unit = dict(algebra_p2p2.unit_cell)
    broken_unit["(S2,S2)"] = "(n,n)"
    mutated = dataclasses.replace(algebra_p2p2, unit_cell=broken_unit)
    with pytest.raises(LawError) as exc:
        algebra_to_pretorsion(mutated)
    assert exc.value.code == "incoherent_algebra"


@pytest.mark.parametrize("make", [terminal_category, poset2, pointed_pair])
def test_roundtrips_on_free_algebras(make):
    alg = free_algebra(make())
    assert roundtrip_from_algebra(alg).ok


def test_roundtrips_on_square_pair(theory22):
    p = theory22.presentation
    assert roundtrip_from_presentation(p).ok
    alg = build_pseudo_algebra(p)
    r = roundtrip_from_algebra(alg)
    assert r.ok and r.comparison_invertible


def test_roundtrips_on_pointed_square(theory_p2p2, rect_p2p2, algebra_p2p2):
    assert roundtrip_from_presentation(theory_p2p2.presentation, rect=rect_p2p2).ok
    r = roundtrip_from_algebra(algebra_p2p2)
    assert r.ok and r.comparison_ok and r.comparison_invertible


def test_identity_pseudo_morphism_has_identity_cell(theory_p2p2, rect_p2p2, algebra_p2p2):
    p = theory_p2p2.presentation
    morphism = check_pretorsion_morphism(p, p, identity_functor(p.base)).morphism
    pm = pseudo_morphism_from_functor(
        p, p, morphism, rect_p=rect_p2p2, rect_q=rect_p2p2, alg_p=algebra_p2p2, alg_q=algebra_p2p2
    )
    for x, y in itertools.product(p.base.objects, repeat=2):
        assert pm.cell[(x, y)] == p.base.identity[algebra_p2p2.q_obj(x, y)]


def _relabeling_setup(p2, theory_p2p2):
    q2 = relabel(p2, "x")
    other = two_sided_construct(q2, q2)
    prod_p = theory_p2p2.product
    prod_q = other.product
    obj_map = {prod_p.obj_of[(a, b)]: prod_q.obj_of[(a + "x", b + "x")] for a in p2.objects for b in p2.objects}
    mor_map = {
        prod_p.mor_of[(a, b)]: prod_q.mor_of[(a + "x", b + "x")] for a in p2.morphisms for b in p2.morphisms
    }
    functor = make_functor(theory_p2p2.presentation.base, other.presentation.base, obj_map, mor_map)
    return other.presentation, functor


def test_relabeling_pseudo_morphism_coherent(p2, theory_p2p2, rect_p2p2, algebra_p2p2):
    presq, functor = _relabeling_setup(p2, theory_p2p2)
    p = theory_p2p2.presentation
    morphism = check_pretorsion_morphism(p, presq, functor).morphism
    pm = pseudo_morphism_from_functor(p, presq, morphism, rect_p=rect_p2p2, alg_p=algebra_p2p2)
    assert pm.report.ok and pm.report.invertible


def test_composite_pseudo_morphism_cell_is_pasting(p2, theory_p2p2, rect_p2p2, algebra_p2p2):
    presq, functor = _relabeling_setup(p2, theory_p2p2)
    p = theory_p2p2.presentation
    rect_q = is_rectangular(presq)
    alg_q = build_pseudo_algebra(presq, rect=rect_q)
    g = check_pretorsion_morphism(p, presq, functor).morphism
    pm_g = pseudo_morphism_from_functor(p, presq, g, rect_p2p2, rect_q, algebra_p2p2, alg_q)
    inv = make_functor(
        presq.base,
        p.base,
        {v: k for k, v in functor.obj_map.items()},
        {v: k for k, v in functor.mor_map.items()},
    )
    g_inv = check_pretorsion_morphism(presq, p, inv).morphism
    pm_inv = pseudo_morphism_from_functor(presq, p, g_inv, rect_q, rect_p2p2, alg_q, algebra_p2p2)
    pasted = compose_pseudo_morphism_cells(pm_inv, pm_g)
    composite = compose_functors(inv, functor)
    assert functor_maps_equal(composite, identity_functor(p.base))
    direct = pseudo_morphism_from_functor(
        p,
        p,
        check_pretorsion_morphism(p, p, composite).morphism,
        rect_p2p2,
        rect_p2p2,
        algebra_p2p2,
        algebra_p2p2,
    )
    assert pasted == direct.cell
    report = check_pseudo_morphism(algebra_p2p2, algebra_p2p2, composite, pasted)
    assert report.ok and report.invertible
