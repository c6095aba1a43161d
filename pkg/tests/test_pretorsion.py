import pytest

from torsionkit.errors import UnsupportedError
from torsionkit.fincat import (
    build_category,
    identity_functor,
    make_functor,
    make_nat_trans,
    product_category,
)
from torsionkit.pretorsion import (
    alpha_compatibility,
    characterize_rectangular,
    check_pretorsion,
    check_pretorsion_morphism,
    gamma,
    induced_parts,
    is_epireflective,
    is_monocoreflective,
    is_rectangular,
    lambda_for_morphism,
    product_pretorsion,
    transfer_along_equivalence,
    two_sided_construct,
)
from torsionkit.standard import pointed_pair, poset2, relabel, terminal_category


def disjoint_points():
    return build_category("twopts", ["Z1", "Z2"], [], {})


def split_idempotent_category():
    """Initial object whose arrow into D is not mono: W retracts onto Z in
    two different ways, and the map to D cannot tell them apart."""
    return build_category(
        "splitidem",
        ["Z", "W", "D"],
        [
            ("z_w", "Z", "W"),
            ("z_d", "Z", "D"),
            ("u", "W", "Z"),
            ("v", "W", "Z"),
            ("k1", "W", "W"),
            ("k2", "W", "W"),
            ("w_d", "W", "D"),
        ],
        {
            ("u", "z_w"): "id_Z",
            ("v", "z_w"): "id_Z",
            ("z_w", "u"): "k1",
            ("z_w", "v"): "k2",
            ("u", "k1"): "u",
            ("u", "k2"): "v",
            ("v", "k1"): "u",
            ("v", "k2"): "v",
            ("k1", "k1"): "k1",
            ("k1", "k2"): "k2",
            ("k2", "k1"): "k1",
            ("k2", "k2"): "k2",
            ("k1", "z_w"): "z_w",
            ("k2", "z_w"): "z_w",
            ("w_d", "k1"): "w_d",
            ("w_d", "k2"): "w_d",
            ("w_d", "z_w"): "z_d",
            ("z_d", "u"): "w_d",
            ("z_d", "v"): "w_d",
        },
    )


def test_whole_category_and_terminals(two):
    result = check_pretorsion(two, ["0", "1"], ["1"])
    assert result.ok
    p = result.presentation
    assert p.intersection == ("1",)
    assert p.ses["0"].left == "id_0" and p.ses["0"].right == "u"
    assert is_rectangular(p).ok


def test_initials_and_whole_category(two):
    result = check_pretorsion(two, ["0"], ["0", "1"])
    assert result.ok
    assert result.presentation.ses["1"].left == "u" and result.presentation.ses["1"].right == "id_1"
    assert is_rectangular(result.presentation).ok


def test_chosen_sequences_are_normalized(theory22, theory_p2p2, two, p2):
    presentations = [
        theory22.presentation,
        theory_p2p2.presentation,
        check_pretorsion(two, ["0", "1"], ["1"]).presentation,
        check_pretorsion(p2, ["S1"], ["S1", "S2"]).presentation,
    ]
    for p in presentations:
        cat = p.base
        for x in p.torsion:
            assert p.ses[x].torsion_object == x and p.ses[x].left == cat.identity[x]
        for x in p.free:
            assert p.ses[x].free_object == x and p.ses[x].right == cat.identity[x]


def test_theorem_a_pair_on_square(theory22):
    p = theory22.presentation
    assert set(p.torsion) == {"(0,0)", "(1,0)"}
    assert set(p.free) == {"(1,0)", "(1,1)"}
    assert p.zero_witness == "(1,0)"
    assert p.ses["(0,1)"].left == "(id_0,u)" and p.ses["(0,1)"].right == "(u,id_1)"


def test_t1_violation_witness(two):
    result = check_pretorsion(two, ["0"], ["1"])
    assert not result.ok and result.code == "t1_violation"
    assert result.witness["morphism"] == "u"


def test_t2_violation_witness(two):
    result = check_pretorsion(two, ["1"], ["0"])
    assert not result.ok and result.code == "t2_violation"
    assert result.witness["object"] == "0"


def test_empty_category_unsupported():
    empty = build_category("empty", [], [], {})
    with pytest.raises(UnsupportedError):
        check_pretorsion(empty, [], [])


def test_replete_closure_is_recorded():
    cluster = build_category(
        "cluster",
        ["A", "B"],
        [("a", "A", "B"), ("b", "B", "A")],
        {("b", "a"): "id_A", ("a", "b"): "id_B"},
    )
    result = check_pretorsion(cluster, ["A"], ["A"])
    assert result.ok
    assert set(result.presentation.torsion) == {"A", "B"}
    assert not result.presentation.torsion_was_replete


def test_induced_parts_identity(theory22):
    p = theory22.presentation
    x = "(0,1)"
    assert induced_parts(p, p.base.identity[x]) == (
        p.base.identity[p.ses[x].torsion_object],
        p.base.identity[p.ses[x].free_object],
    )


def test_induced_parts_solved_by_enumeration(theory22):
    p = theory22.presentation
    cat = p.base
    h = "(u,u)"  # (0,0) -> (1,1)
    ht, hf = induced_parts(p, h)
    # oracle: solve both squares by enumeration
    sx, sy = p.ses["(0,0)"], p.ses["(1,1)"]
    t_solutions = [
        w
        for w in cat.hom_set(sx.torsion_object, sy.torsion_object)
        if cat.comp(sy.left, w) == cat.comp(h, sx.left)
    ]
    f_solutions = [
        w
        for w in cat.hom_set(sx.free_object, sy.free_object)
        if cat.comp(w, sx.right) == cat.comp(sy.right, h)
    ]
    assert t_solutions == [ht] and f_solutions == [hf]
    assert ht == "(u,id_0)" and hf == "(id_1,u)"


def test_null_morphism_has_null_parts(theory_p2p2):
    p = theory_p2p2.presentation
    for h in p.base.morphisms:
        if h in p.ideal.members:
            ht, hf = induced_parts(p, h)
            assert ht in p.ideal.members and hf in p.ideal.members


def test_gamma_on_torsion_objects(theory_p2p2):
    p = theory_p2p2.presentation
    g = gamma(p)
    for x in p.torsion:
        t_part, f_part = g.product.obj_tuple[g.functor.obj_map[x]]
        assert t_part == x
        assert f_part in set(p.intersection)  # the free part of torsion is a null object


def test_rectangularity_of_standard_instances(theory22, theory_p2p2):
    assert is_rectangular(theory22.presentation).ok
    assert is_rectangular(theory_p2p2.presentation).ok


def test_gamma_fully_faithful_by_hom_set_counting(theory_p2p2):
    p = theory_p2p2.presentation
    g = gamma(p)
    cat, prod = p.base, g.product
    for a in cat.objects:
        for b in cat.objects:
            images = {g.functor.mor_map[m] for m in cat.hom_set(a, b)}
            target = prod.cat.hom_set(g.functor.obj_map[a], g.functor.obj_map[b])
            assert len(images) == len(cat.hom_set(a, b)) == len(target)
            assert images == set(target)


def test_kernel_and_cokernel_objects_of_identities_lie_in_intersection(theory_p2p2):
    from torsionkit.exactness import cokernel_rel, kernel_rel

    p = theory_p2p2.presentation
    cat = p.base
    closure = set(p.intersection)
    for x in cat.objects:
        idx = cat.identity[x]
        for cert in kernel_rel(p.ideal, idx):
            assert cat.src[cert.kernel] in closure
        for cert in cokernel_rel(p.ideal, idx):
            assert cat.tgt[cert.cokernel] in closure


def test_non_rectangular_disjoint_union():
    c = disjoint_points()
    result = check_pretorsion(c, ["Z1", "Z2"], ["Z1", "Z2"])
    assert result.ok  # two non-isomorphic null objects
    rect = is_rectangular(result.presentation)
    assert not rect.ok
    assert rect.equivalence.code == "not_essentially_surjective"


def test_whole_whole_pair_not_rectangular(two):
    result = check_pretorsion(two, ["0", "1"], ["0", "1"])
    assert result.ok
    assert not is_rectangular(result.presentation).ok


def test_product_pretorsion_matches_two_sided(two, theory22):
    left = check_pretorsion(two, ["0", "1"], ["1"]).presentation
    right = check_pretorsion(two, ["0"], ["0", "1"]).presentation
    prod = product_pretorsion([left, right])
    p = prod.presentation
    q = theory22.presentation
    assert set(p.torsion) == set(q.torsion) and set(p.free) == set(q.free)
    for x in p.base.objects:
        assert (p.ses[x].left, p.ses[x].right) == (q.ses[x].left, q.ses[x].right)


def test_unary_product_pretorsion(theory22):
    p = theory22.presentation
    prod = product_pretorsion([p])
    assert len(prod.presentation.torsion) == len(p.torsion)
    assert is_rectangular(prod.presentation).ok


def test_ternary_product_pretorsion(two):
    pt = terminal_category()
    left = check_pretorsion(two, ["0", "1"], ["1"]).presentation
    middle = check_pretorsion(pt, ["*"], ["*"]).presentation
    right = check_pretorsion(two, ["0"], ["0", "1"]).presentation
    prod = product_pretorsion([left, middle, right])
    p = prod.presentation
    assert len(p.base.objects) == 4 and len(p.base.morphisms) == 9
    assert set(p.torsion) == {"(0,*,0)", "(1,*,0)"}
    assert set(p.free) == {"(1,*,0)", "(1,*,1)"}
    assert is_rectangular(p).ok


def test_product_with_invalid_factor_fails_componentwise(two):
    prod = product_category([two, two])
    # T = {0} x {0,1}, F = {1} x {0,1}: the first factor violates (T1)
    torsion = [prod.obj_of[("0", d)] for d in two.objects]
    free = [prod.obj_of[("1", d)] for d in two.objects]
    result = check_pretorsion(prod.cat, torsion, free)
    assert not result.ok and result.code == "t1_violation"
    first_component = prod.mor_tuple[result.witness["morphism"]][0]
    assert first_component == "u"


def test_two_sided_construct_success(two, p2):
    assert two_sided_construct(two, two).ok
    res = two_sided_construct(p2, p2)
    assert res.ok
    char = characterize_rectangular(res.presentation)
    assert char.rectangular and char.pointed


def test_two_sided_construct_failure_witness(two):
    bad = split_idempotent_category()
    res = two_sided_construct(two, bad)
    assert not res.ok
    assert res.code == "quasi_pointedness_violation"
    assert res.witness["kind"] == "non_mono"
    assert res.witness["morphism"] == "z_d"


def test_epireflective(two):
    assert is_epireflective(two, ["1"]).ok
    assert is_epireflective(two, list(two.objects)).ok
    assert not is_epireflective(two, ["0"]).ok


def test_monocoreflective(two):
    assert is_monocoreflective(two, ["0"]).ok
    assert not is_monocoreflective(two, ["1"]).ok


def test_transfer_along_identity(theory22):
    p = theory22.presentation
    res = transfer_along_equivalence(p, identity_functor(p.base))
    assert set(res.presentation.torsion) == set(p.torsion)
    assert set(res.presentation.free) == set(p.free)


def test_transfer_rejects_non_equivalence(theory22, two):
    from torsionkit.errors import LawError

    p = theory22.presentation
    prod = theory22.product
    diag = make_functor(
        two,
        p.base,
        {o: prod.obj_of[(o, o)] for o in two.objects},
        {m: prod.mor_of[(m, m)] for m in two.morphisms},
    )
    with pytest.raises(LawError) as exc:
        transfer_along_equivalence(p, diag)
    assert exc.value.code == "not_an_equivalence"


def test_transfer_along_relabeling(p2, theory_p2p2):
    p = theory_p2p2.presentation
    q2 = relabel(p2, "x")
    other = two_sided_construct(q2, q2).presentation
    prod_p = theory_p2p2.product
    # the relabeling functor from the primed square back to the original
    obj_map = {}
    mor_map = {}
    for a in p2.objects:
        for b in p2.objects:
            obj_map[f"({a}x,{b}x)"] = prod_p.obj_of[(a, b)]
    for a in p2.morphisms:
        for b in p2.morphisms:
            mor_map[f"({a}x,{b}x)"] = prod_p.mor_of[(a, b)]
    functor = make_functor(other.base, p.base, obj_map, mor_map)
    res = transfer_along_equivalence(p, functor)
    assert set(res.presentation.torsion) == {f"({a}x,{b}x)" for (a, b) in [("S1", "S1"), ("S2", "S1")]}


def test_transfer_along_gamma_inverse_gives_product_form(theory22):
    p = theory22.presentation
    rect = is_rectangular(p)
    res = transfer_along_equivalence(p, rect.equivalence.inverse)
    tf = rect.gamma.product
    z = p.zero_witness
    expected_torsion = {tf.obj_of[(t, z)] for t in p.torsion}
    expected_free = {tf.obj_of[(z, f)] for f in p.free}
    assert set(res.presentation.torsion) == expected_torsion
    assert set(res.presentation.free) == expected_free


def test_pretorsion_morphism_identity(theory22):
    p = theory22.presentation
    result = check_pretorsion_morphism(p, p, identity_functor(p.base))
    assert result.ok


def test_pretorsion_morphism_collapse_free_part(theory22, two):
    p = theory22.presentation
    prod = theory22.product
    # collapse the second coordinate onto the initial object
    obj_map = {prod.obj_of[(a, b)]: prod.obj_of[(a, "0")] for a in two.objects for b in two.objects}
    mor_map = {
        prod.mor_of[(f, g)]: prod.mor_of[(f, "id_0")] for f in two.morphisms for g in two.morphisms
    }
    functor = make_functor(p.base, p.base, obj_map, mor_map)
    result = check_pretorsion_morphism(p, p, functor)
    assert result.ok  # free objects land on the null object, which is free


def test_pretorsion_morphism_failure_witness(theory22, two):
    p = theory22.presentation
    prod = theory22.product
    swap_o = {prod.obj_of[(a, b)]: prod.obj_of[(b, a)] for a in two.objects for b in two.objects}
    swap_m = {prod.mor_of[(f, g)]: prod.mor_of[(g, f)] for f in two.morphisms for g in two.morphisms}
    functor = make_functor(p.base, p.base, swap_o, swap_m)
    result = check_pretorsion_morphism(p, p, functor)
    assert not result.ok and result.code == "torsion_not_preserved"
    assert result.witness["object"] == "(1,0)"  # the swap sends it to (0,1)


def test_lambda_identity_is_identity(theory_p2p2):
    p = theory_p2p2.presentation
    rect = is_rectangular(p)
    morphism = check_pretorsion_morphism(p, p, identity_functor(p.base)).morphism
    lam = lambda_for_morphism(p, p, morphism, rect, rect)
    for x in p.base.objects:
        assert lam.first[x] == p.base.identity[p.ses[x].torsion_object]
        assert lam.second[x] == p.base.identity[p.ses[x].free_object]
    assert lam.nat.iso


def test_alpha_compatibility_identity_cell(theory22):
    p = theory22.presentation
    morphism = check_pretorsion_morphism(p, p, identity_functor(p.base)).morphism
    alpha = make_nat_trans(
        morphism.functor, morphism.functor, {x: p.base.identity[x] for x in p.base.objects}
    )
    assert alpha_compatibility(p, p, morphism, morphism, alpha)


def test_alpha_compatibility_nontrivial_cell(theory22, two):
    # a genuine 2-cell: from the functor collapsing the second coordinate
    # onto the initial object to the identity, with unit-like components
    p = theory22.presentation
    prod = theory22.product
    obj_map = {prod.obj_of[(a, b)]: prod.obj_of[(a, "0")] for a in two.objects for b in two.objects}
    mor_map = {
        prod.mor_of[(f, g)]: prod.mor_of[(f, "id_0")] for f in two.morphisms for g in two.morphisms
    }
    collapse = make_functor(p.base, p.base, obj_map, mor_map)
    g = check_pretorsion_morphism(p, p, collapse).morphism
    h = check_pretorsion_morphism(p, p, identity_functor(p.base)).morphism
    components = {}
    for a in two.objects:
        for b in two.objects:
            bang = "id_0" if b == "0" else "u"
            components[prod.obj_of[(a, b)]] = prod.mor_of[(f"id_{a}", bang)]
    alpha = make_nat_trans(collapse, h.functor, components)
    assert alpha_compatibility(p, p, g, h, alpha)


def test_characterize_square_pair(theory22):
    char = characterize_rectangular(theory22.presentation)
    assert char.rectangular
    assert char.intersection_pairwise_iso and char.hom_zz_singleton
    assert char.zero_terminal_in_torsion and char.zero_initial_in_free
    assert char.torsion_factor_ok and char.free_factor_ok and char.product_equivalent
    assert char.symmetrical
    assert not char.pointed  # the null object of the square pair is not a zero object


def test_characterize_pointed_pair_square(theory_p2p2):
    char = characterize_rectangular(theory_p2p2.presentation)
    assert char.rectangular and char.symmetrical and char.pointed
    assert char.identities_have_kernels_and_cokernels and char.pointedness_forced


def test_characterize_terminal_theory():
    pt = terminal_category()
    p = check_pretorsion(pt, ["*"], ["*"]).presentation
    char = characterize_rectangular(p)
    assert char.rectangular and char.symmetrical and char.pointed
