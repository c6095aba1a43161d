import itertools

import pytest

from torsionkit.fincat import build_category
from torsionkit.pointed_monad import build_pseudo_algebra
from torsionkit.pretorsion import is_rectangular, two_sided_construct
from torsionkit.standard import pointed_pair, poset2, terminal_category


@pytest.fixture(scope="session")
def pt():
    return terminal_category()


@pytest.fixture(scope="session")
def two():
    return poset2()


@pytest.fixture(scope="session")
def p2():
    return pointed_pair()


@pytest.fixture(scope="session")
def theory22(two):
    """The canonical torsion pair on the square of the ordinal 2."""
    res = two_sided_construct(two, two)
    assert res.ok
    return res


@pytest.fixture(scope="session")
def theory_p2p2(p2):
    """The canonical torsion pair on the square of the pointed-pair skeleton."""
    res = two_sided_construct(p2, p2)
    assert res.ok
    return res


@pytest.fixture(scope="session")
def rect_p2p2(theory_p2p2):
    rect = is_rectangular(theory_p2p2.presentation)
    assert rect.ok
    return rect


@pytest.fixture(scope="session")
def algebra_p2p2(theory_p2p2, rect_p2p2):
    return build_pseudo_algebra(theory_p2p2.presentation, rect=rect_p2p2)


def pointed_maps_category(sizes, name="ptd"):
    """Skeleton of pointed sets on carriers {0..k-1} (0 the base point) for
    the given sizes; used as an oracle source of pointed examples."""
    objs = [f"S{k}" for k in sizes]
    maps = {}
    for a in sizes:
        for b in sizes:
            for values in itertools.product(range(b), repeat=a - 1):
                maps[(a, b, (0,) + values)] = f"f{a}to{b}_" + "".join(str(v) for v in values)
    morphisms = []
    for (a, b, table), mid in maps.items():
        if a == b and table == tuple(range(a)):
            continue  # identities are auto-added as id_S<k>
        morphisms.append((mid, f"S{a}", f"S{b}"))

    def mor_id(a, b, table):
        if a == b and table == tuple(range(a)):
            return f"id_S{a}"
        return maps[(a, b, table)]

    compose = {}
    for (a, b, t1) in list(maps) + [(a, a, tuple(range(a))) for a in sizes]:
        for (b2, c, t2) in list(maps) + [(a2, a2, tuple(range(a2))) for a2 in sizes]:
            if b2 != b:
                continue
            comp = tuple(t2[v] for v in t1)
            compose[(mor_id(b, c, t2), mor_id(a, b, t1))] = mor_id(a, c, comp)
    return build_category(name, objs, morphisms, compose)


@pytest.fixture(scope="session")
def p3():
    return pointed_maps_category([1, 2, 3], name="P3")
