"""Standard small categories used in documentation and tests."""

from __future__ import annotations

from .fincat import FinCat, build_category


def terminal_category(name: str = "pt", obj: str = "*") -> FinCat:
    """One object, one identity."""
    return build_category(name, [obj], [], {})


def poset2(name: str = "poset2", lo: str = "0", hi: str = "1") -> FinCat:
    """The ordinal 2: objects 0 <= 1 and a single non-identity arrow u."""
    return build_category(name, [lo, hi], [("u", lo, hi)], {})


def pointed_pair(name: str = "P2") -> FinCat:
    """Skeleton of pointed sets on one- and two-element carriers.

    Morphisms: z collapses S2 to the point, e includes the point, n = e.z
    is the zero endomorphism of S2.
    """
    return build_category(
        name,
        ["S1", "S2"],
        [("z", "S2", "S1"), ("e", "S1", "S2"), ("n", "S2", "S2")],
        {
            ("z", "e"): "id_S1",
            ("e", "z"): "n",
            ("z", "n"): "z",
            ("n", "e"): "e",
            ("n", "n"): "n",
        },
    )


def discrete(n: int, name: str = "disc") -> FinCat:
    """n objects and only identities."""
    objs = [f"A{i}" for i in range(n)]
    return build_category(name, objs, [], {})


def relabel(cat: FinCat, suffix: str, name: str | None = None) -> FinCat:
    """A fresh isomorphic copy with every identifier suffixed."""
    ren_o = {o: o + suffix for o in cat.objects}
    ren_m = {m: m + suffix for m in cat.morphisms}
    return build_category(
        name or cat.name + suffix,
        [ren_o[o] for o in cat.objects],
        [(ren_m[m], ren_o[cat.src[m]], ren_o[cat.tgt[m]]) for m in cat.morphisms],
        {(ren_m[g], ren_m[f]): ren_m[h] for (g, f), h in cat.compose.items()},
        identity={ren_o[o]: ren_m[cat.identity[o]] for o in cat.objects},
    )
