"""Finite categories as explicit composition tables.

Everything in this module is decided by exhaustive search over stored
tables: morphism classification, extremal objects, functor and natural
transformation laws, equivalences.  All searches iterate in declaration
order (the order objects and morphisms were listed), so witnesses and
constructed data are deterministic; "least" always means "earliest in
declaration order".  Validated structures are never mutated, so they can be
shared freely across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InternalCheckError, LawError, SizeLimitError


@dataclass(frozen=True)
class Limits:
    """Bounds on exhaustive checks; exceeding them is an error, not silence."""

    max_objects: int = 64
    max_morphisms: int = 4096


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class RawMorphism:
    mid: str
    src: str
    tgt: str


@dataclass
class RawCategory:
    """Unvalidated category description, as produced by the text parser."""

    name: str
    objects: list[str]
    morphisms: list[RawMorphism]
    identity: dict[str, str]
    compose: dict[tuple[str, str], str]


@dataclass(frozen=True, eq=False)
class FinCat:
    """A validated finite category.

    Immutable after construction; all derived tables (hom-sets, in/out
    lists, indexes) are precomputed.  Morphism equality is identifier
    equality; there are no quotients.
    """

    name: str
    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: dict[str, str]
    tgt: dict[str, str]
    identity: dict[str, str]
    compose: dict[tuple[str, str], str]
    obj_index: dict[str, int] = field(repr=False)
    mor_index: dict[str, int] = field(repr=False)
    hom: dict[tuple[str, str], tuple[str, ...]] = field(repr=False)
    mor_in: dict[str, tuple[str, ...]] = field(repr=False)
    mor_out: dict[str, tuple[str, ...]] = field(repr=False)

    def comp(self, g: str, f: str) -> str:
        """g after f.  KeyError if the pair is not composable."""
        return self.compose[(g, f)]

    def hom_set(self, a: str, b: str) -> tuple[str, ...]:
        return self.hom.get((a, b), ())

    def is_identity(self, m: str) -> bool:
        return self.identity.get(self.src[m]) == m

    def __repr__(self) -> str:  # keep prints small in pytest output
        return f"FinCat({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def _index_category(raw: RawCategory) -> FinCat:
    """Build the derived tables without re-checking laws."""
    objects = tuple(raw.objects)
    morphisms = tuple(m.mid for m in raw.morphisms)
    src = {m.mid: m.src for m in raw.morphisms}
    tgt = {m.mid: m.tgt for m in raw.morphisms}
    hom: dict[tuple[str, str], list[str]] = {}
    mor_in: dict[str, list[str]] = {o: [] for o in objects}
    mor_out: dict[str, list[str]] = {o: [] for o in objects}
    for m in morphisms:
        hom.setdefault((src[m], tgt[m]), []).append(m)
        mor_out[src[m]].append(m)
        mor_in[tgt[m]].append(m)
    return FinCat(
        name=raw.name,
        objects=objects,
        morphisms=morphisms,
        src=src,
        tgt=tgt,
        identity=dict(raw.identity),
        compose=dict(raw.compose),
        obj_index={o: i for i, o in enumerate(objects)},
        mor_index={m: i for i, m in enumerate(morphisms)},
        hom={k: tuple(v) for k, v in hom.items()},
        mor_in={k: tuple(v) for k, v in mor_in.items()},
        mor_out={k: tuple(v) for k, v in mor_out.items()},
    )


def assert_category_laws(cat: FinCat) -> None:
    """Re-assert every category law directly on the stored tables.

    Raises LawError with the first violated law and its witness.
    """
    for o in cat.objects:
        i = cat.identity.get(o)
        if i is None:
            raise LawError("missing_identity", f"object {o} has no identity", {"object": o})
        if i not in cat.mor_index:
            raise LawError("missing_identity", f"identity {i} of {o} is not a morphism", {"object": o, "morphism": i})
        if cat.src[i] != o or cat.tgt[i] != o:
            raise LawError(
                "identity_ill_typed",
                f"identity {i} of {o} is not an endomorphism of {o}",
                {"object": o, "morphism": i},
            )
    # compose totality and typing: defined for exactly the composable pairs
    for g in cat.morphisms:
        for f in cat.mor_in[cat.src[g]]:
            if (g, f) not in cat.compose:
                raise LawError(
                    "missing_composite",
                    f"composite {g} . {f} is not defined",
                    {"g": g, "f": f},
                )
    for (g, f), h in cat.compose.items():
        if g not in cat.mor_index or f not in cat.mor_index:
            raise LawError("unknown_morphism", f"compose entry uses unknown morphism {g} or {f}", {"g": g, "f": f})
        if cat.src[g] != cat.tgt[f]:
            raise LawError("spurious_composite", f"{g} . {f} is not composable", {"g": g, "f": f})
        if h not in cat.mor_index or cat.src[h] != cat.src[f] or cat.tgt[h] != cat.tgt[g]:
            raise LawError(
                "ill_typed_composite",
                f"{g} . {f} = {h} does not land in hom({cat.src[f]}, {cat.tgt[g]})",
                {"g": g, "f": f, "h": h},
            )
    for f in cat.morphisms:
        if cat.compose[(cat.identity[cat.tgt[f]], f)] != f or cat.compose[(f, cat.identity[cat.src[f]])] != f:
            raise LawError("identity_law", f"identity law fails at {f}", {"morphism": f})
    for g in cat.morphisms:
        for f in cat.mor_in[cat.src[g]]:
            gf = cat.compose[(g, f)]
            for h in cat.mor_out[cat.tgt[g]]:
                if cat.compose[(h, gf)] != cat.compose[(cat.compose[(h, g)], f)]:
                    raise LawError(
                        "non_associative",
                        f"associativity fails on ({h}, {g}, {f})",
                        {"h": h, "g": g, "f": f},
                    )


def validate_category(raw: RawCategory, limits: Limits = DEFAULT_LIMITS) -> FinCat:
    """Validate a raw description and return an indexed FinCat.

    Raises LawError naming the first violated law with its witness, or
    SizeLimitError when the description exceeds the configured bounds.
    """
    if len(raw.objects) > limits.max_objects or len(raw.morphisms) > limits.max_morphisms:
        raise SizeLimitError(
            "size_limit",
            f"category has {len(raw.objects)} objects / {len(raw.morphisms)} morphisms, "
            f"limit is {limits.max_objects} / {limits.max_morphisms}",
            {"objects": len(raw.objects), "morphisms": len(raw.morphisms)},
        )
    seen: set[str] = set()
    for o in raw.objects:
        if o in seen:
            raise LawError("duplicate_id", f"duplicate identifier {o}", {"id": o})
        seen.add(o)
    obj_set = set(raw.objects)
    for m in raw.morphisms:
        if m.mid in seen:
            raise LawError("duplicate_id", f"duplicate identifier {m.mid}", {"id": m.mid})
        seen.add(m.mid)
        if m.src not in obj_set or m.tgt not in obj_set:
            raise LawError("unknown_object", f"morphism {m.mid} has unknown endpoint", {"morphism": m.mid})
    cat = _index_category(raw)
    assert_category_laws(cat)
    return cat


def build_category(
    name: str,
    objects: list[str],
    morphisms: list[tuple[str, str, str]],
    compose: dict[tuple[str, str], str],
    identity: dict[str, str] | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> FinCat:
    """Convenience constructor: morphisms as (id, src, tgt) triples.

    Identity morphisms are auto-created as id_<obj> when absent, and
    composites with identities are filled in when omitted.
    """
    raws = [RawMorphism(m, s, t) for (m, s, t) in morphisms]
    ident = dict(identity or {})
    have = {m.mid for m in raws}
    for o in objects:
        if o not in ident:
            auto = f"id_{o}"
            if auto not in have:
                raws.append(RawMorphism(auto, o, o))
                have.add(auto)
            ident[o] = auto
    table = dict(compose)
    for m in raws:
        table.setdefault((ident[m.tgt], m.mid), m.mid)
        table.setdefault((m.mid, ident[m.src]), m.mid)
    return validate_category(RawCategory(name, list(objects), raws, ident, table), limits)


# ---------------------------------------------------------------------------
# morphism classification and extremal objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MorphismClass:
    mono: bool
    epi: bool
    split_mono: bool
    split_epi: bool
    iso: bool


def inverse_of(cat: FinCat, f: str) -> str | None:
    """Two-sided inverse of f, or None.  First match in declaration order."""
    for g in cat.hom_set(cat.tgt[f], cat.src[f]):
        if cat.comp(g, f) == cat.identity[cat.src[f]] and cat.comp(f, g) == cat.identity[cat.tgt[f]]:
            return g
    return None


def classify_morphism(cat: FinCat, f: str) -> MorphismClass:
    """Decide mono/epi/split/iso flags by exhaustive search."""
    a, b = cat.src[f], cat.tgt[f]
    mono = True
    for w in cat.objects:
        pool = cat.hom_set(w, a)
        for u, v in itertools.combinations(pool, 2):
            if cat.comp(f, u) == cat.comp(f, v):
                mono = False
                break
        if not mono:
            break
    epi = True
    for w in cat.objects:
        pool = cat.hom_set(b, w)
        for u, v in itertools.combinations(pool, 2):
            if cat.comp(u, f) == cat.comp(v, f):
                epi = False
                break
        if not epi:
            break
    split_mono = any(cat.comp(r, f) == cat.identity[a] for r in cat.hom_set(b, a))
    split_epi = any(cat.comp(f, s) == cat.identity[b] for s in cat.hom_set(b, a))
    iso = inverse_of(cat, f) is not None
    return MorphismClass(mono=mono, epi=epi, split_mono=split_mono, split_epi=split_epi, iso=iso)


@dataclass(frozen=True)
class ExtremalObjects:
    initial: tuple[str, ...]
    terminal: tuple[str, ...]
    zero: tuple[str, ...]


def find_extremal_objects(cat: FinCat) -> ExtremalObjects:
    initial = tuple(o for o in cat.objects if all(len(cat.hom_set(o, x)) == 1 for x in cat.objects))
    terminal = tuple(o for o in cat.objects if all(len(cat.hom_set(x, o)) == 1 for x in cat.objects))
    zero = tuple(o for o in initial if o in set(terminal))
    return ExtremalObjects(initial=initial, terminal=terminal, zero=zero)


@dataclass(frozen=True)
class BiQuasiPointedVerdict:
    ok: bool
    code: str | None
    initial: tuple[str, ...]
    terminal: tuple[str, ...]
    zero_to_one: str | None
    classification: MorphismClass | None


def is_bi_quasi_pointed(cat: FinCat) -> BiQuasiPointedVerdict:
    """True iff there are an initial 0 and terminal 1 and the unique 0 -> 1 is mono and epi."""
    ext = find_extremal_objects(cat)
    if not ext.initial:
        return BiQuasiPointedVerdict(False, "no_initial", ext.initial, ext.terminal, None, None)
    if not ext.terminal:
        return BiQuasiPointedVerdict(False, "no_terminal", ext.initial, ext.terminal, None, None)
    zero, one = ext.initial[0], ext.terminal[0]
    (arrow,) = cat.hom_set(zero, one)
    cls = classify_morphism(cat, arrow)
    ok = cls.mono and cls.epi
    return BiQuasiPointedVerdict(ok, None if ok else "zero_to_one_not_mono_epi", ext.initial, ext.terminal, arrow, cls)


def iso_classes(cat: FinCat) -> dict[str, tuple[str, ...]]:
    """Map each object to the tuple of objects isomorphic to it (declaration order)."""
    related: dict[str, list[str]] = {o: [] for o in cat.objects}
    for a in cat.objects:
        for b in cat.objects:
            if a == b:
                related[a].append(b)
                continue
            if any(inverse_of(cat, f) is not None for f in cat.hom_set(a, b)):
                related[a].append(b)
    return {o: tuple(v) for o, v in related.items()}


def replete_closure(cat: FinCat, objs: list[str] | tuple[str, ...]) -> tuple[str, ...]:
    """Closure of an object set under isomorphism, in declaration order."""
    classes = iso_classes(cat)
    keep = set()
    for o in objs:
        keep.update(classes[o])
    return tuple(o for o in cat.objects if o in keep)


# ---------------------------------------------------------------------------
# functors and natural transformations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FunctorData:
    source: FinCat
    target: FinCat
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def __repr__(self) -> str:
        return f"FunctorData({self.source.name!r} -> {self.target.name!r})"


def make_functor(source: FinCat, target: FinCat, obj_map: dict[str, str], mor_map: dict[str, str]) -> FunctorData:
    """Validate functor laws exhaustively and return the functor."""
    for o in source.objects:
        if obj_map.get(o) not in target.obj_index:
            raise LawError("functor_object_map", f"object map undefined or ill-valued at {o}", {"object": o})
    for m in source.morphisms:
        fm = mor_map.get(m)
        if fm not in target.mor_index:
            raise LawError("functor_morphism_map", f"morphism map undefined or ill-valued at {m}", {"morphism": m})
        if target.src[fm] != obj_map[source.src[m]] or target.tgt[fm] != obj_map[source.tgt[m]]:
            raise LawError("functor_typing", f"image of {m} has wrong endpoints", {"morphism": m})
    for o in source.objects:
        if mor_map[source.identity[o]] != target.identity[obj_map[o]]:
            raise LawError("functor_identity", f"identity of {o} not preserved", {"object": o})
    for (g, f), h in source.compose.items():
        if target.compose[(mor_map[g], mor_map[f])] != mor_map[h]:
            raise LawError("functor_composition", f"composition not preserved on ({g}, {f})", {"g": g, "f": f})
    return FunctorData(source=source, target=target, obj_map=dict(obj_map), mor_map=dict(mor_map))


def identity_functor(cat: FinCat) -> FunctorData:
    return FunctorData(cat, cat, {o: o for o in cat.objects}, {m: m for m in cat.morphisms})


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    """g after f; sources and targets must match up exactly."""
    if g.source is not f.target:
        raise InternalCheckError("functor_compose", "functor composition with mismatched middle category")
    return FunctorData(
        f.source,
        g.target,
        {o: g.obj_map[f.obj_map[o]] for o in f.source.objects},
        {m: g.mor_map[f.mor_map[m]] for m in f.source.morphisms},
    )


def functor_maps_equal(f: FunctorData, g: FunctorData) -> bool:
    return f.obj_map == g.obj_map and f.mor_map == g.mor_map


@dataclass(frozen=True, eq=False)
class NatTransData:
    source: FunctorData
    target: FunctorData
    components: dict[str, str]
    iso: bool


def make_nat_trans(
    source: FunctorData, target: FunctorData, components: dict[str, str], require_iso: bool = False
) -> NatTransData:
    """Validate every naturality square; optionally require iso components."""
    cat = source.source
    tcat = source.target
    if target.source is not cat or target.target is not tcat:
        raise InternalCheckError("nat_trans", "natural transformation between functors of different shapes")
    for x in cat.objects:
        c = components.get(x)
        if c is None or tcat.src[c] != source.obj_map[x] or tcat.tgt[c] != target.obj_map[x]:
            raise LawError("nat_trans_typing", f"component at {x} missing or ill-typed", {"object": x})
    for m in cat.morphisms:
        x, y = cat.src[m], cat.tgt[m]
        if tcat.comp(target.mor_map[m], components[x]) != tcat.comp(components[y], source.mor_map[m]):
            raise LawError("naturality", f"naturality square fails at {m}", {"morphism": m})
    is_iso = all(inverse_of(tcat, components[x]) is not None for x in cat.objects)
    if require_iso and not is_iso:
        bad = next(x for x in cat.objects if inverse_of(tcat, components[x]) is None)
        raise LawError("not_iso_component", f"component at {bad} is not invertible", {"object": bad})
    return NatTransData(source=source, target=target, components=dict(components), iso=is_iso)


# ---------------------------------------------------------------------------
# products, subcategories, arrow categories
# ---------------------------------------------------------------------------


def _tuple_id(parts: tuple[str, ...]) -> str:
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True, eq=False)
class ProductCat:
    """A product category together with projections and tuple lookups."""

    cat: FinCat
    factors: tuple[FinCat, ...]
    projections: tuple[FunctorData, ...]
    obj_tuple: dict[str, tuple[str, ...]]
    mor_tuple: dict[str, tuple[str, ...]]
    obj_of: dict[tuple[str, ...], str]
    mor_of: dict[tuple[str, ...], str]


def product_category(factors: list[FinCat], limits: Limits = DEFAULT_LIMITS, name: str | None = None) -> ProductCat:
    """Componentwise product; objects and morphisms are tuples.

    The result is correct by construction (laws hold componentwise) and can
    be re-asserted with assert_category_laws.
    """
    if not factors:
        raise LawError("empty_factor_list", "product of an empty family of categories", {})
    n_obj = 1
    n_mor = 1
    for c in factors:
        n_obj *= len(c.objects)
        n_mor *= len(c.morphisms)
    if n_obj > limits.max_objects or n_mor > limits.max_morphisms:
        raise SizeLimitError(
            "size_limit",
            f"product would have {n_obj} objects / {n_mor} morphisms, "
            f"limit is {limits.max_objects} / {limits.max_morphisms}",
            {"objects": n_obj, "morphisms": n_mor},
        )
    objs = list(itertools.product(*[c.objects for c in factors]))
    mors = list(itertools.product(*[c.morphisms for c in factors]))
    obj_of = {t: _tuple_id(t) for t in objs}
    mor_of = {t: _tuple_id(t) for t in mors}
    raw_morphisms = [
        RawMorphism(mor_of[t], _tuple_id(tuple(c.src[m] for c, m in zip(factors, t))), _tuple_id(tuple(c.tgt[m] for c, m in zip(factors, t))))
        for t in mors
    ]
    identity = {obj_of[t]: _tuple_id(tuple(c.identity[o] for c, o in zip(factors, t))) for t in objs}
    compose: dict[tuple[str, str], str] = {}
    pair_pools = [list(c.compose.items()) for c in factors]
    for combo in itertools.product(*pair_pools):
        g = _tuple_id(tuple(p[0][0] for p in combo))
        f = _tuple_id(tuple(p[0][1] for p in combo))
        h = _tuple_id(tuple(p[1] for p in combo))
        compose[(g, f)] = h
    cat = _index_category(
        RawCategory(
            name or "x".join(c.name for c in factors),
            [obj_of[t] for t in objs],
            raw_morphisms,
            identity,
            compose,
        )
    )
    obj_tuple = {v: k for k, v in obj_of.items()}
    mor_tuple = {v: k for k, v in mor_of.items()}
    projections = tuple(
        make_functor(
            cat,
            factors[i],
            {obj_of[t]: t[i] for t in objs},
            {mor_of[t]: t[i] for t in mors},
        )
        for i in range(len(factors))
    )
    return ProductCat(
        cat=cat,
        factors=tuple(factors),
        projections=projections,
        obj_tuple=obj_tuple,
        mor_tuple=mor_tuple,
        obj_of=obj_of,
        mor_of=mor_of,
    )


def product_of_functors(fs: list[FunctorData], src: ProductCat, tgt: ProductCat) -> FunctorData:
    """The componentwise functor between two product categories."""
    if len(fs) != len(src.factors) or len(fs) != len(tgt.factors):
        raise InternalCheckError("product_functor", "factor count mismatch")
    obj_map = {
        src.obj_of[t]: tgt.obj_of[tuple(f.obj_map[o] for f, o in zip(fs, t))] for t in src.obj_of
    }
    mor_map = {
        src.mor_of[t]: tgt.mor_of[tuple(f.mor_map[m] for f, m in zip(fs, t))] for t in src.mor_of
    }
    return FunctorData(src.cat, tgt.cat, obj_map, mor_map)


def diagonal_functor(cat: FinCat, square: ProductCat) -> FunctorData:
    """X maps to (X, X); the square must be the binary product of cat with itself."""
    return FunctorData(
        cat,
        square.cat,
        {o: square.obj_of[(o, o)] for o in cat.objects},
        {m: square.mor_of[(m, m)] for m in cat.morphisms},
    )


def full_subcategory(cat: FinCat, objs: list[str] | tuple[str, ...], name: str | None = None) -> FinCat:
    keep_obj = [o for o in cat.objects if o in set(objs)]
    keep_set = set(keep_obj)
    keep_mor = [m for m in cat.morphisms if cat.src[m] in keep_set and cat.tgt[m] in keep_set]
    mor_set = set(keep_mor)
    return _index_category(
        RawCategory(
            name or f"{cat.name}|{len(keep_obj)}",
            keep_obj,
            [RawMorphism(m, cat.src[m], cat.tgt[m]) for m in keep_mor],
            {o: cat.identity[o] for o in keep_obj},
            {k: v for k, v in cat.compose.items() if k[0] in mor_set and k[1] in mor_set},
        )
    )


def inclusion_functor(sub: FinCat, cat: FinCat) -> FunctorData:
    return FunctorData(sub, cat, {o: o for o in sub.objects}, {m: m for m in sub.morphisms})


def restrict_functor(f: FunctorData, sub_src: FinCat, sub_tgt: FinCat) -> FunctorData:
    """Restriction of f to a full subcategory whose image lies in sub_tgt."""
    return FunctorData(
        sub_src,
        sub_tgt,
        {o: f.obj_map[o] for o in sub_src.objects},
        {m: f.mor_map[m] for m in sub_src.morphisms},
    )


@dataclass(frozen=True, eq=False)
class ArrowCat:
    """Full subcategory of the arrow category on a chosen set of morphisms."""

    cat: FinCat
    base: FinCat
    members: tuple[str, ...]
    square_parts: dict[str, tuple[str, str]]  # arrow-cat morphism -> (top, bottom)


def arrow_category(base: FinCat, members: list[str] | tuple[str, ...], limits: Limits = DEFAULT_LIMITS) -> ArrowCat:
    """Category whose objects are the chosen morphisms and whose morphisms
    are commuting squares (a, b) with b . e = e' . a."""
    mem = [m for m in base.morphisms if m in set(members)]
    squares: list[tuple[str, str, str, str]] = []  # (e, e2, a, b)
    for e in mem:
        for e2 in mem:
            for a in base.hom_set(base.src[e], base.src[e2]):
                for b in base.hom_set(base.tgt[e], base.tgt[e2]):
                    if base.comp(e2, a) == base.comp(b, e):
                        squares.append((e, e2, a, b))
    if len(mem) > limits.max_objects or len(squares) > limits.max_morphisms:
        raise SizeLimitError(
            "size_limit",
            f"arrow category would have {len(mem)} objects / {len(squares)} morphisms",
            {"objects": len(mem), "morphisms": len(squares)},
        )

    def sq_id(e: str, e2: str, a: str, b: str) -> str:
        return f"sq[{a},{b}]:{e}->{e2}"

    raw_morphisms = [RawMorphism(sq_id(*s), s[0], s[1]) for s in squares]
    identity = {e: sq_id(e, e, base.identity[base.src[e]], base.identity[base.tgt[e]]) for e in mem}
    compose: dict[tuple[str, str], str] = {}
    starts: dict[str, list[tuple[str, str, str, str]]] = {}
    for s in squares:
        starts.setdefault(s[0], []).append(s)
    for s1 in squares:
        for s2 in starts.get(s1[1], ()):
            a = base.comp(s2[2], s1[2])
            b = base.comp(s2[3], s1[3])
            compose[(sq_id(*s2), sq_id(*s1))] = sq_id(s1[0], s2[1], a, b)
    cat = _index_category(
        RawCategory(f"arrows({base.name})", mem, raw_morphisms, identity, compose)
    )
    return ArrowCat(
        cat=cat,
        base=base,
        members=tuple(mem),
        square_parts={sq_id(*s): (s[2], s[3]) for s in squares},
    )


# ---------------------------------------------------------------------------
# equivalences of categories
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EquivalenceResult:
    ok: bool
    code: str | None
    witness: dict
    inverse: FunctorData | None
    unit: NatTransData | None
    counit: NatTransData | None


def check_equivalence(f: FunctorData) -> EquivalenceResult:
    """Decide whether f is an equivalence; on success build an adjoint
    pseudo-inverse.

    The pseudo-inverse prefers, for each target object, the least on-the-nose
    preimage, then the least essential preimage; the connecting isomorphism
    prefers the identity.  The unit is the f-preimage of the inverted counit,
    which makes both triangle identities hold exactly.
    """
    src, tgt = f.source, f.target
    for a in src.objects:
        for b in src.objects:
            pool = src.hom_set(a, b)
            images = [f.mor_map[m] for m in pool]
            if len(set(images)) != len(pool) or set(images) != set(tgt.hom_set(f.obj_map[a], f.obj_map[b])):
                return EquivalenceResult(
                    False, "not_fully_faithful", {"source": a, "target": b}, None, None, None
                )
    classes = iso_classes(tgt)
    g_obj: dict[str, str] = {}
    counit_c: dict[str, str] = {}
    for d in tgt.objects:
        exact = [c for c in src.objects if f.obj_map[c] == d]
        essential = exact or [c for c in src.objects if f.obj_map[c] in set(classes[d])]
        if not essential:
            return EquivalenceResult(False, "not_essentially_surjective", {"object": d}, None, None, None)
        c = essential[0]
        g_obj[d] = c
        if f.obj_map[c] == d:
            counit_c[d] = tgt.identity[d]
        else:
            counit_c[d] = next(
                m for m in tgt.hom_set(f.obj_map[c], d) if inverse_of(tgt, m) is not None
            )

    def preimage(a: str, b: str, m: str) -> str:
        hits = [u for u in src.hom_set(a, b) if f.mor_map[u] == m]
        if len(hits) != 1:
            raise InternalCheckError("equivalence_preimage", f"no unique preimage of {m}")
        return hits[0]

    counit_inv = {d: inverse_of(tgt, counit_c[d]) for d in tgt.objects}
    g_mor: dict[str, str] = {}
    for k in tgt.morphisms:
        d, d2 = tgt.src[k], tgt.tgt[k]
        g_mor[k] = preimage(g_obj[d], g_obj[d2], tgt.comp(counit_inv[d2], tgt.comp(k, counit_c[d])))
    g = make_functor(tgt, src, g_obj, g_mor)
    unit_c = {x: preimage(x, g_obj[f.obj_map[x]], counit_inv[f.obj_map[x]]) for x in src.objects}
    unit = make_nat_trans(identity_functor(src), compose_functors(g, f), unit_c, require_iso=True)
    counit = make_nat_trans(compose_functors(f, g), identity_functor(tgt), counit_c, require_iso=True)
    # triangle identities, as exact equalities of composites
    for x in src.objects:
        if tgt.comp(counit_c[f.obj_map[x]], f.mor_map[unit_c[x]]) != tgt.identity[f.obj_map[x]]:
            raise InternalCheckError("triangle_identity", f"counit . F(unit) != id at {x}")
    for d in tgt.objects:
        if src.comp(g_mor[counit_c[d]], unit_c[g_obj[d]]) != src.identity[g_obj[d]]:
            raise InternalCheckError("triangle_identity", f"G(counit) . unit != id at {d}")
    return EquivalenceResult(True, None, {}, g, unit, counit)
