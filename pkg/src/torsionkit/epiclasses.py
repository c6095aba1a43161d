"""Classes of epimorphisms in a pointed category, viewed inside the arrow
category.

Fix a pointed finite category X and a class E of epimorphisms containing all
isomorphisms and all morphisms to a zero object.  E spans a full subcategory
of the arrow category of X; inside it the kernel-side (torsion) class is the
morphisms with zero-object target and the cokernel-side (free) class is the
isomorphisms, and the zero objects of the arrow category are exactly their
intersection.  Note the kernel side: an exact sequence on e has the shape

    (ker e -> 0)  >-->  (e: A -> B)  -->>  (B' ~ B)

so the zero-target morphisms play the torsion role and the isomorphisms the
torsion-free role.

The module decides, on finite instances, the equivalences between the
torsion-pair verdicts computed generically on the arrow category and direct
predicates on X: "every member is a cokernel and has a kernel" for the
torsion-theory verdict, and "every member is a product projection" for
rectangularity; plus the derived classifications when E is the class of
product projections, split epimorphisms, or regular epimorphisms.  Regular
epimorphisms are taken to be coequalizers of some parallel pair, found by
search; whether the ambient category is regular is reported as unchecked
context, not decided.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InternalCheckError, LawError
from .exactness import NullIdeal, is_cokernel_of, is_kernel_of, is_short_exact, kernel_rel, null_ideal
from .fincat import (
    DEFAULT_LIMITS,
    ArrowCat,
    FinCat,
    Limits,
    arrow_category,
    classify_morphism,
    find_extremal_objects,
)
from .pretorsion import PretorsionResult, check_pretorsion, is_rectangular


@dataclass(frozen=True, eq=False)
class EpiClassPresentation:
    base: FinCat
    members: tuple[str, ...]
    arrow: ArrowCat
    torsion_objects: tuple[str, ...]  # members with zero-object target
    free_objects: tuple[str, ...]  # members that are isomorphisms
    zero_ideal: NullIdeal  # on the base, generated by its zero objects
    base_zero_objects: tuple[str, ...]


def build_epiclass(
    base: FinCat, members: list[str] | tuple[str, ...], limits: Limits = DEFAULT_LIMITS
) -> EpiClassPresentation:
    """Validate the class and build the arrow category on it.

    Violations are reported, not repaired: every member must be an epi, and
    the class must contain all isomorphisms and all morphisms to a zero
    object.  The arrow category is asserted to be pointed with zero objects
    the zero-target isomorphisms.
    """
    ext = find_extremal_objects(base)
    if not ext.zero:
        raise LawError("not_pointed", f"{base.name} has no zero object", {})
    zeros = set(ext.zero)
    mem = tuple(m for m in base.morphisms if m in set(members))
    classes = {m: classify_morphism(base, m) for m in base.morphisms}
    for m in mem:
        if not classes[m].epi:
            raise LawError("non_epi_in_class", f"{m} is not an epimorphism", {"morphism": m})
    mem_set = set(mem)
    for m in base.morphisms:
        if classes[m].iso and m not in mem_set:
            raise LawError("missing_iso", f"isomorphism {m} is not in the class", {"morphism": m})
        if base.tgt[m] in zeros and m not in mem_set:
            raise LawError("missing_zero_target", f"zero-target morphism {m} is not in the class", {"morphism": m})
    arrow = arrow_category(base, mem, limits=limits)
    torsion = tuple(m for m in mem if base.tgt[m] in zeros)
    free = tuple(m for m in mem if classes[m].iso)
    arrow_ext = find_extremal_objects(arrow.cat)
    inter = tuple(m for m in torsion if m in set(free))
    if set(arrow_ext.zero) != set(inter):
        raise InternalCheckError(
            "arrow_zeros",
            f"zero objects of the arrow category {arrow_ext.zero} differ from the class intersection {inter}",
        )
    return EpiClassPresentation(
        base=base,
        members=mem,
        arrow=arrow,
        torsion_objects=torsion,
        free_objects=free,
        zero_ideal=null_ideal(base, ext.zero),
        base_zero_objects=ext.zero,
    )


def arrow_pretorsion(p: EpiClassPresentation) -> PretorsionResult:
    """The generic torsion-pair check on the arrow category."""
    return check_pretorsion(p.arrow.cat, list(p.torsion_objects), list(p.free_objects))


# ---------------------------------------------------------------------------
# exact-sequence shape criterion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShapeVerdict:
    in_scope: bool  # left object has zero target, right object is invertible
    shape_ok: bool
    generic_ok: bool

    @property
    def agree(self) -> bool:
        return self.shape_ok == self.generic_ok


def ses_shape_check(
    p: EpiClassPresentation, first: str, second: str, arrow_ideal: NullIdeal | None = None
) -> ShapeVerdict:
    """Shape criterion for a composable pair of squares around a member e,
    for candidates whose left object has a zero target and whose right
    object is invertible: exactness is equivalent to the top of the first
    square being a kernel of e, e being a cokernel of it, and the bottom of
    the second square being invertible.  The generic exactness check in the
    arrow category is always reported alongside.

    Outside that scope the criterion does not apply: kernels of null
    morphisms give exact pairs through identity legs whose outer objects
    need not have the displayed form.
    """
    acat = p.arrow.cat
    base = p.base
    if acat.tgt[first] != acat.src[second]:
        raise LawError("not_composable", "the two squares do not compose", {})
    if arrow_ideal is None:
        inter = [m for m in p.torsion_objects if m in set(p.free_objects)]
        arrow_ideal = null_ideal(acat, inter)
    w_obj = acat.src[first]
    v_obj = acat.tgt[second]
    a_top, _ = p.arrow.square_parts[first]
    _, q_bottom = p.arrow.square_parts[second]
    e = acat.tgt[first]
    zeros = set(p.base_zero_objects)
    in_scope = base.tgt[w_obj] in zeros and classify_morphism(base, v_obj).iso
    shape_ok = (
        in_scope
        and classify_morphism(base, q_bottom).iso
        and is_kernel_of(p.zero_ideal, a_top, e)
        and is_cokernel_of(p.zero_ideal, e, a_top)
    )
    generic_ok = is_short_exact(arrow_ideal, first, second).ok
    return ShapeVerdict(in_scope=in_scope, shape_ok=shape_ok, generic_ok=generic_ok)


# ---------------------------------------------------------------------------
# direct predicates on the base category
# ---------------------------------------------------------------------------


def has_kernel(p: EpiClassPresentation, e: str) -> bool:
    return bool(kernel_rel(p.zero_ideal, e))


def is_normal_epi(p: EpiClassPresentation, e: str) -> bool:
    """A cokernel of some morphism; when a kernel exists it suffices to test
    the kernel itself, and the general search is the fallback."""
    kernels = kernel_rel(p.zero_ideal, e)
    if kernels and is_cokernel_of(p.zero_ideal, e, kernels[0].kernel):
        return True
    base = p.base
    return any(is_cokernel_of(p.zero_ideal, e, w) for w in base.mor_in[base.src[e]])


def is_regular_epi(base: FinCat, e: str) -> bool:
    """A coequalizer of some parallel pair, by exhaustive search."""
    x = base.src[e]
    for w in base.objects:
        for u, v in itertools.product(base.hom_set(w, x), repeat=2):
            if base.comp(e, u) != base.comp(e, v):
                continue
            good = True
            for qm in base.mor_out[x]:
                if base.comp(qm, u) != base.comp(qm, v):
                    continue
                fills = [t for t in base.hom_set(base.tgt[e], base.tgt[qm]) if base.comp(t, e) == qm]
                if len(fills) != 1:
                    good = False
                    break
            if good:
                return True
    return False


@dataclass(frozen=True, eq=False)
class ProjectionVerdict:
    ok: bool
    complement: str | None
    second_leg: str | None
    table: dict[tuple[str, str], str]


def is_product_projection(base: FinCat, e: str) -> ProjectionVerdict:
    """Search for a complement W and a second leg making (e, w) a binary
    product cone; the witness carries the full universal-property table."""
    x = base.src[e]
    a = base.tgt[e]
    for w_obj in base.objects:
        for w in base.hom_set(x, w_obj):
            table: dict[tuple[str, str], str] = {}
            good = True
            for v in base.objects:
                for f in base.hom_set(v, a):
                    for g in base.hom_set(v, w_obj):
                        fills = [
                            h
                            for h in base.hom_set(v, x)
                            if base.comp(e, h) == f and base.comp(w, h) == g
                        ]
                        if len(fills) != 1:
                            good = False
                            break
                        table[(f, g)] = fills[0]
                    if not good:
                        break
                if not good:
                    break
            if good:
                return ProjectionVerdict(ok=True, complement=w_obj, second_leg=w, table=table)
    return ProjectionVerdict(ok=False, complement=None, second_leg=None, table={})


def has_binary_products(base: FinCat) -> bool:
    """Every pair of objects admits some product cone; decided by search."""
    for a, b in itertools.product(base.objects, repeat=2):
        found = False
        for pobj in base.objects:
            for pa in base.hom_set(pobj, a):
                for pb in base.hom_set(pobj, b):
                    good = True
                    for v in base.objects:
                        for f in base.hom_set(v, a):
                            for g in base.hom_set(v, b):
                                fills = [
                                    h
                                    for h in base.hom_set(v, pobj)
                                    if base.comp(pa, h) == f and base.comp(pb, h) == g
                                ]
                                if len(fills) != 1:
                                    good = False
                                    break
                            if not good:
                                break
                        if not good:
                            break
                    if good:
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if not found:
            return False
    return True


# ---------------------------------------------------------------------------
# theorem-level classifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TorsionClassReport:
    direct: bool
    direct_witness: dict
    generic: bool
    generic_witness: dict
    arrow_pointed: bool


def check_torsion_class(p: EpiClassPresentation) -> TorsionClassReport:
    """Direct predicate: every member is a cokernel in the base and has a
    kernel there.  Must coincide with the generic torsion-pair verdict on
    the arrow category (whose zero objects are the class intersection)."""
    direct = True
    direct_witness: dict = {}
    for e in p.members:
        if not has_kernel(p, e):
            direct, direct_witness = False, {"morphism": e, "reason": "no_kernel"}
            break
        if not is_normal_epi(p, e):
            direct, direct_witness = False, {"morphism": e, "reason": "not_a_cokernel"}
            break
    result = arrow_pretorsion(p)
    arrow_pointed = bool(find_extremal_objects(p.arrow.cat).zero)
    generic = result.ok and arrow_pointed
    if generic != direct:
        raise InternalCheckError(
            "torsion_class_cross_check",
            f"direct predicate {direct} disagrees with the arrow-category verdict {generic}",
        )
    return TorsionClassReport(
        direct=direct,
        direct_witness=direct_witness,
        generic=generic,
        generic_witness={} if result.ok else {"code": result.code, **result.witness},
        arrow_pointed=arrow_pointed,
    )


@dataclass(frozen=True, eq=False)
class MemberFlags:
    split_epi: bool
    regular_epi: bool
    normal_epi: bool
    has_kernel: bool
    product_projection: bool


@dataclass(frozen=True, eq=False)
class RectangularClassReport:
    member_flags: dict[str, MemberFlags]
    all_projections: bool
    all_normal: bool
    all_with_kernel: bool
    torsion_class: bool
    rectangular_generic: bool
    binary_products_complete: bool
    rectangular_agreement: bool  # rectangular <=> (all projections and binary products exist)
    class_is_all_projections: bool
    class_is_all_split_epis: bool
    class_is_all_regular_epis: bool
    regularity_hypothesis_checked: bool  # always False: ambient regularity is context, not decided


def check_rectangular_class(p: EpiClassPresentation, limits: Limits = DEFAULT_LIMITS) -> RectangularClassReport:
    """Rectangularity of the arrow-category pair against the direct
    product-projection predicate, plus the classifications of the class
    against the standard classes of epimorphisms.

    Rectangularity forces every member to be a product projection, and when
    the base has all binary products the converse holds as well; without
    them the converse can fail (the essential image of the canonical functor
    misses the pairs whose product does not exist), so the cross-validated
    equivalence carries the product-existence hypothesis explicitly.
    """
    base = p.base
    flags: dict[str, MemberFlags] = {}
    for e in p.members:
        flags[e] = MemberFlags(
            split_epi=classify_morphism(base, e).split_epi,
            regular_epi=is_regular_epi(base, e),
            normal_epi=is_normal_epi(p, e),
            has_kernel=has_kernel(p, e),
            product_projection=is_product_projection(base, e).ok,
        )
    all_projections = all(f.product_projection for f in flags.values())
    torsion = check_torsion_class(p)
    result = arrow_pretorsion(p)
    rectangular_generic = False
    if result.ok:
        rectangular_generic = is_rectangular(result.presentation, limits=limits).ok
    products = has_binary_products(base)
    if rectangular_generic and not all_projections:
        raise InternalCheckError(
            "rectangular_class_cross_check",
            "rectangular arrow-category pair with a member that is not a product projection",
        )
    rectangular_agreement = rectangular_generic == (all_projections and products)
    if not rectangular_agreement:
        raise InternalCheckError(
            "rectangular_class_cross_check",
            f"rectangularity {rectangular_generic} disagrees with projections {all_projections} "
            f"under complete binary products {products}",
        )
    split_epis = {m for m in base.morphisms if classify_morphism(base, m).split_epi}
    regular_epis = {m for m in base.morphisms if is_regular_epi(base, m)}
    projections = {m for m in base.morphisms if is_product_projection(base, m).ok}
    mem = set(p.members)
    return RectangularClassReport(
        member_flags=flags,
        all_projections=all_projections,
        all_normal=all(f.normal_epi for f in flags.values()),
        all_with_kernel=all(f.has_kernel for f in flags.values()),
        torsion_class=torsion.direct,
        rectangular_generic=rectangular_generic,
        binary_products_complete=products,
        rectangular_agreement=rectangular_agreement,
        class_is_all_projections=mem == projections,
        class_is_all_split_epis=mem == split_epis,
        class_is_all_regular_epis=mem == regular_epis,
        regularity_hypothesis_checked=False,
    )


def standard_class(base: FinCat, mode: str) -> tuple[str, ...]:
    """The members of a named class of morphisms of the base category."""
    if mode == "projections":
        return tuple(m for m in base.morphisms if is_product_projection(base, m).ok)
    if mode == "split":
        return tuple(m for m in base.morphisms if classify_morphism(base, m).split_epi)
    if mode == "regular":
        return tuple(m for m in base.morphisms if is_regular_epi(base, m))
    if mode == "minimal":
        ext = find_extremal_objects(base)
        zeros = set(ext.zero)
        return tuple(
            m
            for m in base.morphisms
            if classify_morphism(base, m).iso or base.tgt[m] in zeros
        )
    raise LawError("unknown_mode", f"unknown class mode {mode!r}", {"mode": mode})
