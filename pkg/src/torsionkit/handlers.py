"""Command handlers shared by the HTTP service and the CLI.

Each handler takes a request model and returns a Report.  Domain failures
(invalid category, failed axiom, incoherent algebra) become failing verdicts
with witnesses; unparseable input and size refusals raise and are mapped to
input errors by the callers; internal cross-check failures propagate, since
they signal bugs rather than properties of the input.
"""

from __future__ import annotations

import time
from typing import Callable

from . import bands as bands_mod
from .catformat import parse_band, parse_category, parse_functor_map, serialize_category
from .errors import FormatError, LawError, UnsupportedError
from .fincat import DEFAULT_LIMITS, Limits, assert_category_laws, product_category
from .pointed_monad import (
    build_pseudo_algebra,
    check_pseudo_algebra,
    roundtrip_from_algebra,
    roundtrip_from_presentation,
)
from .pretorsion import characterize_rectangular, check_pretorsion, check_pretorsion_morphism, is_rectangular
from .epiclasses import (
    build_epiclass,
    check_rectangular_class,
    check_torsion_class,
    ses_shape_check,
    standard_class,
)
from .exactness import null_ideal
from .schemas import (
    BandRequest,
    BaseRequest,
    CheckMorphismRequest,
    EnumerateBandsRequest,
    EpiclassRequest,
    PretorsionRequest,
    ProductRequest,
    Report,
    ValidateRequest,
)


def _limits(req: BaseRequest) -> Limits:
    if req.max_objects is None:
        return DEFAULT_LIMITS
    return Limits(max_objects=req.max_objects, max_morphisms=DEFAULT_LIMITS.max_morphisms)


def _finish(report: Report, req: BaseRequest, t0: float) -> Report:
    report.result = "pass" if report.verdicts and all(v == "pass" for v in report.verdicts.values()) else "fail"
    if req.timing:
        report.timing = time.perf_counter() - t0
    return report


def _subset(parsed, name: str, kind: str) -> tuple[str, ...]:
    if name not in parsed.subsets:
        raise FormatError("unknown_subset", f"no subset named {name!r} in the category file", {"subset": name})
    ids = parsed.subsets[name]
    pool = set(parsed.cat.objects) if kind == "objects" else set(parsed.cat.morphisms)
    for i in ids:
        if i not in pool:
            raise FormatError("subset_kind", f"subset {name!r} must contain only {kind}", {"subset": name, "id": i})
    return ids


def handle_validate(req: ValidateRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["validate"], result="fail")
    try:
        parsed = parse_category(req.category_text, _limits(req))
    except LawError as e:
        report.verdicts["laws"] = "fail"
        report.witnesses["laws"] = e.as_dict()
        return _finish(report, req, t0)
    report.verdicts["laws"] = "pass"
    report.info["objects"] = len(parsed.cat.objects)
    report.info["morphisms"] = len(parsed.cat.morphisms)
    report.info["subsets"] = sorted(parsed.subsets)
    return _finish(report, req, t0)


def handle_product(req: ProductRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["product"], result="fail")
    if not req.category_texts:
        raise FormatError("empty_factor_list", "at least one factor category is required", {})
    cats = []
    for i, text in enumerate(req.category_texts):
        try:
            cats.append(parse_category(text, _limits(req)).cat)
        except LawError as e:
            report.verdicts["factors"] = "fail"
            report.witnesses["factors"] = {"factor": i, **e.as_dict()}
            return _finish(report, req, t0)
    report.verdicts["factors"] = "pass"
    prod = product_category(cats, limits=_limits(req))
    assert_category_laws(prod.cat)
    report.verdicts["product_laws"] = "pass"
    report.info["objects"] = len(prod.cat.objects)
    report.info["morphisms"] = len(prod.cat.morphisms)
    if req.emit:
        report.info["category_text"] = serialize_category(prod.cat)
    return _finish(report, req, t0)


def _checked_presentation(report: Report, parsed, torsion, free):
    """Run the torsion-pair axioms, filling t1/t2 verdicts; None on failure."""
    try:
        result = check_pretorsion(parsed.cat, list(torsion), list(free))
    except UnsupportedError as e:
        report.verdicts["pretorsion"] = "unsupported"
        report.witnesses["pretorsion"] = e.as_dict()
        return None
    if not result.ok:
        if result.code == "t1_violation":
            report.verdicts["t1"] = "fail"
            report.witnesses["t1"] = result.witness
        else:
            report.verdicts["t1"] = "pass"
            report.verdicts["t2"] = "fail"
            report.witnesses["t2"] = result.witness
        return None
    report.verdicts["t1"] = "pass"
    report.verdicts["t2"] = "pass"
    p = result.presentation
    report.info["torsion"] = list(p.torsion)
    report.info["free"] = list(p.free)
    report.info["intersection"] = list(p.intersection)
    report.info["zero_witness"] = p.zero_witness
    report.info["torsion_was_replete"] = p.torsion_was_replete
    report.info["free_was_replete"] = p.free_was_replete
    report.info["ses"] = {
        x: [p.ses[x].torsion_object, p.ses[x].left, p.ses[x].right, p.ses[x].free_object]
        for x in p.base.objects
    }
    return p


def _parse_for_pretorsion(report: Report, req: PretorsionRequest):
    try:
        parsed = parse_category(req.category_text, _limits(req))
    except LawError as e:
        report.verdicts["category"] = "fail"
        report.witnesses["category"] = e.as_dict()
        return None, None, None
    torsion = _subset(parsed, req.torsion_subset, "objects")
    free = _subset(parsed, req.free_subset, "objects")
    report.verdicts["category"] = "pass"
    return parsed, torsion, free


def handle_check_pretorsion(req: PretorsionRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["check-pretorsion"], result="fail")
    parsed, torsion, free = _parse_for_pretorsion(report, req)
    if parsed is not None:
        _checked_presentation(report, parsed, torsion, free)
    return _finish(report, req, t0)


def handle_check_rectangular(req: PretorsionRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["check-rectangular"], result="fail")
    parsed, torsion, free = _parse_for_pretorsion(report, req)
    if parsed is None:
        return _finish(report, req, t0)
    p = _checked_presentation(report, parsed, torsion, free)
    if p is None:
        return _finish(report, req, t0)
    rect = is_rectangular(p, limits=_limits(req))
    if rect.ok:
        report.verdicts["rectangular"] = "pass"
        report.info["gamma"] = {
            x: list(rect.gamma.product.obj_tuple[rect.gamma.functor.obj_map[x]]) for x in p.base.objects
        }
    else:
        report.verdicts["rectangular"] = "fail"
        report.witnesses["rectangular"] = {"code": rect.equivalence.code, **rect.equivalence.witness}
    return _finish(report, req, t0)


def handle_characterize(req: PretorsionRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["characterize"], result="fail")
    parsed, torsion, free = _parse_for_pretorsion(report, req)
    if parsed is None:
        return _finish(report, req, t0)
    p = _checked_presentation(report, parsed, torsion, free)
    if p is None:
        return _finish(report, req, t0)
    char = characterize_rectangular(p, limits=_limits(req))
    if not char.rectangular:
        report.verdicts["rectangular"] = "fail"
        report.witnesses["rectangular"] = char.failure
        return _finish(report, req, t0)
    report.verdicts["rectangular"] = "pass"
    report.verdicts["intersection_lemma"] = (
        "pass"
        if char.intersection_pairwise_iso
        and char.hom_zz_singleton
        and char.zero_terminal_in_torsion
        and char.zero_initial_in_free
        else "fail"
    )
    report.verdicts["product_form"] = (
        "pass" if char.torsion_factor_ok and char.free_factor_ok and char.product_equivalent else "fail"
    )
    report.info["symmetrical"] = char.symmetrical
    report.info["pointed"] = char.pointed
    report.info["pointed_base"] = char.pointed_base
    report.info["identities_have_kernels_and_cokernels"] = char.identities_have_kernels_and_cokernels
    report.info["intersection"] = list(char.intersection_objects)
    return _finish(report, req, t0)


def handle_check_morphism(req: CheckMorphismRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["check-morphism"], result="fail")
    try:
        src = parse_category(req.source_text, _limits(req))
        dst = parse_category(req.target_text, _limits(req))
    except LawError as e:
        report.verdicts["categories"] = "fail"
        report.witnesses["categories"] = e.as_dict()
        return _finish(report, req, t0)
    report.verdicts["categories"] = "pass"
    ps = check_pretorsion(src.cat, list(_subset(src, req.source_torsion, "objects")), list(_subset(src, req.source_free, "objects")))
    pd = check_pretorsion(dst.cat, list(_subset(dst, req.target_torsion, "objects")), list(_subset(dst, req.target_free, "objects")))
    report.verdicts["source_pretorsion"] = "pass" if ps.ok else "fail"
    report.verdicts["target_pretorsion"] = "pass" if pd.ok else "fail"
    if not (ps.ok and pd.ok):
        return _finish(report, req, t0)
    try:
        functor = parse_functor_map(req.functor_text, src.cat, dst.cat)
    except LawError as e:
        report.verdicts["functor_laws"] = "fail"
        report.witnesses["functor_laws"] = e.as_dict()
        return _finish(report, req, t0)
    report.verdicts["functor_laws"] = "pass"
    result = check_pretorsion_morphism(ps.presentation, pd.presentation, functor)
    if result.ok:
        report.verdicts["morphism"] = "pass"
    else:
        report.verdicts["morphism"] = "fail"
        report.witnesses["morphism"] = {"code": result.code, **result.witness}
    return _finish(report, req, t0)


def handle_check_pseudoalgebra(req: PretorsionRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["check-pseudoalgebra"], result="fail")
    parsed, torsion, free = _parse_for_pretorsion(report, req)
    if parsed is None:
        return _finish(report, req, t0)
    p = _checked_presentation(report, parsed, torsion, free)
    if p is None:
        return _finish(report, req, t0)
    rect = is_rectangular(p, limits=_limits(req))
    report.verdicts["rectangular"] = "pass" if rect.ok else "fail"
    if not rect.ok:
        report.witnesses["rectangular"] = {"code": rect.equivalence.code, **rect.equivalence.witness}
        return _finish(report, req, t0)
    try:
        alg = build_pseudo_algebra(p, rect=rect, limits=_limits(req))
    except LawError as e:
        report.verdicts["bi_quasi_pointed"] = "fail"
        report.witnesses["bi_quasi_pointed"] = e.as_dict()
        return _finish(report, req, t0)
    report.verdicts["bi_quasi_pointed"] = "pass"
    coherence = check_pseudo_algebra(alg)
    for check in coherence.checks:
        report.verdicts[check.name] = "pass" if check.ok else "fail"
        if not check.ok:
            report.witnesses[check.name] = check.witness
    return _finish(report, req, t0)


def handle_roundtrip(req: PretorsionRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["roundtrip"], result="fail")
    parsed, torsion, free = _parse_for_pretorsion(report, req)
    if parsed is None:
        return _finish(report, req, t0)
    p = _checked_presentation(report, parsed, torsion, free)
    if p is None:
        return _finish(report, req, t0)
    rect = is_rectangular(p, limits=_limits(req))
    report.verdicts["rectangular"] = "pass" if rect.ok else "fail"
    if not rect.ok:
        report.witnesses["rectangular"] = {"code": rect.equivalence.code, **rect.equivalence.witness}
        return _finish(report, req, t0)
    try:
        alg = build_pseudo_algebra(p, rect=rect, limits=_limits(req))
    except LawError as e:
        report.verdicts["bi_quasi_pointed"] = "fail"
        report.witnesses["bi_quasi_pointed"] = e.as_dict()
        return _finish(report, req, t0)
    report.verdicts["bi_quasi_pointed"] = "pass"
    r1 = roundtrip_from_presentation(p, rect=rect, limits=_limits(req))
    report.verdicts["presentation_roundtrip"] = "pass" if r1.ok else "fail"
    r2 = roundtrip_from_algebra(alg, limits=_limits(req))
    report.verdicts["algebra_roundtrip"] = "pass" if r2.ok and r2.comparison_invertible else "fail"
    return _finish(report, req, t0)


def handle_check_band(req: BandRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["check-band"], result="fail")
    rows = parse_band(req.band_text)
    report.info["n"] = len(rows)
    try:
        bands_mod.check_band(rows)
    except LawError as e:
        report.verdicts["band_laws"] = "fail"
        report.witnesses["band_laws"] = e.as_dict()
        return _finish(report, req, t0)
    report.verdicts["band_laws"] = "pass"
    return _finish(report, req, t0)


def handle_decompose_band(req: BandRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["decompose-band"], result="fail")
    rows = parse_band(req.band_text)
    report.info["n"] = len(rows)
    try:
        band = bands_mod.check_band(rows)
    except LawError as e:
        report.verdicts["band_laws"] = "fail"
        report.witnesses["band_laws"] = e.as_dict()
        return _finish(report, req, t0)
    report.verdicts["band_laws"] = "pass"
    dec = bands_mod.decompose_band(band)
    report.verdicts["decomposition"] = "pass"
    report.info["p"] = dec.p
    report.info["q"] = dec.q
    report.info["pairs"] = [list(pq) for pq in dec.pair_of]
    return _finish(report, req, t0)


def handle_enumerate_bands(req: EnumerateBandsRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["enumerate-bands"], result="fail")
    enum = bands_mod.enumerate_rectangular_bands(req.size)
    report.verdicts["enumeration"] = "pass"
    report.verdicts["law_equivalence"] = "pass"  # asserted during the scan
    report.verdicts["decompositions"] = "pass" if all(d.p * d.q == req.size for d in enum.decompositions) else "fail"
    report.info["n"] = enum.n
    report.info["scanned"] = enum.scanned
    report.info["count"] = len(enum.bands)
    report.info["shapes"] = [[d.p, d.q] for d in enum.decompositions]
    return _finish(report, req, t0)


def handle_check_epiclass(req: EpiclassRequest) -> Report:
    t0 = time.perf_counter()
    report = Report(command=["check-epiclass"], result="fail")
    try:
        parsed = parse_category(req.category_text, _limits(req))
    except LawError as e:
        report.verdicts["category"] = "fail"
        report.witnesses["category"] = e.as_dict()
        return _finish(report, req, t0)
    report.verdicts["category"] = "pass"
    if req.mode == "explicit":
        if req.subset is None:
            raise FormatError("missing_subset", "explicit mode needs a subset of morphisms", {})
        members = _subset(parsed, req.subset, "morphisms")
    else:
        members = standard_class(parsed.cat, req.mode)
    report.info["members"] = list(members)
    try:
        p = build_epiclass(parsed.cat, members, limits=_limits(req))
    except LawError as e:
        report.verdicts["class_valid"] = "fail"
        report.witnesses["class_valid"] = e.as_dict()
        return _finish(report, req, t0)
    report.verdicts["class_valid"] = "pass"
    tc = check_torsion_class(p)
    report.verdicts["torsion_class"] = "pass" if tc.direct else "fail"
    if not tc.direct:
        report.witnesses["torsion_class"] = tc.direct_witness
    rc = check_rectangular_class(p, limits=_limits(req))
    report.verdicts["rectangular_class"] = "pass" if rc.rectangular_generic else "fail"
    report.verdicts["cross_validation"] = "pass" if rc.rectangular_agreement else "fail"
    acat = p.arrow.cat
    inter = [m for m in p.torsion_objects if m in set(p.free_objects)]
    arrow_ideal = null_ideal(acat, inter)
    shape_agree = True
    for s1 in acat.morphisms:
        for s2 in acat.mor_out[acat.tgt[s1]]:
            v = ses_shape_check(p, s1, s2, arrow_ideal)
            if v.in_scope and not v.agree:
                shape_agree = False
    report.verdicts["shape_criterion"] = "pass" if shape_agree else "fail"
    report.info["arrow_objects"] = len(acat.objects)
    report.info["arrow_morphisms"] = len(acat.morphisms)
    report.info["binary_products_complete"] = rc.binary_products_complete
    report.info["all_projections"] = rc.all_projections
    report.info["all_normal"] = rc.all_normal
    report.info["class_is_all_projections"] = rc.class_is_all_projections
    report.info["class_is_all_split_epis"] = rc.class_is_all_split_epis
    report.info["class_is_all_regular_epis"] = rc.class_is_all_regular_epis
    report.info["member_flags"] = {
        e: {
            "split_epi": f.split_epi,
            "regular_epi": f.regular_epi,
            "normal_epi": f.normal_epi,
            "has_kernel": f.has_kernel,
            "product_projection": f.product_projection,
        }
        for e, f in rc.member_flags.items()
    }
    return _finish(report, req, t0)


HANDLERS: dict[str, tuple[type[BaseRequest], Callable]] = {
    "validate": (ValidateRequest, handle_validate),
    "product": (ProductRequest, handle_product),
    "check-pretorsion": (PretorsionRequest, handle_check_pretorsion),
    "check-rectangular": (PretorsionRequest, handle_check_rectangular),
    "characterize": (PretorsionRequest, handle_characterize),
    "check-morphism": (CheckMorphismRequest, handle_check_morphism),
    "check-pseudoalgebra": (PretorsionRequest, handle_check_pseudoalgebra),
    "roundtrip": (PretorsionRequest, handle_roundtrip),
    "check-band": (BandRequest, handle_check_band),
    "decompose-band": (BandRequest, handle_decompose_band),
    "enumerate-bands": (EnumerateBandsRequest, handle_enumerate_bands),
    "check-epiclass": (EpiclassRequest, handle_check_epiclass),
}
