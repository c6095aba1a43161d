"""Null-morphism ideals and kernels, cokernels, short exact sequences
relative to such an ideal.

A null ideal is generated by a class of objects Z: its members are the
morphisms that factor through some object of Z.  Kernels and cokernels are
the usual universal properties, stated against null morphisms instead of
zero morphisms, and decided here by exhaustive search.  Certificates carry
the full universality tables so they can be re-checked independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InternalCheckError, LawError
from .fincat import FinCat, ProductCat, classify_morphism


@dataclass(frozen=True, eq=False)
class NullIdeal:
    base: FinCat
    generators: tuple[str, ...]
    members: frozenset[str]
    factorizations: dict[str, tuple[str, str, str]]  # member -> (first, middle object, second)


def null_ideal(cat: FinCat, generators: list[str] | tuple[str, ...]) -> NullIdeal:
    """Members are exactly the morphisms factoring through an object of the
    generating class; the stored witness is the first factorization in
    (middle object, first factor, second factor) order."""
    gens = tuple(o for o in cat.objects if o in set(generators))
    members: dict[str, tuple[str, str, str]] = {}
    for f in cat.morphisms:
        a, b = cat.src[f], cat.tgt[f]
        found = None
        for z in gens:
            for first in cat.hom_set(a, z):
                for second in cat.hom_set(z, b):
                    if cat.comp(second, first) == f:
                        found = (first, z, second)
                        break
                if found:
                    break
            if found:
                break
        if found:
            members[f] = found
    ideal = NullIdeal(base=cat, generators=gens, members=frozenset(members), factorizations=members)
    _assert_ideal_closure(ideal)
    return ideal


def _assert_ideal_closure(ideal: NullIdeal) -> None:
    cat = ideal.base
    for n in ideal.members:
        for g in cat.mor_out[cat.tgt[n]]:
            if cat.comp(g, n) not in ideal.members:
                raise InternalCheckError("ideal_closure", f"{g} . {n} escapes the ideal")
        for f in cat.mor_in[cat.src[n]]:
            if cat.comp(n, f) not in ideal.members:
                raise InternalCheckError("ideal_closure", f"{n} . {f} escapes the ideal")


def is_null(ideal: NullIdeal, f: str) -> tuple[bool, tuple[str, str, str] | None]:
    return (f in ideal.members, ideal.factorizations.get(f))


@dataclass(frozen=True, eq=False)
class KernelCertificate:
    kernel: str  # the morphism l with tgt(l) = src(r)
    of: str  # r
    universal: dict[str, str]  # u with r.u null  ->  the unique u' with l.u' = u


@dataclass(frozen=True, eq=False)
class CokernelCertificate:
    cokernel: str  # the morphism r with src(r) = tgt(l)
    of: str  # l
    universal: dict[str, str]  # v with v.l null  ->  the unique v' with v'.r = v


def _kernel_certificate(ideal: NullIdeal, l: str, r: str, null_in: list[str]) -> KernelCertificate | None:
    cat = ideal.base
    if cat.comp(r, l) not in ideal.members:
        return None
    table: dict[str, str] = {}
    for u in null_in:
        fills = [w for w in cat.hom_set(cat.src[u], cat.src[l]) if cat.comp(l, w) == u]
        if len(fills) != 1:
            return None
        table[u] = fills[0]
    return KernelCertificate(kernel=l, of=r, universal=table)


def _cokernel_certificate(ideal: NullIdeal, r: str, l: str, null_out: list[str]) -> CokernelCertificate | None:
    cat = ideal.base
    if cat.comp(r, l) not in ideal.members:
        return None
    table: dict[str, str] = {}
    for v in null_out:
        fills = [w for w in cat.hom_set(cat.tgt[r], cat.tgt[v]) if cat.comp(w, r) == v]
        if len(fills) != 1:
            return None
        table[v] = fills[0]
    return CokernelCertificate(cokernel=r, of=l, universal=table)


def is_kernel_of(ideal: NullIdeal, l: str, r: str) -> bool:
    """Does l satisfy the kernel universal property for r?"""
    cat = ideal.base
    if cat.tgt[l] != cat.src[r]:
        return False
    x = cat.src[r]
    null_in = [u for u in cat.mor_in[x] if cat.comp(r, u) in ideal.members]
    return _kernel_certificate(ideal, l, r, null_in) is not None


def is_cokernel_of(ideal: NullIdeal, r: str, l: str) -> bool:
    """Does r satisfy the cokernel universal property for l?"""
    cat = ideal.base
    if cat.src[r] != cat.tgt[l]:
        return False
    x = cat.tgt[l]
    null_out = [v for v in cat.mor_out[x] if cat.comp(v, l) in ideal.members]
    return _cokernel_certificate(ideal, r, l, null_out) is not None


def kernel_rel(ideal: NullIdeal, r: str) -> list[KernelCertificate]:
    """All kernels of r, canonical (earliest-declared) representative first.

    The returned kernels are pairwise isomorphic over src(r); this is
    re-asserted before returning.
    """
    cat = ideal.base
    x = cat.src[r]
    null_in = [u for u in cat.mor_in[x] if cat.comp(r, u) in ideal.members]
    certs = []
    for l in cat.mor_in[x]:
        cert = _kernel_certificate(ideal, l, r, null_in)
        if cert is not None:
            certs.append(cert)
    for c1, c2 in itertools.combinations(certs, 2):
        j = c2.universal[c1.kernel]
        j_back = c1.universal[c2.kernel]
        if (
            cat.comp(j_back, j) != cat.identity[cat.src[c1.kernel]]
            or cat.comp(j, j_back) != cat.identity[cat.src[c2.kernel]]
        ):
            raise InternalCheckError("kernel_uniqueness", f"kernels {c1.kernel} and {c2.kernel} of {r} not isomorphic")
    return certs


def cokernel_rel(ideal: NullIdeal, l: str) -> list[CokernelCertificate]:
    """All cokernels of l, canonical representative first; dual of kernel_rel."""
    cat = ideal.base
    y = cat.tgt[l]
    null_out = [v for v in cat.mor_out[y] if cat.comp(v, l) in ideal.members]
    certs = []
    for r in cat.mor_out[y]:
        cert = _cokernel_certificate(ideal, r, l, null_out)
        if cert is not None:
            certs.append(cert)
    for c1, c2 in itertools.combinations(certs, 2):
        j = c2.universal[c1.cokernel]
        j_back = c1.universal[c2.cokernel]
        if (
            cat.comp(j, j_back) != cat.identity[cat.tgt[c2.cokernel]]
            or cat.comp(j_back, j) != cat.identity[cat.tgt[c1.cokernel]]
        ):
            raise InternalCheckError("cokernel_uniqueness", f"cokernels of {l} not isomorphic")
    return certs


@dataclass(frozen=True, eq=False)
class SesRecord:
    torsion_object: str
    left: str
    middle: str
    right: str
    free_object: str
    kernel: KernelCertificate
    cokernel: CokernelCertificate


@dataclass(frozen=True, eq=False)
class SesVerdict:
    ok: bool
    code: str | None
    witness: dict
    record: SesRecord | None


def is_short_exact(ideal: NullIdeal, l: str, r: str) -> SesVerdict:
    """l must be a kernel of r and r a cokernel of l, relative to the ideal.

    Being mono (for l) and epi (for r) follow from the universal properties;
    they are re-asserted as derived facts on success.
    """
    cat = ideal.base
    if cat.tgt[l] != cat.src[r]:
        raise LawError("not_composable", f"{r} . {l} is not composable", {"l": l, "r": r})
    if cat.comp(r, l) not in ideal.members:
        return SesVerdict(False, "composite_not_null", {"l": l, "r": r}, None)
    x = cat.src[r]
    null_in = [u for u in cat.mor_in[x] if cat.comp(r, u) in ideal.members]
    kc = _kernel_certificate(ideal, l, r, null_in)
    if kc is None:
        bad = next(
            (
                u
                for u in null_in
                if len([w for w in cat.hom_set(cat.src[u], cat.src[l]) if cat.comp(l, w) == u]) != 1
            ),
            None,
        )
        return SesVerdict(False, "not_kernel", {"l": l, "r": r, "u": bad}, None)
    null_out = [v for v in cat.mor_out[x] if cat.comp(v, l) in ideal.members]
    cc = _cokernel_certificate(ideal, r, l, null_out)
    if cc is None:
        bad = next(
            (
                v
                for v in null_out
                if len([w for w in cat.hom_set(cat.tgt[r], cat.tgt[v]) if cat.comp(w, r) == v]) != 1
            ),
            None,
        )
        return SesVerdict(False, "not_cokernel", {"l": l, "r": r, "v": bad}, None)
    cls_l = classify_morphism(cat, l)
    cls_r = classify_morphism(cat, r)
    if not cls_l.mono or not cls_r.epi:
        raise InternalCheckError("ses_derived_flags", f"kernel {l} not mono or cokernel {r} not epi")
    record = SesRecord(
        torsion_object=cat.src[l],
        left=l,
        middle=x,
        right=r,
        free_object=cat.tgt[r],
        kernel=kc,
        cokernel=cc,
    )
    return SesVerdict(True, None, {}, record)


@dataclass(frozen=True, eq=False)
class ComponentwiseSesReport:
    product_ok: bool
    factor_ok: tuple[bool, ...]
    consistent: bool


def componentwise_ses_check(
    prod: ProductCat, ideals: list[NullIdeal], l: str, r: str
) -> ComponentwiseSesReport:
    """Exactness in a product holds iff it holds in every factor; any
    discrepancy is an internal consistency failure."""
    if len(ideals) != len(prod.factors):
        raise LawError("factor_mismatch", "one ideal per factor is required", {})
    for ideal, factor in zip(ideals, prod.factors):
        if ideal.base is not factor:
            raise LawError("factor_mismatch", "ideal does not live on the matching factor", {})
    gen_tuples = itertools.product(*[ideal.generators for ideal in ideals])
    product_ideal = null_ideal(prod.cat, [prod.obj_of[t] for t in gen_tuples])
    product_ok = is_short_exact(product_ideal, l, r).ok
    l_parts = prod.mor_tuple[l]
    r_parts = prod.mor_tuple[r]
    factor_ok = tuple(
        is_short_exact(ideal, lp, rp).ok for ideal, lp, rp in zip(ideals, l_parts, r_parts)
    )
    consistent = product_ok == all(factor_ok)
    if not consistent:
        raise InternalCheckError(
            "componentwise_ses",
            f"product exactness {product_ok} disagrees with factors {factor_ok} on ({l}, {r})",
        )
    return ComponentwiseSesReport(product_ok=product_ok, factor_ok=factor_ok, consistent=consistent)
