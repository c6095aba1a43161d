"""The squaring 2-monad on bi-quasi-pointed categories, at instance level.

The monad sends a category to its square; the unit is the diagonal and the
multiplication projects a double square onto its first and fourth
components.  A pseudo-algebra is a structure functor Q: C x C -> C with
invertible comparison cells

    q_mu : Q . (Q x Q)  =>  Q . pi_14        (one per object quadruple)
    q_eta: Id           =>  Q . diagonal     (one per object)

subject to one associativity pasting and the unit pastings (we check the
unit law in both whiskered forms; each follows from the other together with
the associativity axiom, and checking both keeps the validator symmetric).

Rectangular presentations give pseudo-algebras (via the adjoint equivalence
onto T x F) and coherent pseudo-algebras give back rectangular presentations
(torsion = essential image of Q(-, 0), free = essential image of Q(1, -));
both directions and the comparison cells between the round trips are
verified here by full enumeration.

Comparison cells indexed by squares or cubes of the base category are stored
as plain component tables keyed by object tuples; the underlying iterated
product categories are never materialized beyond the first square, since the
checks only ever need component values and composition in the base.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InternalCheckError, LawError
from .exactness import is_short_exact
from .fincat import (
    DEFAULT_LIMITS,
    FinCat,
    FunctorData,
    Limits,
    ProductCat,
    compose_functors,
    diagonal_functor,
    find_extremal_objects,
    functor_maps_equal,
    identity_functor,
    inverse_of,
    is_bi_quasi_pointed,
    make_functor,
    product_category,
    product_of_functors,
    replete_closure,
)
from .pretorsion import (
    LambdaData,
    PretorsionMorphism,
    PretorsionPresentation,
    RectangularityResult,
    check_pretorsion,
    induced_parts,
    is_rectangular,
    lambda_for_morphism,
)


# ---------------------------------------------------------------------------
# the monad itself
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MonadInstance:
    base: FinCat
    square: ProductCat  # C x C
    square2: ProductCat  # (C x C) x (C x C)
    eta: FunctorData  # diagonal C -> C x C
    mu: FunctorData  # first-and-fourth projection (C x C) x (C x C) -> C x C
    pointed: bool


def _pi14(square2: ProductCat, square: ProductCat) -> FunctorData:
    obj_map = {}
    for w, (a, b) in square2.obj_tuple.items():
        ta = square.obj_tuple[a]
        tb = square.obj_tuple[b]
        obj_map[w] = square.obj_of[(ta[0], tb[1])]
    mor_map = {}
    for w, (a, b) in square2.mor_tuple.items():
        ta = square.mor_tuple[a]
        tb = square.mor_tuple[b]
        mor_map[w] = square.mor_of[(ta[0], tb[1])]
    return make_functor(square2.cat, square.cat, obj_map, mor_map)


def monad_instance(cat: FinCat, limits: Limits = DEFAULT_LIMITS) -> MonadInstance:
    """Build the square, diagonal and projection data and assert the monad
    laws as exact functor equalities, by full enumeration of tuples."""
    bqp = is_bi_quasi_pointed(cat)
    if not bqp.ok:
        raise LawError("not_bi_quasi_pointed", f"monad instance needs a bi-quasi-pointed base: {bqp.code}", {})
    square = product_category([cat, cat], limits=limits, name=f"M({cat.name})")
    square2 = product_category([square.cat, square.cat], limits=limits, name=f"MM({cat.name})")
    eta = make_functor(
        cat,
        square.cat,
        {o: square.obj_of[(o, o)] for o in cat.objects},
        {m: square.mor_of[(m, m)] for m in cat.morphisms},
    )
    mu = _pi14(square2, square)
    # unit laws: mu . M(eta) = id = mu . eta_{M}
    m_eta = product_of_functors([eta, eta], square, square2)
    if not functor_maps_equal(compose_functors(mu, m_eta), identity_functor(square.cat)):
        raise InternalCheckError("monad_unit", "mu . M(eta) is not the identity")
    eta_m = diagonal_functor(square.cat, square2)
    if not functor_maps_equal(compose_functors(mu, eta_m), identity_functor(square.cat)):
        raise InternalCheckError("monad_unit", "mu . eta_M is not the identity")
    # associativity: mu . M(mu) = mu . mu_M on the triple square, enumerated
    # over pairs of double-square cells without materializing the cube
    for pool in (square2.cat.objects, square2.cat.morphisms):
        is_obj = pool is square2.cat.objects
        mu_map = mu.obj_map if is_obj else mu.mor_map
        of_2 = square2.obj_of if is_obj else square2.mor_of
        tup_2 = square2.obj_tuple if is_obj else square2.mor_tuple
        for a in pool:
            for b in pool:
                via_m_mu = mu_map[of_2[(mu_map[a], mu_map[b])]]
                via_mu_m = mu_map[of_2[(tup_2[a][0], tup_2[b][1])]]
                if via_m_mu != via_mu_m:
                    raise InternalCheckError("monad_associativity", f"associativity fails at ({a}, {b})")
    pointed = bool(find_extremal_objects(cat).zero)
    return MonadInstance(base=cat, square=square, square2=square2, eta=eta, mu=mu, pointed=pointed)


# ---------------------------------------------------------------------------
# pseudo-algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PseudoAlgebraData:
    base: FinCat
    square: ProductCat  # C x C, the domain of the structure functor
    structure: FunctorData  # Q : C x C -> C
    mult_cell: dict[tuple[str, str, str, str], str]  # q_mu components by object quadruple
    unit_cell: dict[str, str]  # q_eta components by object

    def q_obj(self, x: str, y: str) -> str:
        return self.structure.obj_map[self.square.obj_of[(x, y)]]

    def q_mor(self, m1: str, m2: str) -> str:
        return self.structure.mor_map[self.square.mor_of[(m1, m2)]]


@dataclass(frozen=True)
class CoherenceCheck:
    name: str
    ok: bool
    witness: dict


@dataclass(frozen=True, eq=False)
class CoherenceReport:
    ok: bool
    checks: tuple[CoherenceCheck, ...]

    def first_failure(self) -> CoherenceCheck | None:
        return next((c for c in self.checks if not c.ok), None)


def check_pseudo_algebra(alg: PseudoAlgebraData) -> CoherenceReport:
    """Verify structure, naturality, invertibility and both coherence
    pastings by full enumeration; each check reports its first witness."""
    cat = alg.base
    checks: list[CoherenceCheck] = []

    bqp = is_bi_quasi_pointed(cat)
    checks.append(CoherenceCheck("base_bi_quasi_pointed", bqp.ok, {} if bqp.ok else {"code": bqp.code}))

    ext = find_extremal_objects(cat)
    ext_sq = find_extremal_objects(alg.square.cat)
    pres_initial = all(alg.structure.obj_map[o] in set(ext.initial) for o in ext_sq.initial)
    pres_terminal = all(alg.structure.obj_map[o] in set(ext.terminal) for o in ext_sq.terminal)
    checks.append(CoherenceCheck("preserves_initial", pres_initial, {}))
    checks.append(CoherenceCheck("preserves_terminal", pres_terminal, {}))

    ok_unit = True
    wit: dict = {}
    for x in cat.objects:
        c = alg.unit_cell.get(x)
        if (
            c is None
            or cat.src[c] != x
            or cat.tgt[c] != alg.q_obj(x, x)
            or inverse_of(cat, c) is None
        ):
            ok_unit, wit = False, {"object": x}
            break
    checks.append(CoherenceCheck("unit_cell_iso", ok_unit, wit))

    ok_mu = True
    wit = {}
    for quad in itertools.product(cat.objects, repeat=4):
        c = alg.mult_cell.get(quad)
        src_obj = alg.q_obj(alg.q_obj(quad[0], quad[1]), alg.q_obj(quad[2], quad[3]))
        tgt_obj = alg.q_obj(quad[0], quad[3])
        if c is None or cat.src[c] != src_obj or cat.tgt[c] != tgt_obj or inverse_of(cat, c) is None:
            ok_mu, wit = False, {"quadruple": list(quad)}
            break
    checks.append(CoherenceCheck("mult_cell_iso", ok_mu, wit))

    ok_nat = True
    wit = {}
    if ok_unit:
        for m in cat.morphisms:
            x, y = cat.src[m], cat.tgt[m]
            if cat.comp(alg.q_mor(m, m), alg.unit_cell[x]) != cat.comp(alg.unit_cell[y], m):
                ok_nat, wit = False, {"morphism": m}
                break
    checks.append(CoherenceCheck("unit_cell_natural", ok_unit and ok_nat, wit))

    ok_nat_mu = True
    wit = {}
    if ok_mu:
        for quad in itertools.product(cat.morphisms, repeat=4):
            src_quad = tuple(cat.src[m] for m in quad)
            tgt_quad = tuple(cat.tgt[m] for m in quad)
            left = alg.q_mor(alg.q_mor(quad[0], quad[1]), alg.q_mor(quad[2], quad[3]))
            right = alg.q_mor(quad[0], quad[3])
            if cat.comp(alg.mult_cell[tgt_quad], left) != cat.comp(right, alg.mult_cell[src_quad]):
                ok_nat_mu, wit = False, {"quadruple": list(quad)}
                break
    checks.append(CoherenceCheck("mult_cell_natural", ok_mu and ok_nat_mu, wit))

    structure_ok = ok_unit and ok_mu
    # unit pasting through the doubled diagonal: Q(q_eta, q_eta) then q_mu
    ok_a = True
    wit = {}
    if structure_ok:
        for x, y in itertools.product(cat.objects, repeat=2):
            target = cat.identity[alg.q_obj(x, y)]
            got = cat.comp(alg.mult_cell[(x, x, y, y)], alg.q_mor(alg.unit_cell[x], alg.unit_cell[y]))
            if got != target:
                ok_a, wit = False, {"pair": [x, y]}
                break
    checks.append(CoherenceCheck("unit_axiom_doubled", structure_ok and ok_a, wit))

    # unit pasting through the diagonal of the square: q_eta at Q(x, y)
    ok_b = True
    wit = {}
    if structure_ok:
        for x, y in itertools.product(cat.objects, repeat=2):
            q = alg.q_obj(x, y)
            target = cat.identity[q]
            got = cat.comp(alg.mult_cell[(x, y, x, y)], alg.unit_cell[q])
            if got != target:
                ok_b, wit = False, {"pair": [x, y]}
                break
    checks.append(CoherenceCheck("unit_axiom_square", structure_ok and ok_b, wit))

    ok_assoc = True
    wit = {}
    if structure_ok:
        qo = alg.q_obj
        mult = alg.mult_cell
        for oct_ in itertools.product(cat.objects, repeat=8):
            x1, x2, x3, x4, x5, x6, x7, x8 = oct_
            q12, q34 = qo(x1, x2), qo(x3, x4)
            q56, q78 = qo(x5, x6), qo(x7, x8)
            lhs = cat.comp(mult[(x1, x2, x7, x8)], mult[(q12, q34, q56, q78)])
            rhs = cat.comp(
                mult[(x1, x4, x5, x8)],
                alg.q_mor(mult[(x1, x2, x3, x4)], mult[(x5, x6, x7, x8)]),
            )
            if lhs != rhs:
                ok_assoc, wit = False, {"octuple": list(oct_)}
                break
    checks.append(CoherenceCheck("associativity_axiom", structure_ok and ok_assoc, wit))

    return CoherenceReport(ok=all(c.ok for c in checks), checks=tuple(checks))


# ---------------------------------------------------------------------------
# presentations -> algebras
# ---------------------------------------------------------------------------


def build_pseudo_algebra(
    p: PretorsionPresentation,
    rect: RectangularityResult | None = None,
    square: ProductCat | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> PseudoAlgebraData:
    """Structure functor through the adjoint equivalence onto T x F: a pair
    goes to the object rebuilt from the torsion part of the first and the
    free part of the second; comparison cells come from the counit and unit."""
    cat = p.base
    bqp = is_bi_quasi_pointed(cat)
    if not bqp.ok:
        raise LawError("not_bi_quasi_pointed", f"pseudo-algebras need a bi-quasi-pointed base: {bqp.code}", {})
    rect = rect or is_rectangular(p, limits=limits)
    if not rect.ok:
        raise LawError("not_rectangular", "only rectangular presentations give pseudo-algebras", {})
    square = square or product_category([cat, cat], limits=limits, name=f"M({cat.name})")
    tf = rect.gamma.product
    tf2 = product_category([tf.cat, tf.cat], limits=limits, name=f"({tf.cat.name})^2")
    gxg = product_of_functors([rect.gamma.functor, rect.gamma.functor], square, tf2)
    pi14 = _pi14(tf2, tf)
    gamma_prime = rect.equivalence.inverse
    composite = compose_functors(gamma_prime, compose_functors(pi14, gxg))
    structure = make_functor(square.cat, cat, composite.obj_map, composite.mor_map)
    counit = rect.equivalence.counit
    unit = rect.equivalence.unit
    mult_cell: dict[tuple[str, str, str, str], str] = {}
    for quad in itertools.product(cat.objects, repeat=4):
        x1, x2, x3, x4 = quad
        w12 = tf.obj_of[(p.ses[x1].torsion_object, p.ses[x2].free_object)]
        w34 = tf.obj_of[(p.ses[x3].torsion_object, p.ses[x4].free_object)]
        c12_first = tf.mor_tuple[counit.components[w12]][0]
        c34_second = tf.mor_tuple[counit.components[w34]][1]
        mult_cell[quad] = gamma_prime.mor_map[tf.mor_of[(c12_first, c34_second)]]
    unit_cell = {x: unit.components[x] for x in cat.objects}
    return PseudoAlgebraData(
        base=cat, square=square, structure=structure, mult_cell=mult_cell, unit_cell=unit_cell
    )


def free_algebra(cat: FinCat, limits: Limits = DEFAULT_LIMITS) -> PseudoAlgebraData:
    """The square of a bi-quasi-pointed category with the projection as a
    strict structure map; all comparison cells are identities."""
    inst = monad_instance(cat, limits=limits)
    carrier = inst.square.cat
    carrier_square = inst.square2
    structure = inst.mu
    unit_cell = {w: carrier.identity[w] for w in carrier.objects}
    mult_cell: dict[tuple[str, str, str, str], str] = {}
    for quad in itertools.product(carrier.objects, repeat=4):
        src_obj = structure.obj_map[
            carrier_square.obj_of[
                (
                    structure.obj_map[carrier_square.obj_of[(quad[0], quad[1])]],
                    structure.obj_map[carrier_square.obj_of[(quad[2], quad[3])]],
                )
            ]
        ]
        mult_cell[quad] = carrier.identity[src_obj]
    return PseudoAlgebraData(
        base=carrier,
        square=carrier_square,
        structure=structure,
        mult_cell=mult_cell,
        unit_cell=unit_cell,
    )


# ---------------------------------------------------------------------------
# algebras -> presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExtractionResult:
    presentation: PretorsionPresentation
    rect: RectangularityResult
    structure_sequences_ok: bool
    canonical_vs_structure_first: dict[str, str]  # X -> iso T^X -> Q(X, 0)
    canonical_vs_structure_second: dict[str, str]  # X -> iso F^X -> Q(1, X)
    independence_comparisons: int  # preimage pairs compared for the retraction isos


def _structure_iso_independence(alg: PseudoAlgebraData, o0: str, o1: str) -> int:
    """The canonical retraction isos built from the multiplication cell do
    not depend on the chosen essential preimage: for a torsion-side object t
    every pair (x, j) with j: t ~ Q(x, 0) yields, through

        Q(t, 0) -> Q(Q(x, 0), Q(0, 0)) -> Q(x, 0) -> t,

    the same morphism; dually on the free side.  Returns the number of
    comparisons performed (0 when every object has a single preimage)."""
    cat = alg.base
    q00 = alg.q_obj(o0, o0)
    q11 = alg.q_obj(o1, o1)
    u0 = cat.hom_set(o0, q00)[0]
    u1 = cat.hom_set(o1, q11)[0]
    chains_t: dict[str, list[str]] = {}
    chains_f: dict[str, list[str]] = {}
    for x in cat.objects:
        qx0 = alg.q_obj(x, o0)
        q1x = alg.q_obj(o1, x)
        for t in cat.objects:
            for j in cat.hom_set(t, qx0):
                j_inv = inverse_of(cat, j)
                if j_inv is None:
                    continue
                chain = cat.comp(j_inv, cat.comp(alg.mult_cell[(x, o0, o0, o0)], alg.q_mor(j, u0)))
                chains_t.setdefault(t, []).append(chain)
        for f in cat.objects:
            for j in cat.hom_set(f, q1x):
                j_inv = inverse_of(cat, j)
                if j_inv is None:
                    continue
                chain = cat.comp(j_inv, cat.comp(alg.mult_cell[(o1, o1, o1, x)], alg.q_mor(u1, j)))
                chains_f.setdefault(f, []).append(chain)
    comparisons = 0
    for pool in (chains_t, chains_f):
        for obj, values in pool.items():
            comparisons += len(values) - 1
            if len(set(values)) > 1:
                raise InternalCheckError(
                    "independence", f"retraction iso at {obj} depends on the chosen preimage"
                )
    return comparisons


def _unique_fill(cat: FinCat, a: str, b: str, predicate) -> str:
    hits = [w for w in cat.hom_set(a, b) if predicate(w)]
    if len(hits) != 1:
        raise InternalCheckError("unique_fill", f"expected a unique fill-in {a} -> {b}, found {len(hits)}")
    return hits[0]


def algebra_to_pretorsion(alg: PseudoAlgebraData, limits: Limits = DEFAULT_LIMITS) -> ExtractionResult:
    """Torsion objects are the essential image of pairing with the initial
    object on the right, free objects of pairing with the terminal object on
    the left.  The structure map also provides an exact sequence through the
    unit cell for every object; these are verified, and the canonical parts
    are connected to the structure parts by unique isomorphisms."""
    report = check_pseudo_algebra(alg)
    if not report.ok:
        bad = report.first_failure()
        raise LawError("incoherent_algebra", f"coherence fails: {bad.name}", bad.witness)
    cat = alg.base
    ext = find_extremal_objects(cat)
    o0, o1 = ext.initial[0], ext.terminal[0]
    torsion = replete_closure(cat, [alg.q_obj(x, o0) for x in cat.objects])
    free = replete_closure(cat, [alg.q_obj(o1, x) for x in cat.objects])
    result = check_pretorsion(cat, torsion, free)
    if not result.ok:
        raise InternalCheckError(
            "algebra_extraction", f"extracted classes are not a torsion pair: {result.code} {result.witness}"
        )
    pres = result.presentation
    rect = is_rectangular(pres, limits=limits)
    if not rect.ok:
        raise InternalCheckError("algebra_extraction", "extracted torsion pair is not rectangular")
    first: dict[str, str] = {}
    second: dict[str, str] = {}
    for x in cat.objects:
        bang0 = cat.hom_set(o0, x)[0]
        bang1 = cat.hom_set(x, o1)[0]
        unit_inv = inverse_of(cat, alg.unit_cell[x])
        left = cat.comp(unit_inv, alg.q_mor(cat.identity[x], bang0))
        right = cat.comp(alg.q_mor(bang1, cat.identity[x]), alg.unit_cell[x])
        if not is_short_exact(pres.ideal, left, right).ok:
            raise InternalCheckError("algebra_extraction", f"structure sequence at {x} is not exact")
        rec = pres.ses[x]
        first[x] = _unique_fill(
            cat, rec.torsion_object, alg.q_obj(x, o0), lambda w: cat.comp(left, w) == rec.left
        )
        second[x] = _unique_fill(
            cat, rec.free_object, alg.q_obj(o1, x), lambda w: cat.comp(w, rec.right) == right
        )
        if inverse_of(cat, first[x]) is None or inverse_of(cat, second[x]) is None:
            raise InternalCheckError("algebra_extraction", f"comparison at {x} is not invertible")
    # naturality of the comparison with the structure pairs
    for h in cat.morphisms:
        x, y = cat.src[h], cat.tgt[h]
        ht, hf = induced_parts(pres, h)
        lhs1 = cat.comp(first[y], ht)
        rhs1 = cat.comp(alg.q_mor(h, cat.identity[o0]), first[x])
        lhs2 = cat.comp(second[y], hf)
        rhs2 = cat.comp(alg.q_mor(cat.identity[o1], h), second[x])
        if lhs1 != rhs1 or lhs2 != rhs2:
            raise InternalCheckError("algebra_extraction", f"comparison not natural at {h}")
    comparisons = _structure_iso_independence(alg, o0, o1)
    return ExtractionResult(
        presentation=pres,
        rect=rect,
        structure_sequences_ok=True,
        canonical_vs_structure_first=first,
        canonical_vs_structure_second=second,
        independence_comparisons=comparisons,
    )


# ---------------------------------------------------------------------------
# pseudo-morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PseudoMorphismReport:
    ok: bool
    invertible: bool
    checks: tuple[CoherenceCheck, ...]


def check_pseudo_morphism(
    src: PseudoAlgebraData,
    tgt: PseudoAlgebraData,
    functor: FunctorData,
    cell: dict[tuple[str, str], str],
) -> PseudoMorphismReport:
    """Verify the comparison cell of a lax morphism of algebras: typing,
    naturality, compatibility with both comparison cells, invertibility."""
    c, d = src.base, tgt.base
    checks: list[CoherenceCheck] = []

    ok = True
    wit: dict = {}
    for x, y in itertools.product(c.objects, repeat=2):
        m = cell.get((x, y))
        src_obj = tgt.q_obj(functor.obj_map[x], functor.obj_map[y])
        tgt_obj = functor.obj_map[src.q_obj(x, y)]
        if m is None or d.src[m] != src_obj or d.tgt[m] != tgt_obj:
            ok, wit = False, {"pair": [x, y]}
            break
    checks.append(CoherenceCheck("cell_typing", ok, wit))
    typing_ok = ok

    ok, wit = True, {}
    if typing_ok:
        for m1, m2 in itertools.product(c.morphisms, repeat=2):
            sx, sy = c.src[m1], c.src[m2]
            tx, ty = c.tgt[m1], c.tgt[m2]
            lhs = d.comp(functor.mor_map[src.q_mor(m1, m2)], cell[(sx, sy)])
            rhs = d.comp(cell[(tx, ty)], tgt.q_mor(functor.mor_map[m1], functor.mor_map[m2]))
            if lhs != rhs:
                ok, wit = False, {"pair": [m1, m2]}
                break
    checks.append(CoherenceCheck("cell_natural", typing_ok and ok, wit))

    ok, wit = True, {}
    if typing_ok:
        for quad in itertools.product(c.objects, repeat=4):
            x1, x2, x3, x4 = quad
            g_quad = tuple(functor.obj_map[x] for x in quad)
            q12, q34 = src.q_obj(x1, x2), src.q_obj(x3, x4)
            lhs = d.comp(cell[(x1, x4)], tgt.mult_cell[g_quad])
            rhs = d.comp(
                functor.mor_map[src.mult_cell[quad]],
                d.comp(cell[(q12, q34)], tgt.q_mor(cell[(x1, x2)], cell[(x3, x4)])),
            )
            if lhs != rhs:
                ok, wit = False, {"quadruple": list(quad)}
                break
    checks.append(CoherenceCheck("mult_compatibility", typing_ok and ok, wit))

    ok, wit = True, {}
    if typing_ok:
        for x in c.objects:
            lhs = d.comp(cell[(x, x)], tgt.unit_cell[functor.obj_map[x]])
            rhs = functor.mor_map[src.unit_cell[x]]
            if lhs != rhs:
                ok, wit = False, {"object": x}
                break
    checks.append(CoherenceCheck("unit_compatibility", typing_ok and ok, wit))

    invertible = typing_ok and all(
        inverse_of(d, cell[(x, y)]) is not None for x, y in itertools.product(c.objects, repeat=2)
    )
    return PseudoMorphismReport(ok=all(ch.ok for ch in checks), invertible=invertible, checks=tuple(checks))


@dataclass(frozen=True, eq=False)
class PseudoMorphismData:
    functor: FunctorData
    cell: dict[tuple[str, str], str]
    report: PseudoMorphismReport


def compose_pseudo_morphism_cells(
    outer: PseudoMorphismData, inner: PseudoMorphismData
) -> dict[tuple[str, str], str]:
    """Comparison cell of a composite: the outer functor applied to the inner
    cell, after the outer cell at the inner functor's image."""
    d = outer.functor.target
    cell: dict[tuple[str, str], str] = {}
    for (x, y), inner_m in inner.cell.items():
        gx = inner.functor.obj_map[x]
        gy = inner.functor.obj_map[y]
        cell[(x, y)] = d.comp(outer.functor.mor_map[inner_m], outer.cell[(gx, gy)])
    return cell


def pseudo_morphism_from_functor(
    p: PretorsionPresentation,
    q: PretorsionPresentation,
    morphism: PretorsionMorphism,
    rect_p: RectangularityResult | None = None,
    rect_q: RectangularityResult | None = None,
    alg_p: PseudoAlgebraData | None = None,
    alg_q: PseudoAlgebraData | None = None,
    lam: LambdaData | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> PseudoMorphismData:
    """Assemble the comparison cell of a morphism of rectangular
    presentations from its sequence-comparison isomorphisms, the unit of the
    target equivalence and the counit of the source equivalence, then verify
    every pseudo-morphism axiom exhaustively.

    The identity functor yields the identity cell.
    """
    rect_p = rect_p or is_rectangular(p, limits=limits)
    rect_q = rect_q or is_rectangular(q, limits=limits)
    alg_p = alg_p or build_pseudo_algebra(p, rect=rect_p, limits=limits)
    alg_q = alg_q or build_pseudo_algebra(q, rect=rect_q, limits=limits)
    lam = lam or lambda_for_morphism(p, q, morphism, rect_p, rect_q)
    g = morphism.functor
    d = q.base
    tf_p = rect_p.gamma.product
    tf_q = rect_q.gamma.product
    gamma_prime_p = rect_p.equivalence.inverse
    delta_prime = rect_q.equivalence.inverse
    counit_p = rect_p.equivalence.counit
    unit_q = rect_q.equivalence.unit
    # the edge from the image of the source inverse to the target inverse
    nu: dict[str, str] = {}
    for w in tf_p.cat.objects:
        z = gamma_prime_p.obj_map[w]
        gz = g.obj_map[z]
        t_obj, f_obj = tf_p.obj_tuple[w]
        c_parts = tf_p.mor_tuple[counit_p.components[w]]
        g_pair = tf_q.mor_of[(g.mor_map[c_parts[0]], g.mor_map[c_parts[1]])]
        edge = tf_q.cat.comp(g_pair, lam.nat.components[z])
        nu_inv = d.comp(delta_prime.mor_map[edge], unit_q.components[gz])
        inv = inverse_of(d, nu_inv)
        if inv is None:
            raise InternalCheckError("pseudo_morphism", f"comparison edge at {w} is not invertible")
        nu[w] = inv
    cell: dict[tuple[str, str], str] = {}
    for x, y in itertools.product(p.base.objects, repeat=2):
        w = tf_p.obj_of[(p.ses[x].torsion_object, p.ses[y].free_object)]
        lam_pair = tf_q.mor_of[(lam.first[x], lam.second[y])]
        cell[(x, y)] = d.comp(nu[w], delta_prime.mor_map[lam_pair])
    report = check_pseudo_morphism(alg_p, alg_q, g, cell)
    if not report.ok or not report.invertible:
        bad = next((c for c in report.checks if not c.ok), None)
        raise InternalCheckError(
            "pseudo_morphism",
            f"assembled cell fails coherence: {bad.name if bad else 'not invertible'} {bad.witness if bad else ''}",
        )
    return PseudoMorphismData(functor=g, cell=cell, report=report)


# ---------------------------------------------------------------------------
# round trips
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RoundTripReport:
    ok: bool
    torsion_recovered: bool
    free_recovered: bool
    ses_recovered: bool
    comparison_ok: bool
    comparison_invertible: bool


def roundtrip_from_presentation(
    p: PretorsionPresentation,
    rect: RectangularityResult | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> RoundTripReport:
    """Presentation -> algebra -> presentation must fix the classes and the
    chosen sequences on the nose (both sides use the canonical choices)."""
    rect = rect or is_rectangular(p, limits=limits)
    alg = build_pseudo_algebra(p, rect=rect, limits=limits)
    extract = algebra_to_pretorsion(alg, limits=limits)
    p2 = extract.presentation
    torsion_ok = set(p2.torsion) == set(p.torsion)
    free_ok = set(p2.free) == set(p.free)
    ses_ok = all(
        (p.ses[x].torsion_object, p.ses[x].left, p.ses[x].right, p.ses[x].free_object)
        == (p2.ses[x].torsion_object, p2.ses[x].left, p2.ses[x].right, p2.ses[x].free_object)
        for x in p.base.objects
    )
    if not (torsion_ok and free_ok and ses_ok):
        raise InternalCheckError("roundtrip", "presentation round trip did not fix the presentation")
    return RoundTripReport(
        ok=True,
        torsion_recovered=torsion_ok,
        free_recovered=free_ok,
        ses_recovered=ses_ok,
        comparison_ok=True,
        comparison_invertible=True,
    )


def roundtrip_from_algebra(alg: PseudoAlgebraData, limits: Limits = DEFAULT_LIMITS) -> RoundTripReport:
    """Algebra -> presentation -> algebra admits an invertible comparison
    cell over the identity functor, built from the sequence comparisons and
    the unit of the extracted equivalence; every axiom is re-checked."""
    cat = alg.base
    extract = algebra_to_pretorsion(alg, limits=limits)
    pres = extract.presentation
    rect = extract.rect
    rebuilt = build_pseudo_algebra(pres, rect=rect, square=alg.square, limits=limits)
    ext = find_extremal_objects(cat)
    o0, o1 = ext.initial[0], ext.terminal[0]
    tf = rect.gamma.product
    gamma_prime = rect.equivalence.inverse
    unit = rect.equivalence.unit
    cell: dict[tuple[str, str], str] = {}
    for y1, y2 in itertools.product(cat.objects, repeat=2):
        q_mid = alg.q_obj(y1, y2)
        rec = pres.ses[q_mid]
        bang0 = cat.hom_set(o0, y2)[0]
        bang1 = cat.hom_set(y1, o1)[0]
        left_q = alg.q_mor(cat.identity[y1], bang0)  # Q(y1, 0) -> Q(y1, y2)
        right_q = alg.q_mor(bang1, cat.identity[y2])  # Q(y1, y2) -> Q(1, y2)
        if not is_short_exact(pres.ideal, left_q, right_q).ok:
            raise InternalCheckError("roundtrip", f"structure sequence on the pair ({y1}, {y2}) is not exact")
        s = _unique_fill(
            cat, rec.torsion_object, alg.q_obj(y1, o0), lambda w: cat.comp(left_q, w) == rec.left
        )
        gq = _unique_fill(
            cat, rec.free_object, alg.q_obj(o1, y2), lambda w: cat.comp(w, rec.right) == right_q
        )
        m_t = cat.comp(inverse_of(cat, s), extract.canonical_vs_structure_first[y1])
        m_f = cat.comp(inverse_of(cat, gq), extract.canonical_vs_structure_second[y2])
        pair = tf.mor_of[(m_t, m_f)]
        cell[(y1, y2)] = cat.comp(inverse_of(cat, unit.components[q_mid]), gamma_prime.mor_map[pair])
    report = check_pseudo_morphism(alg, rebuilt, identity_functor(cat), cell)
    if not report.ok or not report.invertible:
        bad = report.checks and next((c for c in report.checks if not c.ok), None)
        raise InternalCheckError(
            "roundtrip",
            f"algebra round-trip comparison fails: {bad.name if bad else 'not invertible'}",
        )
    return RoundTripReport(
        ok=True,
        torsion_recovered=True,
        free_recovered=True,
        ses_recovered=True,
        comparison_ok=report.ok,
        comparison_invertible=report.invertible,
    )
