"""Line-oriented text formats for categories, band tables and functor maps.

Category files ('#' starts a comment, tokens are whitespace-separated):

    category <name>
    object <obj-id>
    morphism <mor-id> : <src-id> -> <tgt-id>
    identity <obj-id> = <mor-id>
    compose <g-id> . <f-id> = <h-id>
    subset <name> = <id> [<id> ...]

Identity lines may be omitted; missing identities are auto-named id_<obj>
(reusing a declared endomorphism of that exact name when present).
Composites with identities may be omitted and are implied.  Any other
composable pair must be listed explicitly.

Band files:

    band <n>
    <n rows of n space-separated indices>

Functor map files:

    funmap <name>
    object <src-id> -> <dst-id>
    morphism <src-id> -> <dst-id>
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FormatError
from .fincat import DEFAULT_LIMITS, FinCat, Limits, RawCategory, RawMorphism, make_functor, validate_category

_RESERVED = {":", "->", "=", ".", "#"}


def _tokenize(text: str) -> list[tuple[int, list[str]]]:
    lines = []
    for i, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        lines.append((i, line.split()))
    return lines


def _check_id(token: str, lineno: int) -> str:
    if token in _RESERVED or "#" in token:
        raise FormatError("bad_identifier", f"line {lineno}: {token!r} is not a valid identifier", {"line": lineno})
    return token


@dataclass(frozen=True, eq=False)
class ParsedCategory:
    cat: FinCat
    subsets: dict[str, tuple[str, ...]]


def parse_category(text: str, limits: Limits = DEFAULT_LIMITS) -> ParsedCategory:
    name: str | None = None
    objects: list[str] = []
    morphisms: list[RawMorphism] = []
    identity: dict[str, str] = {}
    compose: dict[tuple[str, str], str] = {}
    subsets: dict[str, tuple[str, ...]] = {}
    for lineno, tokens in _tokenize(text):
        kind = tokens[0]
        if kind == "category":
            if name is not None or len(tokens) != 2:
                raise FormatError("bad_header", f"line {lineno}: malformed category header", {"line": lineno})
            name = _check_id(tokens[1], lineno)
        elif kind == "object":
            if len(tokens) != 2:
                raise FormatError("bad_object", f"line {lineno}: malformed object line", {"line": lineno})
            objects.append(_check_id(tokens[1], lineno))
        elif kind == "morphism":
            if len(tokens) != 6 or tokens[2] != ":" or tokens[4] != "->":
                raise FormatError("bad_morphism", f"line {lineno}: malformed morphism line", {"line": lineno})
            morphisms.append(
                RawMorphism(_check_id(tokens[1], lineno), _check_id(tokens[3], lineno), _check_id(tokens[5], lineno))
            )
        elif kind == "identity":
            if len(tokens) != 4 or tokens[2] != "=":
                raise FormatError("bad_identity", f"line {lineno}: malformed identity line", {"line": lineno})
            identity[_check_id(tokens[1], lineno)] = _check_id(tokens[3], lineno)
        elif kind == "compose":
            if len(tokens) != 6 or tokens[2] != "." or tokens[4] != "=":
                raise FormatError("bad_compose", f"line {lineno}: malformed compose line", {"line": lineno})
            g, f, h = (_check_id(tokens[i], lineno) for i in (1, 3, 5))
            if (g, f) in compose and compose[(g, f)] != h:
                raise FormatError("conflicting_compose", f"line {lineno}: conflicting entry for {g} . {f}", {"line": lineno})
            compose[(g, f)] = h
        elif kind == "subset":
            if len(tokens) < 3 or tokens[2] != "=":
                raise FormatError("bad_subset", f"line {lineno}: malformed subset line", {"line": lineno})
            subsets[_check_id(tokens[1], lineno)] = tuple(_check_id(t, lineno) for t in tokens[3:])
        else:
            raise FormatError("unknown_directive", f"line {lineno}: unknown directive {kind!r}", {"line": lineno})
    if name is None:
        raise FormatError("bad_header", "missing category header", {})
    declared = {m.mid: m for m in morphisms}
    for o in objects:
        if o in identity:
            continue
        auto = f"id_{o}"
        if auto in declared:
            if declared[auto].src != o or declared[auto].tgt != o:
                raise FormatError(
                    "bad_identity", f"{auto} is declared but is not an endomorphism of {o}", {"object": o}
                )
        else:
            morphisms.append(RawMorphism(auto, o, o))
            declared[auto] = morphisms[-1]
        identity[o] = auto
    for m in morphisms:
        if m.tgt in identity:
            compose.setdefault((identity[m.tgt], m.mid), m.mid)
        if m.src in identity:
            compose.setdefault((m.mid, identity[m.src]), m.mid)
    cat = validate_category(RawCategory(name, objects, morphisms, identity, compose), limits)
    known = set(cat.objects) | set(cat.morphisms)
    for sname, ids in subsets.items():
        for i in ids:
            if i not in known:
                raise FormatError("unknown_subset_member", f"subset {sname} names unknown id {i}", {"subset": sname})
    return ParsedCategory(cat=cat, subsets=subsets)


def serialize_category(cat: FinCat, subsets: dict[str, tuple[str, ...]] | None = None) -> str:
    """Deterministic emission; parse(serialize(c)) reproduces c exactly."""
    out = [f"category {cat.name}"]
    for o in cat.objects:
        out.append(f"object {o}")
    for m in cat.morphisms:
        out.append(f"morphism {m} : {cat.src[m]} -> {cat.tgt[m]}")
    for o in cat.objects:
        out.append(f"identity {o} = {cat.identity[o]}")
    for (g, f), h in sorted(cat.compose.items(), key=lambda kv: (cat.mor_index[kv[0][0]], cat.mor_index[kv[0][1]])):
        if cat.is_identity(g) or cat.is_identity(f):
            continue
        out.append(f"compose {g} . {f} = {h}")
    for sname in sorted(subsets or {}):
        out.append(f"subset {sname} = " + " ".join((subsets or {})[sname]))
    return "\n".join(out) + "\n"


def parse_band(text: str) -> list[list[int]]:
    lines = _tokenize(text)
    if not lines or lines[0][1][0] != "band" or len(lines[0][1]) != 2:
        raise FormatError("bad_band_header", "band files start with 'band <n>'", {})
    try:
        n = int(lines[0][1][1])
    except ValueError:
        raise FormatError("bad_band_header", "band size is not an integer", {}) from None
    rows: list[list[int]] = []
    for lineno, tokens in lines[1:]:
        try:
            rows.append([int(t) for t in tokens])
        except ValueError:
            raise FormatError("bad_band_row", f"line {lineno}: non-integer entry", {"line": lineno}) from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormatError("bad_band_shape", f"expected {n} rows of {n} entries", {"n": n})
    return rows


def serialize_band(table: tuple[tuple[int, ...], ...] | list[list[int]]) -> str:
    out = [f"band {len(table)}"]
    for row in table:
        out.append(" ".join(str(v) for v in row))
    return "\n".join(out) + "\n"


def parse_functor_map(text: str, source: FinCat, target: FinCat):
    """Parse and validate a functor between two already-parsed categories."""
    name: str | None = None
    obj_map: dict[str, str] = {}
    mor_map: dict[str, str] = {}
    for lineno, tokens in _tokenize(text):
        kind = tokens[0]
        if kind == "funmap":
            if name is not None or len(tokens) != 2:
                raise FormatError("bad_header", f"line {lineno}: malformed funmap header", {"line": lineno})
            name = tokens[1]
        elif kind in ("object", "morphism"):
            if len(tokens) != 4 or tokens[2] != "->":
                raise FormatError("bad_map_line", f"line {lineno}: malformed {kind} map", {"line": lineno})
            table = obj_map if kind == "object" else mor_map
            table[_check_id(tokens[1], lineno)] = _check_id(tokens[3], lineno)
        else:
            raise FormatError("unknown_directive", f"line {lineno}: unknown directive {kind!r}", {"line": lineno})
    if name is None:
        raise FormatError("bad_header", "missing funmap header", {})
    for o in source.objects:
        mor_map.setdefault(source.identity[o], target.identity.get(obj_map.get(o, ""), ""))
    return make_functor(source, target, obj_map, mor_map)
