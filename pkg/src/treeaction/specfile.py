"""Line-oriented spec files describing a group, its representations, and
enumeration bounds.

Grammar (one ``key = value`` per line, ``#`` starts a comment):

    [group]
    kind = amalgam | hnn
    name = ident
    # amalgam:
    factor1 = GROUP gens NAME...      GROUP := TERM ("x" TERM)*
    factor2 = GROUP gens NAME...      TERM  := "Z" | "Z/m"
    edge    = GROUP gens NAME...
    embed1  = src:tgt*mult, ...       (*mult optional, default 1)
    embed2  = src:tgt*mult, ...
    # hnn (Baumslag-Solitar only):
    m = int
    n = int

    [rep]                             (amalgam only; all keys optional)
    dimW = int ; dim1 = int ; dim2 = int
    act1 GEN = [linear col;col;...] [translate c1,c2,...]
    act2 GEN = ...
    jW1 = col;col;...                 (columns of the W embedding; defaults
    jW2 = col;col;...                  to identity when dims agree)

    [bounds]
    radius | max_syllables | exponent_bound | window = int

Unknown sections or keys are rejected.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .abelian import AbelianGroup, DiagonalEmbedding
from .bswindow import BSSpec
from .errors import SpecParseError
from .groupspec import AmalgamSpec
from .linalg import SparseVec
from .reps import AffineIso, FactorRep, LinearMap
from .wgamma import AmalgamRepInput

DEFAULT_BOUNDS = {
    "radius": 4,
    "max_syllables": 4,
    "exponent_bound": 2,
    "window": 1,
}


@dataclass
class ParsedSpec:
    kind: str
    name: str
    bounds: Dict[str, int]
    amalgam: Optional[AmalgamSpec] = None
    rep_input: Optional[AmalgamRepInput] = None
    bs: Optional[BSSpec] = None


def parse_spec_text(text: str) -> ParsedSpec:
    sections = _split_sections(text)
    for sec in sections:
        if sec not in ("group", "rep", "bounds"):
            raise SpecParseError(f"unknown section [{sec}]")
    if "group" not in sections:
        raise SpecParseError("missing [group] section")
    bounds = dict(DEFAULT_BOUNDS)
    for key, val in _unique(sections.get("bounds", []), "bounds"):
        if key not in DEFAULT_BOUNDS:
            raise SpecParseError(f"unknown bounds key {key!r}")
        bounds[key] = _int(val, key)

    group_kv = dict(_unique(sections["group"], "group"))
    kind = group_kv.pop("kind", None)
    name = group_kv.pop("name", "spec")
    if kind == "amalgam":
        spec = _parse_amalgam(name, group_kv)
        rep_input = _parse_rep(spec, sections.get("rep", []))
        return ParsedSpec(kind, name, bounds, amalgam=spec, rep_input=rep_input)
    if kind == "hnn":
        if sections.get("rep"):
            raise SpecParseError("[rep] is not accepted for hnn specs")
        try:
            m = _int(group_kv.pop("m"), "m")
            n = _int(group_kv.pop("n"), "n")
        except KeyError as exc:
            raise SpecParseError(f"hnn spec missing key {exc.args[0]!r}") from None
        if group_kv:
            raise SpecParseError(f"unknown group keys {sorted(group_kv)}")
        return ParsedSpec(kind, name, bounds, bs=BSSpec(m, n, name))
    raise SpecParseError(f"kind must be 'amalgam' or 'hnn', got {kind!r}")


def parse_spec_file(path: str) -> ParsedSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecParseError(f"cannot read spec file {path}: {exc}") from None
    return parse_spec_text(text)


def _split_sections(text: str) -> Dict[str, List[Tuple[str, str]]]:
    sections: Dict[str, List[Tuple[str, str]]] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, [])
            continue
        if current is None:
            raise SpecParseError(f"line {lineno}: content before any section")
        if "=" not in line:
            raise SpecParseError(f"line {lineno}: expected 'key = value'")
        key, val = line.split("=", 1)
        sections[current].append((key.strip(), val.strip()))
    return sections


def _unique(pairs, where):
    seen = set()
    for k, v in pairs:
        if k in seen:
            raise SpecParseError(f"duplicate key {k!r} in [{where}]")
        seen.add(k)
    return pairs


def _int(s: str, key: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise SpecParseError(f"{key}: expected an integer, got {s!r}") from None


def _parse_group(val: str, key: str) -> AbelianGroup:
    if " gens " not in f" {val} ":
        raise SpecParseError(f"{key}: expected 'GROUP gens NAMES'")
    typ, gens_part = val.split("gens", 1)
    rank = 0
    torsion = []
    for term in typ.replace(" ", "").split("x"):
        if term == "Z":
            if torsion:
                raise SpecParseError(f"{key}: free coordinates must come first")
            rank += 1
        elif term.startswith("Z/"):
            torsion.append(_int(term[2:], key))
        else:
            raise SpecParseError(f"{key}: bad group term {term!r}")
    gens = tuple(gens_part.split())
    return AbelianGroup(rank, tuple(torsion), gens)


def _parse_embedding(val: str, src: AbelianGroup, tgt: AbelianGroup, key: str):
    cmap = []
    for part in val.split(","):
        part = part.strip()
        if ":" not in part:
            raise SpecParseError(f"{key}: expected 'src:tgt' or 'src:tgt*mult'")
        s, t = part.split(":", 1)
        mult = 1
        if "*" in t:
            t, m = t.split("*", 1)
            mult = _int(m.strip(), key)
        cmap.append((src.gen_index(s.strip()), tgt.gen_index(t.strip()), mult))
    return DiagonalEmbedding(src, tgt, tuple(cmap))


def _parse_amalgam(name: str, kv: Dict[str, str]) -> AmalgamSpec:
    try:
        f1 = _parse_group(kv.pop("factor1"), "factor1")
        f2 = _parse_group(kv.pop("factor2"), "factor2")
        edge = _parse_group(kv.pop("edge"), "edge")
        e1 = _parse_embedding(kv.pop("embed1"), edge, f1, "embed1")
        e2 = _parse_embedding(kv.pop("embed2"), edge, f2, "embed2")
    except KeyError as exc:
        raise SpecParseError(f"amalgam spec missing key {exc.args[0]!r}") from None
    if kv:
        raise SpecParseError(f"unknown group keys {sorted(kv)}")
    return AmalgamSpec(name, edge, f1, f2, e1, e2)


def _parse_vector(text: str, dim: int, key: str) -> SparseVec:
    parts = [p.strip() for p in text.split(",")] if text.strip() else []
    if len(parts) != dim:
        raise SpecParseError(f"{key}: expected {dim} coordinates")
    return SparseVec((i, Fraction(p)) for i, p in enumerate(parts))


def _parse_affine(text: str, dim: int, key: str) -> AffineIso:
    toks = text.split()
    linear = LinearMap({})
    shift = SparseVec()
    pos = 0
    while pos < len(toks):
        word = toks[pos]
        if word == "translate":
            if pos + 1 >= len(toks):
                raise SpecParseError(f"{key}: translate needs coordinates")
            shift = _parse_vector(toks[pos + 1], dim, key)
            pos += 2
        elif word == "linear":
            if pos + 1 >= len(toks):
                raise SpecParseError(f"{key}: linear needs columns")
            cols = [
                _parse_vector(c, dim, key) for c in toks[pos + 1].split(";")
            ]
            if len(cols) != dim:
                raise SpecParseError(f"{key}: expected {dim} columns")
            linear = LinearMap(dict(enumerate(cols)))
            pos += 2
        else:
            raise SpecParseError(f"{key}: unknown action word {word!r}")
    return AffineIso(linear, shift)


def _parse_rep(spec: AmalgamSpec, pairs) -> AmalgamRepInput:
    kv = list(_unique(pairs, "rep"))
    dims = {"dimW": 0, "dim1": 0, "dim2": 0}
    acts = {1: {}, 2: {}}
    jcols: Dict[int, Optional[str]] = {1: None, 2: None}
    for key, val in kv:
        if key in dims:
            dims[key] = _int(val, key)
        elif key in ("jW1", "jW2"):
            jcols[int(key[-1])] = val
        elif key.startswith("act1 ") or key.startswith("act2 "):
            i = int(key[3])
            gen = key[5:].strip()
            acts[i][gen] = val
        else:
            raise SpecParseError(f"unknown rep key {key!r}")
    reps = {}
    for i in (1, 2):
        factor = spec.factor(i)
        dim = dims[f"dim{i}"]
        maps = []
        for g in factor.gens:
            if g in acts[i]:
                maps.append(_parse_affine(acts[i].pop(g), dim, f"act{i} {g}"))
            else:
                maps.append(AffineIso())
        if acts[i]:
            raise SpecParseError(f"act{i} for unknown generators {sorted(acts[i])}")
        reps[i] = FactorRep(factor, (f"W{i}", spec.name), dim, maps)
    js = {}
    for i in (1, 2):
        if jcols[i] is None:
            if dims[f"dim{i}"] != dims["dimW"]:
                raise SpecParseError(
                    f"jW{i} required when dim{i} differs from dimW"
                )
            js[i] = tuple(SparseVec({a: 1}) for a in range(dims["dimW"]))
        else:
            cols = [
                _parse_vector(c, dims[f"dim{i}"], f"jW{i}")
                for c in jcols[i].split(";")
            ]
            if len(cols) != dims["dimW"]:
                raise SpecParseError(f"jW{i}: expected {dims['dimW']} columns")
            js[i] = tuple(cols)
    return AmalgamRepInput(
        spec=spec, rep1=reps[1], rep2=reps[2], dim_w=dims["dimW"], j1=js[1], j2=js[2]
    )
