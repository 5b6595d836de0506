"""Structured text files for cones, fans, charts, results, and expressions.

All schemas are integer-only and versioned by a leading `schema` line.
Writers emit canonical objects deterministically, so writing what was read
back out reproduces the file byte for byte.  Cone ids in result and
annotation files are the 0-based positions in the fan's canonical cone
listing.

Grammar (one record per line, whitespace separated):

  cone file        schema mockfan.cone/1; rank R; rays N; N vectors;
                   lineality K; K vectors
  fan file         schema mockfan.fan/1; rank R; has_t 0|1; rays N;
                   N vectors; cones M; M lines `cone <ray indices...>`
  chart file       schema mockfan.chart/1; label L; rank R; scale l;
                   sigma_duals N; N vectors; items M;
                   M lines `item <id> kappa <k> exponent <R ints>`
  result file      fan file body with schema mockfan.result/1, then
                   active_sets M; M lines `cone <idx> items <ids...>`
  annotations      schema mockfan.annotations/1; annotations M;
                   M lines `cone <idx> labels <label tokens...>`
  expression       schema mockfan.expression/1; terms M;
                   M lines `<coeff> <label token>`; `rendered <text>`

Label tokens: `pt`, `hyp:<ambient_dim>:<degree>`, `sym:<name>`.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .cones import Cone, cone_from_generators
from .fans import Fan, fan_from_cones
from .subdivision import (GlueResult, LiftedExponent, MockPolytopeChart,
                          SubdivisionResult)
from .volume import ClassLabel, FormalSum, StratumAnnotation


class ParseError(ValueError):
    """Malformed input file."""


CONE_SCHEMA = "mockfan.cone/1"
FAN_SCHEMA = "mockfan.fan/1"
CHART_SCHEMA = "mockfan.chart/1"
RESULT_SCHEMA = "mockfan.result/1"
ANNOTATIONS_SCHEMA = "mockfan.annotations/1"
EXPRESSION_SCHEMA = "mockfan.expression/1"
FACES_SCHEMA = "mockfan.faces/1"
CLASSIFICATION_SCHEMA = "mockfan.classification/1"


class _Lines:
    def __init__(self, text: str):
        self.lines = [ln.rstrip() for ln in text.splitlines()
                      if ln.strip() and not ln.lstrip().startswith("#")]
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise ParseError("unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def expect(self, keyword: str) -> list[str]:
        line = self.next()
        parts = line.split()
        if not parts or parts[0] != keyword:
            raise ParseError(f"expected {keyword!r}, got {line!r}")
        return parts[1:]

    def done(self) -> bool:
        return self.pos >= len(self.lines)


def _ints(tokens: Sequence[str], what: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise ParseError(f"bad integer in {what}: {exc}") from exc


def _one_int(tokens: Sequence[str], what: str) -> int:
    if len(tokens) != 1:
        raise ParseError(f"{what} expects one integer")
    return _ints(tokens, what)[0]


def _read_vectors(lines: _Lines, count: int, rank: int, what: str) -> list[tuple[int, ...]]:
    out = []
    for _ in range(count):
        v = _ints(lines.next().split(), what)
        if len(v) != rank:
            raise ParseError(f"{what} vector has {len(v)} entries, expected {rank}")
        out.append(v)
    return out


def _check_schema(lines: _Lines, schema: str):
    tokens = lines.expect("schema")
    if tokens != [schema]:
        raise ParseError(f"expected schema {schema}, got {' '.join(tokens)}")


# -- cones -------------------------------------------------------------------

def write_cone(c: Cone) -> str:
    out = [f"schema {CONE_SCHEMA}", f"rank {c.rank}", f"rays {len(c.rays)}"]
    out += [" ".join(map(str, r)) for r in c.rays]
    out.append(f"lineality {len(c.lineality)}")
    out += [" ".join(map(str, v)) for v in c.lineality]
    return "\n".join(out) + "\n"


def read_cone(text: str) -> Cone:
    lines = _Lines(text)
    _check_schema(lines, CONE_SCHEMA)
    rank = _one_int(lines.expect("rank"), "rank")
    nrays = _one_int(lines.expect("rays"), "rays")
    rays = _read_vectors(lines, nrays, rank, "ray")
    nlin = _one_int(lines.expect("lineality"), "lineality")
    lin = _read_vectors(lines, nlin, rank, "lineality")
    return cone_from_generators(rank, rays, lin)


# -- fans ----------------------------------------------------------------------

def _fan_body(f: Fan) -> tuple[list[str], dict]:
    ray_index: dict = {}
    rays: list[tuple[int, ...]] = []
    for c in f.cones:
        for r in c.rays:
            if r not in ray_index:
                ray_index[r] = len(rays)
                rays.append(r)
    out = [f"rank {f.rank}", f"has_t {1 if f.has_t_coordinate else 0}",
           f"rays {len(rays)}"]
    out += [" ".join(map(str, r)) for r in rays]
    out.append(f"cones {len(f.cones)}")
    for c in f.cones:
        idx = " ".join(str(ray_index[r]) for r in c.rays)
        out.append(f"cone {idx}".rstrip())
    return out, ray_index


def write_fan(f: Fan) -> str:
    body, _ = _fan_body(f)
    return "\n".join([f"schema {FAN_SCHEMA}"] + body) + "\n"


def _read_fan_body(lines: _Lines) -> Fan:
    rank = _one_int(lines.expect("rank"), "rank")
    has_t = _one_int(lines.expect("has_t"), "has_t")
    nrays = _one_int(lines.expect("rays"), "rays")
    rays = _read_vectors(lines, nrays, rank, "ray")
    ncones = _one_int(lines.expect("cones"), "cones")
    cones = []
    for _ in range(ncones):
        idx = _ints(lines.expect("cone"), "cone ray indices")
        try:
            gens = [rays[i] for i in idx]
        except IndexError as exc:
            raise ParseError(f"cone ray index out of range: {exc}") from exc
        cones.append(cone_from_generators(rank, gens))
    return fan_from_cones(rank, cones, has_t=bool(has_t))


def read_fan(text: str) -> Fan:
    lines = _Lines(text)
    _check_schema(lines, FAN_SCHEMA)
    return _read_fan_body(lines)


# -- charts --------------------------------------------------------------------

def write_chart(chart: MockPolytopeChart) -> str:
    out = [f"schema {CHART_SCHEMA}", f"label {chart.label}",
           f"rank {chart.ambient_dual_rank}", f"scale {chart.scale}",
           f"sigma_duals {len(chart.sigma_dual_generators)}"]
    out += [" ".join(map(str, g)) for g in chart.sigma_dual_generators]
    out.append(f"items {len(chart.items)}")
    for it in chart.items:
        exp = " ".join(map(str, it.exponent))
        out.append(f"item {it.id} kappa {it.kappa} exponent {exp}")
    return "\n".join(out) + "\n"


def read_chart(text: str) -> MockPolytopeChart:
    lines = _Lines(text)
    _check_schema(lines, CHART_SCHEMA)
    label_tokens = lines.expect("label")
    if len(label_tokens) != 1:
        raise ParseError("label must be a single token")
    label = label_tokens[0]
    rank = _one_int(lines.expect("rank"), "rank")
    scale = _one_int(lines.expect("scale"), "scale")
    nduals = _one_int(lines.expect("sigma_duals"), "sigma_duals")
    duals = _read_vectors(lines, nduals, rank, "sigma dual")
    nitems = _one_int(lines.expect("items"), "items")
    items = []
    for _ in range(nitems):
        tokens = lines.expect("item")
        if len(tokens) < 4 or tokens[1] != "kappa" or tokens[3] != "exponent":
            raise ParseError("item line must be: item <id> kappa <k> exponent <ints>")
        item_id = tokens[0]
        k = _ints(tokens[2:3], "kappa")[0]
        exp = _ints(tokens[4:], "exponent")
        if len(exp) != rank:
            raise ParseError(f"item {item_id!r} exponent has {len(exp)} entries, expected {rank}")
        items.append(LiftedExponent(item_id, exp, k))
    return MockPolytopeChart(label, rank, tuple(duals), tuple(items), scale=scale)


# -- results (fan + active sets) ------------------------------------------------

def write_result(fan: Fan, active_sets: Mapping[Cone, frozenset[str]]) -> str:
    body, _ = _fan_body(fan)
    out = [f"schema {RESULT_SCHEMA}"] + body
    out.append(f"active_sets {len(fan.cones)}")
    for idx, c in enumerate(fan.cones):
        ids = " ".join(sorted(active_sets.get(c, frozenset())))
        out.append(f"cone {idx} items {ids}".rstrip())
    return "\n".join(out) + "\n"


def read_fan_or_result(text: str) -> Fan:
    """Accept either a fan file or a result file and return the fan."""
    lines = _Lines(text)
    tokens = lines.expect("schema")
    if tokens == [FAN_SCHEMA]:
        return _read_fan_body(lines)
    if tokens == [RESULT_SCHEMA]:
        return read_result(text)[0]
    raise ParseError(f"expected a fan or result file, got schema {' '.join(tokens)}")


def read_result(text: str) -> tuple[Fan, dict[Cone, frozenset[str]]]:
    lines = _Lines(text)
    _check_schema(lines, RESULT_SCHEMA)
    fan = _read_fan_body(lines)
    nsets = _one_int(lines.expect("active_sets"), "active_sets")
    active: dict[Cone, frozenset[str]] = {}
    for _ in range(nsets):
        tokens = lines.expect("cone")
        if len(tokens) < 2 or tokens[1] != "items":
            raise ParseError("active set line must be: cone <idx> items <ids...>")
        idx = _ints(tokens[:1], "cone index")[0]
        if not 0 <= idx < len(fan.cones):
            raise ParseError(f"active set cone index {idx} out of range")
        active[fan.cones[idx]] = frozenset(tokens[2:])
    return fan, active


def write_glue_result(res: GlueResult) -> str:
    return write_result(res.fan, res.active_sets)


def write_subdivision_result(res: SubdivisionResult) -> str:
    return write_result(res.projected_fan, res.active_sets)


# -- class labels, annotations, expressions --------------------------------------

def label_token(label: ClassLabel) -> str:
    if label.kind == ClassLabel.POINT:
        return "pt"
    if label.kind == ClassLabel.HYPERSURFACE:
        return f"hyp:{label.ambient_dim}:{label.degree}"
    return f"sym:{label.name}"


def parse_label(token: str) -> ClassLabel:
    if token == "pt":
        return ClassLabel.point()
    if token.startswith("hyp:"):
        parts = token.split(":")
        if len(parts) != 3:
            raise ParseError(f"bad hypersurface label {token!r}")
        dims = _ints(parts[1:], "hypersurface label")
        return ClassLabel.hypersurface(dims[0], dims[1])
    if token.startswith("sym:"):
        name = token[4:]
        if not name:
            raise ParseError("symbolic label needs a name")
        return ClassLabel.symbolic(name)
    raise ParseError(f"unknown class label {token!r}")


def write_annotations(fan: Fan, annotations: Mapping[Cone, StratumAnnotation]) -> str:
    rows = []
    for idx, c in enumerate(fan.cones):
        ann = annotations.get(c)
        if ann is None:
            continue
        labels = " ".join(label_token(l) for l in ann.labels)
        rows.append(f"cone {idx} labels {labels}")
    out = [f"schema {ANNOTATIONS_SCHEMA}", f"annotations {len(rows)}"] + rows
    return "\n".join(out) + "\n"


def read_annotations(text: str, fan: Fan) -> dict[Cone, StratumAnnotation]:
    lines = _Lines(text)
    _check_schema(lines, ANNOTATIONS_SCHEMA)
    count = _one_int(lines.expect("annotations"), "annotations")
    out: dict[Cone, StratumAnnotation] = {}
    for _ in range(count):
        tokens = lines.expect("cone")
        if len(tokens) < 3 or tokens[1] != "labels":
            raise ParseError("annotation line must be: cone <idx> labels <labels...>")
        idx = _ints(tokens[:1], "cone index")[0]
        if not 0 <= idx < len(fan.cones):
            raise ParseError(f"annotation cone index {idx} out of range")
        labels = tuple(parse_label(t) for t in tokens[2:])
        out[fan.cones[idx]] = StratumAnnotation(f"c{idx}", len(labels), labels)
    return out


def write_expression(s: FormalSum) -> str:
    out = [f"schema {EXPRESSION_SCHEMA}", f"terms {len(s.terms)}"]
    for label in sorted(s.terms):
        coeff = s.terms[label]
        out.append(f"{coeff:+d} {label_token(label)}")
    out.append(f"rendered {s.render()}")
    return "\n".join(out) + "\n"


def read_expression(text: str) -> FormalSum:
    lines = _Lines(text)
    _check_schema(lines, EXPRESSION_SCHEMA)
    count = _one_int(lines.expect("terms"), "terms")
    total = FormalSum.zero()
    for _ in range(count):
        parts = lines.next().split()
        if len(parts) != 2:
            raise ParseError("term line must be: <coeff> <label>")
        coeff = _ints(parts[:1], "coefficient")[0]
        total = total + FormalSum.of(parse_label(parts[1]), coeff)
    return total


# -- reports ----------------------------------------------------------------------

def write_faces(c: Cone) -> str:
    """Listing of all faces of a cone, sharing one ray table."""
    faces = c.faces()
    ray_index = {r: i for i, r in enumerate(c.rays)}
    out = [f"schema {FACES_SCHEMA}", f"rank {c.rank}", f"rays {len(c.rays)}"]
    out += [" ".join(map(str, r)) for r in c.rays]
    out.append(f"lineality {len(c.lineality)}")
    out += [" ".join(map(str, v)) for v in c.lineality]
    out.append(f"faces {len(faces)}")
    for f in faces:
        idx = " ".join(str(ray_index[r]) for r in f.cone.rays)
        out.append(f"face dim {f.cone.dim()} rays {idx}".rstrip())
    return "\n".join(out) + "\n"


def write_classification(fan: Fan) -> str:
    """Per-cone special/bounded classification of a t-flagged fan."""
    from .fans import is_bounded_cone, is_special_cone
    out = [f"schema {CLASSIFICATION_SCHEMA}", f"cones {len(fan.cones)}"]
    for idx, c in enumerate(fan.cones):
        flags = []
        if is_special_cone(c):
            flags.append("special")
        if is_bounded_cone(c):
            flags.append("bounded")
        word = " ".join(flags) if flags else "none"
        out.append(f"cone {idx} dim {c.dim()} {word}")
    return "\n".join(out) + "\n"
