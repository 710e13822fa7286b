"""Plain-text format for bound quiver algebras, modules and translation data.

Example::

    # the 4-cycle with two zero relations
    algebra over Q
    vertices: 1, 2, 3, 4
    arrows: alpha: 1 -> 2, beta: 2 -> 3, gamma: 3 -> 4, delta: 4 -> 1
    relations: delta*gamma, alpha*delta
    e: 1, 3

    module M
      dims: 1=1, 4=1
      delta: [[1]]
    end

Words compose right to left: ``delta*gamma`` is gamma followed by delta.
A relation is a sum of terms ``[+|-] [coeff*]word`` with rational
coefficients.  ``arrows:`` and ``relations:`` lines may repeat.  The matrix
of an arrow ``a: s -> t`` has dim(s) rows and dim(t) columns.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exactla import Field, Matrix, Q

_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_VERTEX = r"[A-Za-z0-9_]+"


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


@dataclass
class ModuleSpec:
    name: str
    dims: dict = dc_field(default_factory=dict)        # vertex label -> dimension
    actions: dict = dc_field(default_factory=dict)     # arrow label -> list of rows
    line: int = 0

    def __eq__(self, other):
        return (isinstance(other, ModuleSpec) and self.name == other.name
                and self.dims == other.dims and self.actions == other.actions)


@dataclass
class AlgebraFile:
    field: Field = Q
    vertices: list = dc_field(default_factory=list)
    arrows: list = dc_field(default_factory=list)      # (label, source, target)
    relations: list = dc_field(default_factory=list)   # [(coeff, (arrow labels...)), ...]
    e_set: list | None = None
    cap: int | None = None
    tau: dict | None = None
    distinguished: list | None = None
    modules: dict = dc_field(default_factory=dict)

    # ---- conversions ----
    def quiver(self):
        from .presentation import Quiver
        return Quiver.build(self.vertices, self.arrows)

    def ideal(self):
        from .presentation import RelationIdeal, make_path
        q = self.quiver()
        gens = []
        for rel in self.relations:
            d = {}
            for c, word in rel:
                key = make_path(q, [q.arrow_index(a) for a in word])
                d[key] = d.get(key, 0) + c
            gens.append(d)
        return RelationIdeal.from_dicts(q, gens, self.field)

    def algebra(self, length_cap: int = 32):
        from .algebra import quiver_algebra
        return quiver_algebra(self.quiver(), self.ideal(), self.field, length_cap)

    def e_indices(self) -> list[int]:
        if self.e_set is None:
            return []
        return [self.vertices.index(v) for v in self.e_set]

    def build_module(self, A, name: str):
        """Module over the path algebra A (arrow k acts through generator k)."""
        from .rep import Module
        spec = self.modules[name]
        idx = {v: i for i, v in enumerate(self.vertices)}
        dims = [0] * len(self.vertices)
        for v, d in spec.dims.items():
            dims[idx[v]] = d
        actions = {}
        arrow_pos = {a[0]: k for k, a in enumerate(self.arrows)}
        for label, rows in spec.actions.items():
            k = arrow_pos[label]
            _, s, t = self.arrows[k]
            r, c = dims[idx[s]], dims[idx[t]]
            if len(rows) != r or any(len(row) != c for row in rows):
                raise ParseError(f"matrix of {label} must be {r}x{c}", spec.line, 1)
            actions[A.generators[k]] = Matrix.from_rows(A.field, rows, c) if r else Matrix.zeros(A.field, 0, c)
        return Module(A, dims, actions, name=name, validate=True)


# ---------- parsing ----------

def _split_top(text: str, sep: str = ",") -> list[tuple[str, int]]:
    """Split on ``sep`` outside brackets; returns (piece, offset) pairs."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def _parse_coeff(tok: str, ln: int, col: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {tok!r}", ln, col) from None


_TERM = re.compile(r"\s*([+-])?\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?(" + _IDENT + r"(?:\s*\*\s*" + _IDENT + r")*)\s*")


def _parse_relation(text: str, ln: int, col0: int, arrows: dict) -> list:
    pos = 0
    terms = []
    if not text.strip():
        raise ParseError("empty relation", ln, col0)
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse relation term near {text[pos:pos + 12]!r}", ln, col0 + pos)
        if terms and m.group(1) is None:
            raise ParseError("expected + or - between terms", ln, col0 + pos)
        sign = -1 if m.group(1) == "-" else 1
        c = _parse_coeff(m.group(2), ln, col0 + m.start(2)) if m.group(2) else Fraction(1)
        word = tuple(w.strip() for w in m.group(3).split("*"))
        for w in word:
            if w not in arrows:
                raise ParseError(f"unknown arrow {w!r}", ln, col0 + m.start(3))
        for a, b in zip(word, word[1:]):
            # right-to-left: b is applied first, so target(b) must equal source(a)
            if arrows[b][1] != arrows[a][0]:
                raise ParseError(f"{a}*{b} is not a path: {b} ends at {arrows[b][1]}, {a} starts at {arrows[a][0]}",
                                 ln, col0 + m.start(3))
        if len(word) < 2:
            raise ParseError(f"relation term {m.group(3).strip()!r} has length 1; relations need length >= 2",
                             ln, col0 + m.start(3))
        terms.append((sign * c, word))
        pos = m.end()
    ends = {(arrows[w[-1]][0], arrows[w[0]][1]) for _, w in terms}
    if len(ends) > 1:
        raise ParseError("relation terms are not parallel paths", ln, col0)
    return terms


def _parse_matrix(text: str, ln: int, col: int) -> list:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("matrix must look like [[a, b], [c, d]]", ln, col)
    inner = s[1:-1].strip()
    rows = []
    if not inner:
        return rows
    for piece, off in _split_top(inner):
        p = piece.strip()
        if not (p.startswith("[") and p.endswith("]")):
            raise ParseError("matrix rows must be bracketed", ln, col + off)
        body = p[1:-1].strip()
        rows.append([] if not body else [_parse_coeff(x.strip(), ln, col + off) for x in body.split(",")])
    return rows


def parse(text: str, default_field: Field | None = None) -> AlgebraFile:
    af = AlgebraFile(field=default_field or Q)
    arrow_map: dict[str, tuple[str, str]] = {}
    current: ModuleSpec | None = None
    seen_vertices = False
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        stripped = line.strip()
        col = indent + 1
        if current is not None:
            if stripped == "end":
                af.modules[current.name] = current
                current = None
                continue
            key, _, rest = stripped.partition(":")
            key = key.strip()
            rcol = col + stripped.index(":") + 1 if ":" in stripped else col
            if not _:
                raise ParseError("expected 'key: value' inside module block", ln, col)
            if key == "dims":
                for piece, off in _split_top(rest):
                    if not piece.strip():
                        continue
                    v, eq, d = piece.partition("=")
                    v = v.strip()
                    if not eq or v not in af.vertices:
                        raise ParseError(f"bad dimension entry {piece.strip()!r}", ln, rcol + off)
                    try:
                        current.dims[v] = int(d)
                    except ValueError:
                        raise ParseError(f"bad dimension {d.strip()!r}", ln, rcol + off) from None
            elif key in arrow_map:
                current.actions[key] = _parse_matrix(rest, ln, rcol)
            else:
                raise ParseError(f"unknown arrow {key!r} in module block", ln, col)
            continue
        if stripped.startswith("algebra"):
            m = re.fullmatch(r"algebra\s+over\s+(\S+)", stripped)
            if not m:
                raise ParseError("expected 'algebra over Q|Fp|F<p>'", ln, col)
            try:
                af.field = Field.parse(m.group(1))
            except ValueError as exc:
                raise ParseError(str(exc), ln, col + m.start(1)) from None
            continue
        if stripped.startswith("module"):
            m = re.fullmatch(r"module\s+(" + _IDENT + r")", stripped)
            if not m:
                raise ParseError("expected 'module NAME'", ln, col)
            if m.group(1) in af.modules:
                raise ParseError(f"duplicate module {m.group(1)!r}", ln, col)
            current = ModuleSpec(m.group(1), line=ln)
            continue
        key, colon, rest = stripped.partition(":")
        if not colon:
            raise ParseError(f"unrecognised line {stripped!r}", ln, col)
        key = key.strip()
        rcol = col + stripped.index(":") + 1
        pieces = [(p.strip(), rcol + off + len(p) - len(p.lstrip())) for p, off in _split_top(rest)]
        pieces = [(p, c) for p, c in pieces if p]
        if key == "vertices":
            if not pieces:
                raise ParseError("empty vertex list", ln, rcol)
            for p, c in pieces:
                if not re.fullmatch(_VERTEX, p):
                    raise ParseError(f"bad vertex label {p!r}", ln, c)
                if p in af.vertices:
                    raise ParseError(f"duplicate vertex {p!r}", ln, c)
                af.vertices.append(p)
            seen_vertices = True
        elif key == "arrows":
            if not seen_vertices:
                raise ParseError("arrows declared before vertices", ln, col)
            for p, c in pieces:
                m = re.fullmatch(r"(" + _IDENT + r")\s*:\s*(" + _VERTEX + r")\s*->\s*(" + _VERTEX + r")", p)
                if not m:
                    raise ParseError(f"expected 'name: src -> tgt', got {p!r}", ln, c)
                a, s, t = m.groups()
                for v, vc in ((s, m.start(2)), (t, m.start(3))):
                    if v not in af.vertices:
                        raise ParseError(f"unknown vertex {v!r}", ln, c + vc)
                if a in arrow_map:
                    raise ParseError(f"duplicate arrow {a!r}", ln, c)
                arrow_map[a] = (s, t)
                af.arrows.append((a, s, t))
        elif key == "relations":
            for p, c in pieces:
                af.relations.append(_parse_relation(p, ln, c, arrow_map))
        elif key == "e":
            af.e_set = []
            for p, c in pieces:
                if p not in af.vertices:
                    raise ParseError(f"unknown vertex {p!r}", ln, c)
                af.e_set.append(p)
        elif key == "distinguished":
            af.distinguished = []
            for p, c in pieces:
                if p not in af.vertices:
                    raise ParseError(f"unknown vertex {p!r}", ln, c)
                af.distinguished.append(p)
        elif key == "cap":
            try:
                af.cap = int(rest)
            except ValueError:
                raise ParseError("cap must be an integer", ln, rcol) from None
        elif key == "tau":
            af.tau = {}
            for p, c in pieces:
                m = re.fullmatch(r"(" + _VERTEX + r")\s*->\s*(" + _VERTEX + r")", p)
                if not m or m.group(1) not in af.vertices or m.group(2) not in af.vertices:
                    raise ParseError(f"bad translation entry {p!r}", ln, c)
                af.tau[m.group(1)] = m.group(2)
        else:
            raise ParseError(f"unknown key {key!r}", ln, col)
    if current is not None:
        raise ParseError(f"module {current.name!r} is missing 'end'", current.line, 1)
    if not af.vertices:
        raise ParseError("no vertices declared", 1, 1)
    return af


# ---------- emitting ----------

def _fmt(c: Fraction) -> str:
    return str(c)


def _emit_relation(rel: list) -> str:
    out = []
    for k, (c, word) in enumerate(rel):
        w = "*".join(word)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = w if mag == 1 else f"{_fmt(mag)}*{w}"
        if k == 0:
            out.append(body if sign == "+" else f"- {body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def emit(af: AlgebraFile) -> str:
    lines = [f"algebra over {af.field}", "vertices: " + ", ".join(af.vertices)]
    if af.arrows:
        lines.append("arrows: " + ", ".join(f"{a}: {s} -> {t}" for a, s, t in af.arrows))
    if af.relations:
        lines.append("relations: " + ", ".join(_emit_relation(r) for r in af.relations))
    if af.e_set is not None:
        lines.append("e: " + ", ".join(af.e_set))
    if af.cap is not None:
        lines.append(f"cap: {af.cap}")
    if af.tau is not None:
        lines.append("tau: " + ", ".join(f"{k} -> {v}" for k, v in af.tau.items()))
    if af.distinguished is not None:
        lines.append("distinguished: " + ", ".join(af.distinguished))
    for spec in af.modules.values():
        lines.append("")
        lines.append(f"module {spec.name}")
        lines.append("  dims: " + ", ".join(f"{v}={d}" for v, d in spec.dims.items()))
        for a, rows in spec.actions.items():
            body = ", ".join("[" + ", ".join(_fmt(Fraction(x)) for x in row) + "]" for row in rows)
            lines.append(f"  {a}: [{body}]")
        lines.append("end")
    return "\n".join(lines) + "\n"


def from_quiver(q, ideal, field: Field = Q, e_set=None, cap=None) -> AlgebraFile:
    """AlgebraFile for a presentation (used for counterexample bundles and generators)."""
    rels = []
    for d in ideal.as_dicts():
        terms = []
        for path, c in sorted(d.items(), key=lambda pc: pc[0].sort_key()):
            terms.append((Fraction(c), tuple(q.arrows[a].label for a in path.arrows)))
        rels.append(terms)
    return AlgebraFile(field=field, vertices=list(q.vertices),
                       arrows=[(a.label, q.vertices[a.source], q.vertices[a.target]) for a in q.arrows],
                       relations=rels, e_set=e_set, cap=cap)


INTRO_TEXT = """\
# 4-cycle 1 -> 2 -> 3 -> 4 -> 1 with zero relations delta*gamma and alpha*delta
algebra over Q
vertices: 1, 2, 3, 4
arrows: alpha: 1 -> 2, beta: 2 -> 3, gamma: 3 -> 4, delta: 4 -> 1
relations: delta*gamma, alpha*delta
e: 1, 3
"""
