"""Quivers, paths, relation ideals and noncommutative Groebner bases.

Composition convention: a path is written as a word ``a_n ... a_1`` and read
right to left, so ``a_1`` is applied first.  ``delta*gamma`` is "first
gamma, then delta".  Concatenating words in written order therefore
multiplies paths: ``p * q`` is defined when ``source(p) == target(q)``.

The monomial order is length first, then lexicographic on the written word
with arrows ranked by declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, NamedTuple, Sequence

from .exactla import Field, Q


class QuiverError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Groebner completion needed a rule longer than the length cap."""


class InfiniteDimensional(RuntimeError):
    pass


class Arrow(NamedTuple):
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex label")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise QuiverError("duplicate arrow label")
        if set(labels) & set(self.vertices):
            raise QuiverError("arrow labels must differ from vertex labels")
        n = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise QuiverError(f"arrow {a.label} has an undeclared endpoint")

    @classmethod
    def build(cls, vertices: Sequence, arrows: Sequence[tuple]) -> "Quiver":
        """``arrows`` given as ``(label, source_label, target_label)``."""
        vs = tuple(str(v) for v in vertices)
        index = {v: i for i, v in enumerate(vs)}
        out = []
        for lab, s, t in arrows:
            s, t = str(s), str(t)
            if s not in index or t not in index:
                raise QuiverError(f"arrow {lab}: unknown vertex")
            out.append(Arrow(str(lab), index[s], index[t]))
        return cls(vs, tuple(out))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise QuiverError(f"unknown vertex {label!r}") from None

    def arrow_index(self, label: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.label == label:
                return i
        raise QuiverError(f"unknown arrow {label!r}")

    def opposite(self, suffix: str = "_op") -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(_op_label(a.label, suffix), a.target, a.source)
                                           for a in self.arrows))

    def to_dot(self) -> str:
        lines = ["digraph Q {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for a in self.arrows:
            lines.append(f'  "{self.vertices[a.source]}" -> "{self.vertices[a.target]}" [label="{a.label}"];')
        lines.append("}")
        return "\n".join(lines)


def _op_label(label: str, suffix: str) -> str:
    return label[: -len(suffix)] if label.endswith(suffix) else label + suffix


class Path(NamedTuple):
    """A path; ``arrows`` holds arrow indices in written (right-to-left) order."""

    source: int
    target: int
    arrows: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def is_vertex(self) -> bool:
        return not self.arrows

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)


def vertex_path(i: int) -> Path:
    return Path(i, i, ())


def make_path(q: Quiver, word: Sequence[int]) -> Path:
    """Path from arrow indices in written order; validates composability."""
    word = tuple(word)
    if not word:
        raise QuiverError("empty word; use vertex_path")
    for left, right in zip(word, word[1:]):
        if q.arrows[right].target != q.arrows[left].source:
            raise QuiverError("arrows do not compose: "
                              f"{q.arrows[left].label}*{q.arrows[right].label}")
    return Path(q.arrows[word[-1]].source, q.arrows[word[0]].target, word)


def compose(p: Path, r: Path) -> Path | None:
    """``p * r`` (first r, then p), or None when not composable."""
    if p.source != r.target:
        return None
    return Path(r.source, p.target, p.arrows + r.arrows)


def path_label(q: Quiver, p: Path) -> str:
    if p.is_vertex():
        return f"e{q.vertices[p.source]}"
    return "*".join(q.arrows[a].label for a in p.arrows)


# Linear combinations of paths: dict {Path: coefficient}.

@dataclass(frozen=True)
class RelationIdeal:
    generators: tuple[tuple[tuple[Path, object], ...], ...]

    @classmethod
    def from_dicts(cls, q: Quiver, gens: Iterable[dict], field: Field = Q) -> "RelationIdeal":
        out = []
        for g in gens:
            g = {p: field(c) for p, c in g.items() if field(c) != 0}
            if not g:
                raise QuiverError("zero relation")
            ends = {(p.source, p.target) for p in g}
            if len(ends) != 1:
                raise QuiverError("relation is not a combination of parallel paths")
            if any(p.length < 2 for p in g):
                raise QuiverError("relation has a term of length < 2 (ideal not admissible)")
            out.append(tuple(sorted(g.items(), key=lambda pc: pc[0].sort_key())))
        return cls(tuple(out))

    @classmethod
    def monomial(cls, q: Quiver, words: Iterable[Sequence[int]], field: Field = Q) -> "RelationIdeal":
        return cls.from_dicts(q, [{make_path(q, w): 1} for w in words], field)

    def as_dicts(self) -> list[dict]:
        return [dict(g) for g in self.generators]

    def is_monomial(self) -> bool:
        return all(len(g) == 1 for g in self.generators)


def opposite(q: Quiver, ideal: RelationIdeal) -> tuple[Quiver, RelationIdeal]:
    """Reverse arrows and relation words; an involution."""
    qo = q.opposite()
    gens = []
    for g in ideal.generators:
        gens.append(tuple(sorted(((Path(p.target, p.source, p.arrows[::-1]), c) for p, c in g),
                                 key=lambda pc: pc[0].sort_key())))
    return qo, RelationIdeal(tuple(gens))


# ---------- Groebner completion ----------

@dataclass
class GroebnerData:
    quiver: Quiver
    field: Field
    length_cap: int
    rules: list[tuple[Path, dict]]          # leading path -> tail (lower terms, negated)
    basis: list[Path]
    finite: bool
    _lead_words: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._lead_words = {p.arrows: tail for p, tail in self.rules}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def normal_form(self, x: dict) -> dict:
        return _reduce(x, self._lead_words, self.field)

    def leading_words(self) -> list[tuple[int, ...]]:
        return [p.arrows for p, _ in self.rules]


def _find_divisor(word: tuple, lead_words: dict, lengths: list[int]):
    n = len(word)
    for L in lengths:
        if L > n:
            break
        for i in range(n - L + 1):
            if word[i:i + L] in lead_words:
                return i, L
    return None


def _reduce(x: dict, lead_words: dict, field: Field) -> dict:
    """Full reduction of a linear combination of paths."""
    p = field.p
    lengths = sorted({len(w) for w in lead_words})
    out: dict = {}
    todo = {k: v for k, v in x.items() if v != 0}
    while todo:
        # largest term first: keeps termination under the length-lex order
        path = max(todo, key=Path.sort_key)
        c = todo.pop(path)
        hit = _find_divisor(path.arrows, lead_words, lengths) if lengths else None
        if hit is None:
            out[path] = field.norm(out.get(path, 0) + c)
            if out[path] == 0:
                del out[path]
            continue
        i, L = hit
        pre, post = path.arrows[:i], path.arrows[i + L:]
        for tp, tc in lead_words[path.arrows[i:i + L]].items():
            if tp.is_vertex():
                raise QuiverError("rewrite produced a vertex term")
            word = pre + tp.arrows + post
            np_ = Path(path.source, path.target, word)
            v = todo.get(np_, 0) + c * tc
            v = v % p if p else v
            if v:
                todo[np_] = v
            else:
                todo.pop(np_, None)
    return out


def _leading(x: dict) -> Path:
    return max(x, key=Path.sort_key)


def _make_rule(x: dict, field: Field) -> tuple[Path, dict]:
    lead = _leading(x)
    inv = field.inv(x[lead])
    tail = {p: field.norm(-c * inv) for p, c in x.items() if p != lead}
    return lead, tail


def _overlaps(u: tuple, v: tuple):
    """Proper overlaps: suffix of u equals prefix of v (nonempty, proper for both)."""
    for k in range(1, min(len(u), len(v))):
        if u[-k:] == v[:k]:
            yield k


def groebner(q: Quiver, ideal: RelationIdeal, length_cap: int = 32, field: Field = Q,
             max_basis: int = 5000) -> GroebnerData:
    """Complete the relations to a reduced rewrite system and list normal-form paths.

    Raises CapExceeded when a rule with a leading word longer than
    ``length_cap`` is required.  ``finite`` is set iff no irreducible path
    reaches length ``length_cap`` (and enumeration stayed below ``max_basis``).
    """
    if ideal.generators:
        longest = max(p.length for g in ideal.generators for p, _ in g)
        if length_cap < longest:
            raise ValueError("length_cap is below the longest relation")
    gens = [{p: field(c) for p, c in g} for g in ideal.generators]
    rules: dict[tuple, tuple[Path, dict]] = {}

    def lw_map():
        return {w: tail for w, (_, tail) in rules.items()}

    def insert(x: dict) -> bool:
        x = _reduce(x, lw_map(), field)
        if not x:
            return False
        lead, tail = _make_rule(x, field)
        if lead.length > length_cap:
            raise CapExceeded(f"completion needs a rule of length {lead.length} > cap {length_cap}")
        rules[lead.arrows] = (lead, tail)
        return True

    for g in sorted(gens, key=lambda d: _leading(d).sort_key()):
        insert(g)
    _interreduce(rules, field)

    done: set = set()
    while True:
        pending = []
        items = sorted(rules.values(), key=lambda r: r[0].sort_key())
        for lu, tu in items:
            for lv, tv in items:
                for k in _overlaps(lu.arrows, lv.arrows):
                    key = (lu.arrows, lv.arrows, k)
                    if key in done:
                        continue
                    done.add(key)
                    pending.append((len(lu.arrows) + len(lv.arrows) - k, key, lu, tu, lv, tv, k))
        if not pending:
            break
        pending.sort(key=lambda t: (t[0], t[1]))
        changed = False
        for _, _, lu, tu, lv, tv, k in pending:
            if lu.arrows not in rules or lv.arrows not in rules:
                continue
            u, v = lu.arrows, lv.arrows
            # word = u[:-k] + v = u + v[k:]; S = (u - tu) * v[k:] - u[:-k] * (v - tv)
            right = v[k:]
            left = u[:-k]
            s: dict = {}
            for tp, tc in tu.items():
                w = Path(lv.source, lu.target, tp.arrows + right)
                s[w] = field.norm(s.get(w, 0) + tc)
            for tp, tc in tv.items():
                w = Path(lv.source, lu.target, left + tp.arrows)
                s[w] = field.norm(s.get(w, 0) - tc)
            s = {p_: c for p_, c in s.items() if c != 0}
            if s and insert(s):
                changed = True
        if changed:
            _interreduce(rules, field)
            done = set()
    rule_list = sorted(rules.values(), key=lambda r: r[0].sort_key())
    basis, finite = _enumerate_basis(q, {w for w in rules}, length_cap, max_basis)
    return GroebnerData(q, field, length_cap, rule_list, basis, finite)


def _interreduce(rules: dict, field: Field) -> None:
    """Drop rules whose leading word contains another leading word; reduce tails."""
    changed = True
    while changed:
        changed = False
        words = sorted(rules, key=lambda w: (len(w), w))
        for w in words:
            others = {x: rules[x][1] for x in rules if x != w}
            lengths = sorted({len(x) for x in others})
            if others and _find_divisor(w, others, lengths) is not None:
                lead, tail = rules.pop(w)
                x = dict(tail)
                x[lead] = field.norm(x.get(lead, 0) - field.one)
                x = _reduce({p: c for p, c in x.items() if c != 0}, {k: v[1] for k, v in rules.items()}, field)
                if x:
                    nl, nt = _make_rule(x, field)
                    rules[nl.arrows] = (nl, nt)
                changed = True
                break
    lw = {w: r[1] for w, r in rules.items()}
    for w, (lead, tail) in list(rules.items()):
        others = {x: t for x, t in lw.items() if x != w}
        rules[w] = (lead, _reduce(tail, others, field))
        lw[w] = rules[w][1]


def _enumerate_basis(q: Quiver, lead_words: set, cap: int, max_basis: int) -> tuple[list[Path], bool]:
    lengths = sorted({len(w) for w in lead_words})
    lw = {w: None for w in lead_words}
    basis = [vertex_path(i) for i in range(q.n)]
    layer = [p for p in basis]
    finite = True
    for length in range(1, cap + 1):
        nxt = []
        for p in layer:
            for ai, a in enumerate(q.arrows):
                # extend on the left: a * p
                if a.source != p.target:
                    continue
                word = (ai,) + p.arrows
                # only suffixes starting at position 0 can be new divisors
                if any(word[:L] in lw for L in lengths if L <= len(word)):
                    continue
                nxt.append(Path(p.source, a.target, word))
        if not nxt:
            break
        nxt.sort(key=Path.sort_key)
        basis.extend(nxt)
        layer = nxt
        if length == cap or len(basis) > max_basis:
            finite = False
            break
    basis.sort(key=Path.sort_key)
    return basis, finite
