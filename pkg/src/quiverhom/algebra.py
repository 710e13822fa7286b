"""Finite-dimensional basic algebras given by a basis and structure constants.

Two constructions share this class: path algebras modulo a Groebner-complete
ideal (:func:`from_presentation`) and idempotent corners (see ``corner``).

Every basis element ``b`` satisfies ``b = e_left(b) * b * e_right(b)``; for a
path ``p: s -> t`` that is ``left = t``, ``right = s``.  The first ``n`` basis
elements are the idempotents ``e_0 .. e_{n-1}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .exactla import EchelonSpan, Field
from .presentation import GroebnerData, InfiniteDimensional, Path, path_label


class BasisElement(NamedTuple):
    label: str
    left: int
    right: int
    degree: int


# An expression is a tuple of (coefficient, word); a word is a tuple of
# generator basis indices g1, ..., gk meaning the product g1 * g2 * ... * gk.
Expression = tuple


class BasicAlgebra:
    def __init__(self, field: Field, vertex_labels: Sequence[str], basis: Sequence[BasisElement],
                 mult: dict, generators: Sequence[int], expressions: dict | None = None,
                 kind: str = "path", parent_index: Sequence[int] | None = None):
        self.field = field
        self.vertex_labels = tuple(vertex_labels)
        self.basis = tuple(basis)
        # mult[(i, j)] = ((k, c), ...) for right(i) == left(j); missing keys mean zero
        self.mult = mult
        self.generators = tuple(generators)
        self.kind = kind
        self.parent_index = tuple(parent_index) if parent_index is not None else None
        self._opposite: BasicAlgebra | None = None
        n = self.n
        for i in range(n):
            b = self.basis[i]
            if not (b.left == b.right == i and b.degree == 0):
                raise ValueError("first basis elements must be the idempotents")
        if any(b.degree == 0 for b in self.basis[n:]):
            raise ValueError("degree-0 basis elements must be idempotents")
        self.expressions = expressions if expressions is not None else _compute_expressions(self)

    # ---- basic data ----
    @property
    def n(self) -> int:
        return len(self.vertex_labels)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def labels(self) -> list[str]:
        return [b.label for b in self.basis]

    def index_of(self, label: str) -> int:
        for i, b in enumerate(self.basis):
            if b.label == label:
                return i
        raise KeyError(label)

    @cached_property
    def by_left(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for k, b in enumerate(self.basis):
            out[b.left].append(k)
        return out

    @cached_property
    def block(self) -> dict[tuple[int, int], list[int]]:
        """Basis indices with given (left, right) idempotents."""
        out: dict[tuple[int, int], list[int]] = {}
        for k, b in enumerate(self.basis):
            out.setdefault((b.left, b.right), []).append(k)
        return out

    def product_basis(self, i: int, j: int) -> tuple:
        return self.mult.get((i, j), ())

    def max_degree(self) -> int:
        return max(b.degree for b in self.basis)

    # ---- elements as sparse dicts {basis index: coeff} ----
    def multiply(self, x: dict, y: dict) -> dict:
        f = self.field
        out: dict = {}
        for i, a in x.items():
            if not a:
                continue
            ri = self.basis[i].right
            for j, b in y.items():
                if not b or self.basis[j].left != ri:
                    continue
                for k, c in self.mult.get((i, j), ()):
                    out[k] = f.norm(out.get(k, 0) + a * b * c)
        return {k: v for k, v in out.items() if v != 0}

    def unit(self) -> dict:
        return {i: self.field.one for i in range(self.n)}

    def radical_power_basis(self, k: int) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.degree >= k]

    def radical_nilpotency_index(self) -> int:
        """Least N with rad^N = 0, computed from products (not from the degree tags)."""
        f = self.field
        rad = [{i: f.one} for i in self.radical_power_basis(1)]
        power = rad
        N = 1
        while power:
            span = EchelonSpan(f)
            nxt = []
            for x in power:
                for g in rad:
                    z = self.multiply(x, g)
                    if z and span.add(z):
                        nxt.append(z)
            power = nxt
            N += 1
            if N > self.dim + 1:
                raise RuntimeError("radical is not nilpotent")
        return N

    def opposite(self) -> "BasicAlgebra":
        if self._opposite is None:
            basis = [BasisElement(b.label if i < self.n else b.label + "^op", b.right, b.left, b.degree)
                     for i, b in enumerate(self.basis)]
            mult = {(j, i): v for (i, j), v in self.mult.items()}
            exprs = {b: tuple((c, w[::-1]) for c, w in e) for b, e in self.expressions.items()}
            op = BasicAlgebra(self.field, self.vertex_labels, basis, mult, self.generators, exprs,
                              kind=self.kind + "^op", parent_index=self.parent_index)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def check_associativity(self, trials: int = 100, seed: int = 0) -> bool:
        rng = random.Random(seed)
        one = self.field.one
        for _ in range(trials):
            i, j, k = (rng.randrange(self.dim) for _ in range(3))
            x, y, z = {i: one}, {j: one}, {k: one}
            if self.multiply(self.multiply(x, y), z) != self.multiply(x, self.multiply(y, z)):
                return False
        return True

    def __repr__(self) -> str:
        return f"BasicAlgebra({self.kind}, n={self.n}, dim={self.dim}, field={self.field})"


def _compute_expressions(A: BasicAlgebra) -> dict:
    """Write every radical basis element as a combination of generator words."""
    f = A.field
    words: list[tuple[tuple, dict]] = []
    span = EchelonSpan(f)
    layer = []
    for g in A.generators:
        val = {g: f.one}
        if span.add(val):
            words.append(((g,), val))
            layer.append(((g,), val))
    while layer:
        nxt = []
        for w, val in layer:
            for g in A.generators:
                z = A.multiply(val, {g: f.one})
                if z and span.add(z):
                    item = (w + (g,), z)
                    words.append(item)
                    nxt.append(item)
        layer = nxt
    # express basis elements: solve sum c_w val_w = b via a joint elimination
    from .exactla import Matrix, solve_many
    rad = A.radical_power_basis(1)
    if not rad:
        return {}
    if not words:
        raise ValueError("generators do not span the radical")
    cols = [val for _, val in words]
    m = Matrix.from_sparse_columns(f, cols, A.dim)
    rhs = Matrix.from_sparse_columns(f, [{b: f.one} for b in rad], A.dim)
    sol = solve_many(m, rhs)
    if sol is None:
        raise ValueError("generators do not span the radical")
    out = {}
    for j, b in enumerate(rad):
        out[b] = tuple((sol[i, j], words[i][0]) for i in range(len(words)) if sol[i, j] != 0)
    return out


def from_presentation(g: GroebnerData) -> BasicAlgebra:
    """Path-backed algebra: basis = normal-form paths, degree = path length."""
    if not g.finite:
        raise InfiniteDimensional("normal-form basis reached the length cap; algebra may be infinite-dimensional")
    q = g.quiver
    f = g.field
    paths = list(g.basis)
    index = {p: i for i, p in enumerate(paths)}
    basis = [BasisElement(path_label(q, p), p.target, p.source, p.length) for p in paths]
    mult = {}
    for i, p in enumerate(paths):
        for j, r in enumerate(paths):
            if p.source != r.target:
                continue
            if p.is_vertex():
                mult[(i, j)] = ((j, f.one),)
                continue
            if r.is_vertex():
                mult[(i, j)] = ((i, f.one),)
                continue
            prod = Path(r.source, p.target, p.arrows + r.arrows)
            nf = g.normal_form({prod: f.one})
            if nf:
                mult[(i, j)] = tuple(sorted((index[x], c) for x, c in nf.items()))
    gens = [index[Path(a.source, a.target, (k,))] for k, a in enumerate(q.arrows)]
    arrow_gen = {k: gens[k] for k in range(len(q.arrows))}
    exprs = {}
    for i, p in enumerate(paths):
        if p.arrows:
            exprs[i] = ((f.one, tuple(arrow_gen[a] for a in p.arrows)),)
    A = BasicAlgebra(f, q.vertices, basis, mult, gens, exprs, kind="path")
    A.presentation = g
    return A


def quiver_algebra(q, ideal, field=None, length_cap: int = 32) -> BasicAlgebra:
    """Convenience: Groebner completion followed by :func:`from_presentation`."""
    from .exactla import Q
    from .presentation import groebner
    return from_presentation(groebner(q, ideal, length_cap, field or Q))
