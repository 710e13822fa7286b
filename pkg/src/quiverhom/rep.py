"""Finite-dimensional right modules over a :class:`BasicAlgebra`.

A module ``M`` is stored as component dimensions ``dims[i] = dim M e_i``
plus one matrix per generator of the algebra.  Vectors are columns.  The
right action of a basis element ``b`` maps component ``left(b)`` to
component ``right(b)``, so an arrow ``g: s -> t`` maps ``M e_t`` to
``M e_s``, and ``act(x * y) = act(y) @ act(x)``.
"""

from __future__ import annotations

import random
from typing import Sequence

from .algebra import BasicAlgebra
from .exactla import EchelonSpan, Field, Matrix, complement_basis, kernel_basis, solve_many, sparse_kernel


class AlgebraMismatch(ValueError):
    pass


class ModuleError(ValueError):
    pass


class Module:
    def __init__(self, algebra: BasicAlgebra, dims: Sequence[int], actions: dict[int, Matrix],
                 name: str = "", validate: bool = False):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n:
            raise ModuleError("one dimension per idempotent required")
        self.name = name
        f = algebra.field
        acts = {}
        for g in algebra.generators:
            b = algebra.basis[g]
            shape = (self.dims[b.right], self.dims[b.left])
            m = actions.get(g)
            if m is None:
                m = Matrix.zeros(f, *shape)
            if m.shape != shape:
                raise ModuleError(f"action of {b.label} has shape {m.shape}, expected {shape}")
            acts[g] = m
        self.actions = acts
        self._act_cache: dict[int, Matrix] = {}
        self._cache: dict = {}
        if validate:
            self.check()

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def act(self, b: int) -> Matrix:
        """Matrix of the right action of basis element ``b``."""
        m = self._act_cache.get(b)
        if m is not None:
            return m
        A = self.algebra
        el = A.basis[b]
        f = self.field
        if b < A.n:
            m = Matrix.identity(f, self.dims[b])
        elif b in self.actions:
            m = self.actions[b]
        else:
            m = Matrix.zeros(f, self.dims[el.right], self.dims[el.left])
            for c, word in A.expressions[b]:
                w = self.act(word[0])
                for g in word[1:]:
                    w = self.act(g) @ w
                m = m + w.scale(c)
        self._act_cache[b] = m
        return m

    def act_element(self, x: dict, left: int, right: int) -> Matrix:
        """Action of an element ``x`` lying in ``e_left A e_right``."""
        m = Matrix.zeros(self.field, self.dims[right], self.dims[left])
        for b, c in x.items():
            el = self.algebra.basis[b]
            if (el.left, el.right) != (left, right):
                raise ModuleError("element is not homogeneous for the given idempotents")
            m = m + self.act(b).scale(c)
        return m

    def check(self) -> None:
        """Verify act(x*y) == act(y) @ act(x) for all composable basis pairs."""
        A = self.algebra
        for (i, j), prod in A.mult.items():
            lhs = self.act(j) @ self.act(i)
            bi, bj = A.basis[i], A.basis[j]
            rhs = Matrix.zeros(self.field, self.dims[bj.right], self.dims[bi.left])
            for k, c in prod:
                rhs = rhs + self.act(k).scale(c)
            if lhs != rhs:
                raise ModuleError(f"module relation fails for {bi.label} * {bj.label}")
        for i, b in enumerate(A.basis):
            for j, b2 in enumerate(A.basis):
                if b.right == b2.left and (i, j) not in A.mult:
                    if not (self.act(j) @ self.act(i)).is_zero():
                        raise ModuleError(f"product {b.label} * {b2.label} = 0 acts nonzero")

    def offsets(self) -> list[int]:
        out, s = [], 0
        for d in self.dims:
            out.append(s)
            s += d
        return out

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"Module{nm}(dims={self.dims})"


class ProjectiveModule(Module):
    """Direct sum of indecomposable projectives ``e_j A``, one per entry of ``summands``.

    Component ``c`` has basis ``(k, b)`` for summand ``k`` and basis element
    ``b`` with ``left(b) = summands[k]`` and ``right(b) = c``; summand order
    first.  The generator of summand ``k`` is ``(k, e_{summands[k]})``.
    """

    def __init__(self, algebra: BasicAlgebra, summands: Sequence[int], name: str = ""):
        A = algebra
        self.summands = tuple(summands)
        layout: list[list[tuple[int, int]]] = [[] for _ in range(A.n)]
        for k, j in enumerate(self.summands):
            for b in A.by_left[j]:
                layout[A.basis[b].right].append((k, b))
        self.layout = layout
        self.position = {kb: (c, i) for c, lst in enumerate(layout) for i, kb in enumerate(lst)}
        dims = [len(lst) for lst in layout]
        self.algebra = A
        self.dims = tuple(dims)
        actions = {g: self._right_mult(g) for g in A.generators}
        super().__init__(A, dims, actions, name=name)

    def _right_mult(self, g: int) -> Matrix:
        A = self.algebra
        bg = A.basis[g]
        rows, cols = self.dims[bg.right], self.dims[bg.left]
        ent = [A.field.zero] * (rows * cols)
        for col, (k, b) in enumerate(self.layout[bg.left]):
            for bb, c in A.product_basis(b, g):
                _, row = self.position[(k, bb)]
                ent[row * cols + col] = c
        return Matrix(A.field, rows, cols, tuple(ent))

    def act(self, b: int) -> Matrix:
        m = self._act_cache.get(b)
        if m is None:
            m = self._right_mult(b)
            self._act_cache[b] = m
        return m

    def generator_position(self, k: int) -> tuple[int, int]:
        return self.position[(k, self.summands[k])]

    def multiplicities(self) -> tuple[int, ...]:
        out = [0] * self.algebra.n
        for j in self.summands:
            out[j] += 1
        return tuple(out)


class ModuleMap:
    def __init__(self, source: Module, target: Module, mats: Sequence[Matrix], validate: bool = False):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("modules over different algebras")
        self.source = source
        self.target = target
        self.mats = tuple(mats)
        for c, m in enumerate(self.mats):
            if m.shape != (target.dims[c], source.dims[c]):
                raise ModuleError("component matrix has wrong shape")
        if validate and not self.is_homomorphism():
            raise ModuleError("map does not commute with the action")

    def is_homomorphism(self) -> bool:
        A = self.source.algebra
        for g in A.generators:
            b = A.basis[g]
            if self.mats[b.right] @ self.source.act(g) != self.target.act(g) @ self.mats[b.left]:
                return False
        return True

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        return ModuleMap(other.source, self.target, [a @ b for a, b in zip(self.mats, other.mats)])

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)])

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [m.scale(c) for m in self.mats])

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def rank(self) -> int:
        return sum(m.rank() for m in self.mats)

    def is_injective(self) -> bool:
        return all(m.rank() == m.cols for m in self.mats)

    def is_surjective(self) -> bool:
        return all(m.rank() == m.rows for m in self.mats)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def flat(self) -> dict:
        """The map as one sparse vector (component matrices concatenated)."""
        out = {}
        pos = 0
        for m in self.mats:
            for x in m.entries:
                if x != 0:
                    out[pos] = x
                pos += 1
        return out


def zero_map(M: Module, N: Module) -> ModuleMap:
    f = M.field
    return ModuleMap(M, N, [Matrix.zeros(f, N.dims[c], M.dims[c]) for c in range(M.algebra.n)])


def identity_map(M: Module) -> ModuleMap:
    return ModuleMap(M, M, [Matrix.identity(M.field, d) for d in M.dims])


def zero_module(A: BasicAlgebra) -> Module:
    return Module(A, [0] * A.n, {})


# ---------- constructions ----------

def projective(A: BasicAlgebra, i: int) -> ProjectiveModule:
    return ProjectiveModule(A, [i], name=f"P{A.vertex_labels[i]}")


def simple(A: BasicAlgebra, i: int) -> Module:
    dims = [0] * A.n
    dims[i] = 1
    return Module(A, dims, {}, name=f"S{A.vertex_labels[i]}")


def semisimple(A: BasicAlgebra, mult: Sequence[int], name: str = "") -> Module:
    return Module(A, mult, {}, name=name)


def direct_sum(mods: Sequence[Module], name: str = "") -> Module:
    A = mods[0].algebra
    f = A.field
    dims = [sum(M.dims[c] for M in mods) for c in range(A.n)]
    actions = {}
    for g in A.generators:
        b = A.basis[g]
        rows, cols = dims[b.right], dims[b.left]
        ent = [f.zero] * (rows * cols)
        r0 = c0 = 0
        for M in mods:
            m = M.act(g)
            for i in range(m.rows):
                for j in range(m.cols):
                    ent[(r0 + i) * cols + c0 + j] = m[i, j]
            r0 += m.rows
            c0 += m.cols
        actions[g] = Matrix(f, rows, cols, tuple(ent))
    return Module(A, dims, actions, name=name)


def direct_sum_map(maps: Sequence[ModuleMap], source: Module, target: Module) -> ModuleMap:
    """Block-diagonal sum of maps, between the given direct-sum modules."""
    f = source.field
    mats = []
    for c in range(source.algebra.n):
        rows, cols = target.dims[c], source.dims[c]
        ent = [f.zero] * (rows * cols)
        r0 = c0 = 0
        for h in maps:
            m = h.mats[c]
            for i in range(m.rows):
                for j in range(m.cols):
                    ent[(r0 + i) * cols + c0 + j] = m[i, j]
            r0 += m.rows
            c0 += m.cols
        mats.append(Matrix(f, rows, cols, tuple(ent)))
    return ModuleMap(source, target, mats)


def orbit_vectors(X: Module, x: Sequence, j: int) -> dict[int, tuple]:
    """``x * b`` for every basis element b in e_j A, by chains of generator actions."""
    A = X.algebra
    f = A.field
    out = {j: tuple(x)}
    memo: dict[tuple, tuple] = {(): tuple(x)}
    for b in A.by_left[j]:
        if b < A.n:
            continue
        if b in X.actions:
            out[b] = X.actions[b].apply(x)
            continue
        acc = None
        for c, word in A.expressions[b]:
            key = ()
            v = memo[()]
            for g in word:
                key = key + (g,)
                w = memo.get(key)
                if w is None:
                    w = X.actions[g].apply(v)
                    memo[key] = w
                v = w
            if acc is None and c == 1:
                acc = v
            else:
                acc = tuple(f.norm(a + c * y) for a, y in
                            zip(acc if acc is not None else (f.zero,) * len(v), v))
        out[b] = acc if acc is not None else (f.zero,) * X.dims[A.basis[b].right]
    return out


def map_from_projective(P: ProjectiveModule, X: Module, images: Sequence[Sequence]) -> ModuleMap:
    """The unique map P -> X sending the generator of summand k to ``images[k]`` in X e_{j_k}."""
    A = P.algebra
    f = A.field
    orbits = [orbit_vectors(X, images[k], j) for k, j in enumerate(P.summands)]
    cols: list[list] = [[None] * P.dims[c] for c in range(A.n)]
    for c in range(A.n):
        for pos, (k, b) in enumerate(P.layout[c]):
            cols[c][pos] = orbits[k][b]
    mats = [Matrix.from_columns(f, cols[c], X.dims[c]) if P.dims[c] else Matrix.zeros(f, X.dims[c], 0)
            for c in range(A.n)]
    return ModuleMap(P, X, mats)


def submodule_closure(M: Module, gens: Sequence[list]) -> list[Matrix]:
    """Per-component column bases of the submodule generated by ``gens[c]`` (vectors in M e_c)."""
    A = M.algebra
    f = M.field
    spans = [EchelonSpan(f) for _ in range(A.n)]
    queue = []
    for c in range(A.n):
        for v in gens[c]:
            sv = {i: x for i, x in enumerate(v) if x != 0}
            if spans[c].add(sv):
                queue.append((c, sv))
    out_of = {}
    for g in A.generators:
        out_of.setdefault(A.basis[g].left, []).append(g)
    while queue:
        c, v = queue.pop()
        dense = [v.get(i, 0) for i in range(M.dims[c])]
        for g in out_of.get(c, ()):
            tgt = A.basis[g].right
            w = M.act(g).apply(dense)
            sw = {i: x for i, x in enumerate(w) if x != 0}
            if sw and spans[tgt].add(sw):
                queue.append((tgt, sw))
    return [Matrix.from_sparse_columns(f, [spans[c].piv[k] for k in sorted(spans[c].piv)], M.dims[c])
            for c in range(A.n)]


def _unit_rows(B: Matrix) -> list[int] | None:
    """Rows i_1..i_r with B[i_k] the k-th unit row, if B is in such reduced form."""
    rows = []
    srows = B._srows()
    for k, col in enumerate(B._scols()):
        hit = None
        for i, v in col.items():
            if v == 1 and len(srows[i]) == 1:
                hit = i
                break
        if hit is None:
            return None
        rows.append(hit)
    return rows


def submodule(M: Module, bases: Sequence[Matrix], name: str = "", trusted: bool = False) -> tuple[Module, ModuleMap]:
    """Module structure on a submodule given by column bases; returns (N, inclusion).

    With ``trusted`` the caller guarantees closure under the action, and bases
    in reduced form are read off at their unit rows instead of solved for.
    """
    A = M.algebra
    f = M.field
    units = [_unit_rows(B) if trusted else None for B in bases]
    actions = {}
    for g in A.generators:
        b = A.basis[g]
        Bt, Bs = bases[b.left], bases[b.right]
        rows = units[b.right]
        if rows is not None:
            act = M.act(g)
            cols = [act.apply_sparse(v) for v in Bt._scols()]
            ent = tuple(w.get(i, 0) for i in rows for w in cols)
            actions[g] = Matrix(f, len(rows), len(cols), ent)
            continue
        img = M.act(g) @ Bt
        x = solve_many(Bs, img)
        if x is None:
            raise ModuleError("subspaces are not closed under the action")
        actions[g] = x
    N = Module(A, [B.cols for B in bases], actions, name=name)
    return N, ModuleMap(N, M, list(bases))


def quotient(M: Module, bases: Sequence[Matrix], name: str = "") -> tuple[Module, ModuleMap]:
    """``M / N`` for the submodule spanned by ``bases``; returns (M/N, projection)."""
    A = M.algebra
    f = M.field
    comps = []
    projs = []
    for c in range(A.n):
        d = M.dims[c]
        B = bases[c]
        chosen = complement_basis(B, d)
        C = Matrix.from_sparse_columns(f, [{i: f.one} for i in chosen], d)
        full = B.hstack(C) if B.cols else C
        inv = full.inverse() if d else Matrix.zeros(f, 0, 0)
        proj = inv.select_rows(list(range(B.cols, d))) if d else Matrix.zeros(f, 0, 0)
        comps.append(C)
        projs.append(proj)
    actions = {}
    for g in A.generators:
        b = A.basis[g]
        actions[g] = projs[b.right] @ M.act(g) @ comps[b.left]
    Qm = Module(A, [C.cols for C in comps], actions, name=name)
    return Qm, ModuleMap(M, Qm, projs)


def kernel(h: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(h.source, [kernel_basis(m) for m in h.mats], trusted=True)


def image_bases(h: ModuleMap) -> list[Matrix]:
    from .exactla import column_space
    return [column_space(m) for m in h.mats]


def cokernel(h: ModuleMap) -> tuple[Module, ModuleMap]:
    return quotient(h.target, image_bases(h))


def radical_bases(M: Module) -> list[Matrix]:
    """Column bases of rad M = sum of images of the generator actions."""
    A = M.algebra
    f = M.field
    spans = [EchelonSpan(f) for _ in range(A.n)]
    for g in A.generators:
        b = A.basis[g]
        for col in M.act(g).sparse_cols():
            if col:
                spans[b.right].add(col)
    return [Matrix.from_sparse_columns(f, [spans[c].piv[k] for k in sorted(spans[c].piv)], M.dims[c])
            for c in range(A.n)]


def radical_submodule(M: Module) -> tuple[Module, ModuleMap]:
    return submodule(M, radical_bases(M), name=f"rad {M.name}" if M.name else "", trusted=True)


def top_dims(M: Module) -> tuple[int, ...]:
    return tuple(M.dims[c] - B.cols for c, B in enumerate(radical_bases(M)))


def is_semisimple(M: Module) -> bool:
    return all(M.act(g).is_zero() for g in M.algebra.generators)


def hom_space(M: Module, N: Module) -> list[ModuleMap]:
    """Basis of Hom_A(M, N): solutions of f_s act^M_g = act^N_g f_t for every generator g."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    A = M.algebra
    f = M.field
    # unknown f_c[r, s] -> column index
    offset = []
    pos = 0
    for c in range(A.n):
        offset.append(pos)
        pos += N.dims[c] * M.dims[c]
    nvars = pos
    rows = []
    for g in A.generators:
        b = A.basis[g]
        t, s = b.left, b.right
        AM = M.act(g)          # (dM_s, dM_t)
        AN = N.act(g)          # (dN_s, dN_t)
        dMs, dMt, dNs, dNt = M.dims[s], M.dims[t], N.dims[s], N.dims[t]
        if dNs == 0 or dMt == 0:
            continue
        AMc = AM.sparse_cols()
        ANr = AN.sparse_rows()
        for r in range(dNs):
            for q in range(dMt):
                row = {}
                for u, v in AMc[q].items():      # f_s[r, u] * AM[u, q]
                    key = offset[s] + r * dMs + u
                    row[key] = row.get(key, 0) + v
                for u, v in ANr[r].items():      # - AN[r, u] * f_t[u, q]
                    key = offset[t] + u * dMt + q
                    row[key] = row.get(key, 0) - v
                row = {k: f.norm(v) for k, v in row.items() if f.norm(v) != 0}
                if row:
                    rows.append(row)
    out = []
    for vec in sparse_kernel(rows, nvars, f):
        mats = []
        for c in range(A.n):
            dn, dm = N.dims[c], M.dims[c]
            ent = tuple(f(vec.get(offset[c] + i, 0)) for i in range(dn * dm))
            mats.append(Matrix(f, dn, dm, ent))
        out.append(ModuleMap(M, N, mats))
    return out


def hom_dim(M: Module, N: Module) -> int:
    return len(hom_space(M, N))


def dual(M: Module) -> Module:
    """D M = Hom_k(M, k) as a right module over the opposite algebra."""
    Aop = M.algebra.opposite()
    actions = {g: M.act(g).transpose() for g in M.algebra.generators}
    nm = f"D({M.name})" if M.name else ""
    return Module(Aop, M.dims, actions, name=nm)


def dual_map(h: ModuleMap) -> ModuleMap:
    return ModuleMap(dual(h.target), dual(h.source), [m.transpose() for m in h.mats])


def injective(A: BasicAlgebra, i: int) -> Module:
    """Indecomposable injective D(A e_i), the injective envelope of S_i."""
    M = dual(projective(A.opposite(), i))
    M.name = f"I{A.vertex_labels[i]}"
    return M


def random_element_map(maps: Sequence[ModuleMap], rng: random.Random, lo: int = -3, hi: int = 3) -> ModuleMap | None:
    if not maps:
        return None
    h = maps[0].scale(rng.randint(lo, hi))
    for m in maps[1:]:
        h = h + m.scale(rng.randint(lo, hi))
    return h


def find_isomorphism(M: Module, N: Module, tries: int = 8, seed: int = 0) -> ModuleMap | None:
    """Look for an isomorphism as a seeded random combination of a Hom basis."""
    if M.dims != N.dims:
        return None
    H = hom_space(M, N)
    rng = random.Random(seed)
    for _ in range(tries):
        h = random_element_map(H, rng, -50, 50)
        if h is not None and h.is_iso():
            return h
    if M.dim == 0:
        return zero_map(M, N)
    return None


def trace(h: ModuleMap):
    f = h.source.field
    t = f.zero
    for m in h.mats:
        for i in range(min(m.rows, m.cols)):
            t = f.norm(t + m[i, i])
    return t


def radical_endomorphisms(M: Module) -> list[ModuleMap]:
    """Basis of rad End(M): kernel of the trace form tr(xy) on End(M), valid in characteristic 0."""
    if not M.field.is_rational:
        raise ValueError("the trace-form criterion needs characteristic 0")
    E = hom_space(M, M)
    f = M.field
    gram = [{b: trace(x.compose(y)) for b, y in enumerate(E) if trace(x.compose(y)) != 0} for x in E]
    out = []
    for vec in sparse_kernel(gram, len(E), f):
        h = zero_map(M, M)
        for b, c in vec.items():
            h = h + E[b].scale(c)
        out.append(h)
    return out


def random_submodule_quotient(P: Module, rng: random.Random, n_gens: int = 1, name: str = "") -> Module:
    """P modulo the submodule generated by ``n_gens`` random vectors of rad P."""
    A = P.algebra
    rad = radical_bases(P)
    gens: list[list] = [[] for _ in range(A.n)]
    comps = [c for c in range(A.n) if rad[c].cols]
    if not comps:
        return P
    for _ in range(n_gens):
        c = rng.choice(comps)
        B = rad[c]
        coeffs = [rng.randint(-2, 2) for _ in range(B.cols)]
        if not any(coeffs):
            coeffs[rng.randrange(B.cols)] = 1
        gens[c].append(list(B.apply(coeffs)))
    Qm, _ = quotient(P, submodule_closure(P, gens), name=name)
    return Qm
