"""Concrete finite-dimensional algebras presented by quivers with relations.

An algebra is stored by an explicit basis of paths modulo the relation ideal,
together with left-multiplication matrices for the arrows; relations are
applied once, at construction.  Everything downstream (modules, hom spaces,
functor categories) is linear algebra over this basis.

Supported constructions: the nilpotent loop algebras k[x]/(x^n), upper
triangular matrix extensions T_2(A), preprojective algebras of type A_m at
desk scale, and endomorphism-style algebras assembled from a composition
table of hom-space bases.
"""

from __future__ import annotations

import json
from typing import Callable, Optional

import numpy as np

from .fp import Mat, is_prime, kernel_basis

PathLabels = tuple[str, ...]
RelationTerm = tuple[int, PathLabels]
Relation = tuple[RelationTerm, ...]


class AlgebraConstructionError(ValueError):
    pass


class QuiverPresentation:
    """A quiver with an admissible relation ideal over F_p.

    Paths are tuples of arrow labels in traversal order: (a, b) means
    "first a, then b".  Every relation is a linear combination of parallel
    paths of length >= 2.
    """

    def __init__(self, vertices, arrows, relations, p: int):
        if not is_prime(p) or not (2 <= p < 2**16):
            raise AlgebraConstructionError("modulus must be a prime in [2, 2^16), got %r" % (p,))
        self.vertices = tuple(str(v) for v in vertices)
        self.arrows = tuple((str(s), str(t), str(l)) for (s, t, l) in arrows)
        self.p = p
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraConstructionError("duplicate vertex labels")
        labels = [l for (_, _, l) in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraConstructionError("duplicate arrow labels")
        vset = set(self.vertices)
        for (s, t, l) in self.arrows:
            if s not in vset or t not in vset:
                raise AlgebraConstructionError("arrow %s has unknown endpoint" % l)
        self.arrow_src = {l: s for (s, t, l) in self.arrows}
        self.arrow_tgt = {l: t for (s, t, l) in self.arrows}
        self.relations = tuple(self._check_relation(r) for r in relations)

    def _check_relation(self, rel) -> Relation:
        terms = []
        for coeff, labels in rel:
            labels = tuple(str(l) for l in labels)
            if len(labels) < 2:
                raise AlgebraConstructionError("relation path %r has length < 2" % (labels,))
            for l in labels:
                if l not in self.arrow_src:
                    raise AlgebraConstructionError("relation uses unknown arrow %r" % l)
            for a, b in zip(labels, labels[1:]):
                if self.arrow_tgt[a] != self.arrow_src[b]:
                    raise AlgebraConstructionError("relation path %r is not composable" % (labels,))
            terms.append((int(coeff) % self.p, labels))
        ends = {(self.arrow_src[t[1][0]], self.arrow_tgt[t[1][-1]]) for t in terms}
        if len(ends) > 1:
            raise AlgebraConstructionError("relation mixes paths with different endpoints")
        return tuple(terms)

    def path_src(self, labels: PathLabels, default: Optional[str] = None) -> str:
        return self.arrow_src[labels[0]] if labels else default

    def path_tgt(self, labels: PathLabels, default: Optional[str] = None) -> str:
        return self.arrow_tgt[labels[-1]] if labels else default

    def opposite(self) -> "QuiverPresentation":
        arrows = [(t, s, l) for (s, t, l) in self.arrows]
        relations = [[(c, tuple(reversed(ls))) for (c, ls) in rel] for rel in self.relations]
        return QuiverPresentation(self.vertices, arrows, relations, self.p)

    def to_spec_dict(self) -> dict:
        rels = []
        for rel in self.relations:
            if len(rel) == 1:
                rels.append([rel[0][0], list(rel[0][1])])
            else:
                rels.append([[c, list(ls)] for (c, ls) in rel])
        return {
            "vertices": list(self.vertices),
            "arrows": [[s, t, l] for (s, t, l) in self.arrows],
            "relations": rels,
            "p": self.p,
        }

    @classmethod
    def from_spec_dict(cls, d: dict) -> "QuiverPresentation":
        relations = []
        for rel in d.get("relations", []):
            if rel and not isinstance(rel[0], list):
                relations.append([(rel[0], tuple(rel[1]))])
            else:
                relations.append([(c, tuple(ls)) for (c, ls) in rel])
        return cls(d["vertices"], [tuple(a) for a in d["arrows"]], relations, d["p"])


class Algebra:
    """A basic finite-dimensional algebra with an explicit path basis.

    basis[i] is a pair (source vertex, arrow labels); mult(i, j) is the
    coefficient vector of basis[i] * basis[j] (i after j).  Idempotents are
    the length-zero paths, one per vertex.
    """

    def __init__(self, presentation: QuiverPresentation, basis, lmul, tags=None):
        self.presentation = presentation
        self.p = presentation.p
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self.basis_index = {b: i for i, b in enumerate(self.basis)}
        self.lmul = lmul  # arrow label -> Mat (left multiplication on the basis)
        self.tags = dict(tags or {})
        self.vertices = presentation.vertices
        self.arrows = presentation.arrows
        self.idempotent_index = {
            v: self.basis_index[(v, ())] for v in self.vertices
        }
        self._mult_table: Optional[np.ndarray] = None
        self._opposite: Optional["Algebra"] = None

    # --- bookkeeping ---

    def basis_src(self, i: int) -> str:
        return self.basis[i][0]

    def basis_tgt(self, i: int) -> str:
        src, labels = self.basis[i]
        return self.presentation.path_tgt(labels, src)

    @property
    def idempotents(self):
        return [self.idempotent_index[v] for v in self.vertices]

    def unit_vector(self) -> np.ndarray:
        u = np.zeros(self.dim, dtype=np.int64)
        for i in self.idempotents:
            u[i] = 1
        return u

    # --- multiplication ---

    def mult_table(self) -> np.ndarray:
        """mult_table()[i, j] = coefficient vector of basis_i * basis_j."""
        if self._mult_table is None:
            t = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
            for j in range(self.dim):
                vec = np.zeros(self.dim, dtype=np.int64)
                vec[j] = 1
                for i in range(self.dim):
                    src_i, labels_i = self.basis[i]
                    if self.basis_tgt(j) != src_i:
                        continue
                    v = vec
                    for a in labels_i:
                        v = (self.lmul[a].a @ v) % self.p
                    t[i, j] = v
            self._mult_table = t
        return self._mult_table

    def mul_vecs(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        t = self.mult_table()
        return np.einsum("i,j,ijk->k", x, y, t) % self.p

    def vec_is_nilpotent(self, x: np.ndarray) -> bool:
        v = x % self.p
        for _ in range(self.dim + 1):
            if not v.any():
                return True
            v = self.mul_vecs(v, x)
        return False

    def validate(self) -> None:
        """Associativity on all basis triples, unit laws, orthogonal idempotents."""
        t = self.mult_table()
        for i in range(self.dim):
            for j in range(self.dim):
                ij = t[i, j]
                for k in range(self.dim):
                    left = self.mul_vecs(ij, _unit(self.dim, k))
                    right = self.mul_vecs(_unit(self.dim, i), t[j, k])
                    if not np.array_equal(left, right):
                        raise AlgebraConstructionError(
                            "associativity fails on basis triple (%d, %d, %d)" % (i, j, k)
                        )
        one = self.unit_vector()
        for i in range(self.dim):
            e = _unit(self.dim, i)
            if not np.array_equal(self.mul_vecs(one, e), e) or not np.array_equal(
                self.mul_vecs(e, one), e
            ):
                raise AlgebraConstructionError("unit law fails on basis element %d" % i)
        for v in self.vertices:
            for w in self.vertices:
                ev = _unit(self.dim, self.idempotent_index[v])
                ew = _unit(self.dim, self.idempotent_index[w])
                prod = self.mul_vecs(ev, ew)
                expected = ev if v == w else np.zeros(self.dim, dtype=np.int64)
                if not np.array_equal(prod, expected):
                    raise AlgebraConstructionError("idempotents %s, %s not orthogonal" % (v, w))

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = construct_algebra(self.presentation.opposite(), tags={"opposite_of": self.tags.get("name", "")})
            op._opposite = self
            self._opposite = op
        return self._opposite

    def to_spec_dict(self) -> dict:
        return self.presentation.to_spec_dict()

    def dump(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_spec_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def __repr__(self):
        name = self.tags.get("name")
        return "Algebra(%s, dim=%d, p=%d)" % (name or "?", self.dim, self.p)


def _unit(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[i] = 1
    return v


class _RrefSpan:
    """Incrementally maintained reduced row space over F_p."""

    def __init__(self, p: int, width: int):
        self.p = p
        self.width = width
        self.rows = np.zeros((0, width), dtype=np.int64)
        self.pivots: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = v % self.p
        if len(self.pivots):
            coeffs = v[self.pivots]
            if coeffs.any():
                v = (v - coeffs @ self.rows) % self.p
        return v

    def insert(self, v: np.ndarray) -> bool:
        """Reduce v and add it to the span; returns True if the rank grew."""
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), self.p - 2, self.p)) % self.p
        if len(self.pivots):
            col = self.rows[:, c].copy()
            if col.any():
                self.rows = (self.rows - np.outer(col, v)) % self.p
        self.rows = np.vstack([self.rows, v[None, :]])
        self.pivots.append(c)
        order = np.argsort(self.pivots, kind="stable")
        self.rows = self.rows[order]
        self.pivots = [self.pivots[i] for i in order]
        return True


def construct_algebra(pres: QuiverPresentation, max_path_len: int = 24, tags=None) -> Algebra:
    """Build the path algebra modulo relations by explicit basis enumeration.

    Errors out if the basis does not stabilize within max_path_len, which is
    the finite-dimensionality guard for non-admissible or typo'd relation
    sets.
    """
    p = pres.p
    min_len = max([len(t[1]) for rel in pres.relations for t in rel] or [0]) + 2
    L = max(4, min_len)
    while True:
        result = _try_construct(pres, L, tags)
        if result is not None:
            return result
        L *= 2
        if L > max_path_len:
            raise AlgebraConstructionError(
                "path basis did not stabilize within length %d; "
                "the relations do not present a finite-dimensional algebra" % max_path_len
            )


def _try_construct(pres: QuiverPresentation, L: int, tags) -> Optional[Algebra]:
    p = pres.p
    # enumerate paths by length, deterministically
    paths: list[tuple[str, PathLabels]] = [(v, ()) for v in pres.vertices]
    by_len: list[list[tuple[str, PathLabels]]] = [list(paths)]
    for _ in range(L):
        layer = []
        for (src, labels) in by_len[-1]:
            tgt = pres.path_tgt(labels, src)
            for (s, t, l) in pres.arrows:
                if s == tgt:
                    layer.append((src, labels + (l,)))
        by_len.append(layer)
        paths.extend(layer)
    path_index = {q: i for i, q in enumerate(paths)}
    n = len(paths)

    span = _RrefSpan(p, n)
    worklist = []
    for rel in pres.relations:
        v = np.zeros(n, dtype=np.int64)
        src = pres.arrow_src[rel[0][1][0]]
        for coeff, labels in rel:
            v[path_index[(src, labels)]] = (v[path_index[(src, labels)]] + coeff) % p
        worklist.append(v)

    # close the relation span under multiplication by arrows on both sides
    while worklist:
        v = worklist.pop()
        if not span.insert(v):
            continue
        support = np.flatnonzero(v)
        for (s, t, l) in pres.arrows:
            left = np.zeros(n, dtype=np.int64)
            right = np.zeros(n, dtype=np.int64)
            left_ok = right_ok = True
            for idx in support:
                src, labels = paths[idx]
                tgt = pres.path_tgt(labels, src)
                if tgt == s:
                    ext = (src, labels + (l,))
                    if ext in path_index:
                        left[path_index[ext]] = (left[path_index[ext]] + v[idx]) % p
                    else:
                        left_ok = False
                if src == t:
                    ext2 = (s, (l,) + labels)
                    if ext2 in path_index:
                        right[path_index[ext2]] = (right[path_index[ext2]] + v[idx]) % p
                    else:
                        right_ok = False
            if left_ok and left.any():
                worklist.append(left)
            if right_ok and right.any():
                worklist.append(right)

    pivot_set = set(span.pivots)
    basis = [q for i, q in enumerate(paths) if i not in pivot_set]
    max_basis_len = max((len(labels) for (_, labels) in basis), default=0)
    if max_basis_len > L - 2:
        return None  # not visibly stabilized; retry with a longer horizon

    basis_pos = {q: i for i, q in enumerate(basis)}

    def normal_form(vec: np.ndarray) -> np.ndarray:
        red = span.reduce(vec)
        out = np.zeros(len(basis), dtype=np.int64)
        for idx in np.flatnonzero(red):
            out[basis_pos[paths[idx]]] = red[idx]
        return out

    lmul = {}
    for (s, t, l) in pres.arrows:
        cols = []
        for (src, labels) in basis:
            tgt = pres.path_tgt(labels, src)
            if tgt != s:
                cols.append(np.zeros(len(basis), dtype=np.int64))
                continue
            ext = (src, labels + (l,))
            v = np.zeros(n, dtype=np.int64)
            v[path_index[ext]] = 1
            cols.append(normal_form(v))
        m = np.stack(cols, axis=1) if cols else np.zeros((len(basis), 0), dtype=np.int64)
        lmul[l] = Mat(p, m)

    alg = Algebra(pres, basis, lmul, tags=tags)
    alg.validate()
    return alg


# --- builders ---

_builder_cache: dict = {}


def build_nilpotent_loop(n: int, p: int) -> Algebra:
    """k[x]/(x^n) over F_p: one vertex, one loop, relation x^n."""
    if n < 1:
        raise AlgebraConstructionError("n must be >= 1")
    key = ("nilpotent_loop", n, p)
    if key not in _builder_cache:
        if n == 1:
            pres = QuiverPresentation(["v"], [], [], p)
        else:
            pres = QuiverPresentation(["v"], [("v", "v", "x")], [[(1, ("x",) * n)]], p)
        _builder_cache[key] = construct_algebra(
            pres, tags={"name": "Lambda_%d" % n, "builder": "nilpotent_loop", "n": n}
        )
    return _builder_cache[key]


def build_t2(a: Algebra) -> Algebra:
    """Upper triangular 2x2 matrix extension of a; module category = maps in mod a.

    The quiver is two copies of a's quiver (levels 0 and 1) joined by one
    connecting arrow per vertex, with the original relations in each level
    and commutation of the connecting arrows with every level arrow.
    """
    key = ("t2", id(a))
    if key in _builder_cache:
        return _builder_cache[key]
    pres = a.presentation
    vertices = [lvl_vertex(v, 0) for v in pres.vertices] + [lvl_vertex(v, 1) for v in pres.vertices]
    arrows = []
    for lvl in (0, 1):
        for (s, t, l) in pres.arrows:
            arrows.append((lvl_vertex(s, lvl), lvl_vertex(t, lvl), lvl_arrow(l, lvl)))
    for v in pres.vertices:
        arrows.append((lvl_vertex(v, 0), lvl_vertex(v, 1), connecting_arrow(v)))
    relations = []
    for lvl in (0, 1):
        for rel in pres.relations:
            relations.append([(c, tuple(lvl_arrow(x, lvl) for x in ls)) for (c, ls) in rel])
    for (s, t, l) in pres.arrows:
        relations.append(
            [
                (1, (lvl_arrow(l, 0), connecting_arrow(t))),
                (-1, (connecting_arrow(s), lvl_arrow(l, 1))),
            ]
        )
    t2 = construct_algebra(
        QuiverPresentation(vertices, arrows, relations, a.p),
        tags={"name": "T2(%s)" % a.tags.get("name", "?"), "builder": "t2", "base": a},
    )
    if t2.dim != 3 * a.dim:
        raise AlgebraConstructionError("T_2 construction produced dimension %d != 3*%d" % (t2.dim, a.dim))
    _builder_cache[key] = t2
    return t2


def lvl_vertex(v: str, lvl: int) -> str:
    return "%s@%d" % (v, lvl)


def lvl_arrow(l: str, lvl: int) -> str:
    return "%s@%d" % (l, lvl)


def connecting_arrow(v: str) -> str:
    return "%s@f" % v


def build_preprojective(m: int, p: int) -> Algebra:
    """Preprojective algebra of type A_m: double quiver with mesh relations."""
    if not (1 <= m <= 4):
        raise AlgebraConstructionError("preprojective type A_m supported for 1 <= m <= 4, got %d" % m)
    key = ("preprojective", m, p)
    if key in _builder_cache:
        return _builder_cache[key]
    vertices = [str(i) for i in range(1, m + 1)]
    arrows = []
    for i in range(1, m):
        arrows.append((str(i), str(i + 1), "a%d" % i))
        arrows.append((str(i + 1), str(i), "b%d" % i))
    relations = []
    for v in range(1, m + 1):
        terms = []
        if v < m:
            terms.append((1, ("a%d" % v, "b%d" % v)))
        if v > 1:
            terms.append((-1, ("b%d" % (v - 1), "a%d" % (v - 1))))
        if terms:
            relations.append(terms)
    alg = construct_algebra(
        QuiverPresentation(vertices, arrows, relations, p),
        tags={"name": "Pi_%d" % m, "builder": "preprojective", "m": m},
    )
    _builder_cache[key] = alg
    return alg


# --- algebras from hom tables ---


class HomTable:
    """Bases of the hom spaces of a finite category, with composition.

    dims[(i, j)] is the dimension of Hom(i, j); compose(i, j, k, f, g) returns
    the coefficient vector of (basis_f of Hom(j,k)) after (basis_g of Hom(i,j))
    in the basis of Hom(i, k); identity[i] is the coefficient vector of id_i in
    the basis of Hom(i, i).
    """

    def __init__(self, objects, dims, compose: Callable, identity):
        self.objects = list(objects)
        self.dims = dict(dims)
        self.compose = compose
        self.identity = {k: np.asarray(v, dtype=np.int64) for k, v in identity.items()}


def from_hom_table(table: HomTable, p: int, tags=None) -> Algebra:
    """The algebra of all homs of a finite category, quiverized.

    Requires every endomorphism algebra to be local with residue field F_p;
    the quiver is extracted from rad/rad^2 and the relations from the kernel
    of path evaluation, so the result is exact, not truncated.
    """
    objs = table.objects
    flat: list[tuple[int, int, int]] = []  # (src object idx, tgt object idx, basis idx)
    for i, oi in enumerate(objs):
        for j, oj in enumerate(objs):
            for k in range(table.dims.get((oi, oj), 0)):
                flat.append((i, j, k))
    pos = {t: n for n, t in enumerate(flat)}
    N = len(flat)

    def block(i, j):
        return [pos[(i, j, k)] for k in range(table.dims.get((objs[i], objs[j]), 0))]

    def mul(xi: int, yi: int) -> np.ndarray:
        """flat basis element xi after flat basis element yi."""
        (j1, k1, f) = flat[xi]
        (i0, j0, g) = flat[yi]
        out = np.zeros(N, dtype=np.int64)
        if j0 != j1:
            return out
        coeffs = np.asarray(table.compose(objs[i0], objs[j0], objs[k1], f, g), dtype=np.int64) % p
        for idx, c in zip(block(i0, k1), coeffs):
            out[idx] = c
        return out

    mult = np.zeros((N, N, N), dtype=np.int64)
    for xi in range(N):
        for yi in range(N):
            mult[xi, yi] = mul(xi, yi)

    def mul_vec(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, mult) % p

    # associativity and identity validation
    for xi in range(N):
        for yi in range(N):
            xy = mult[xi, yi]
            for zi in range(N):
                left = mul_vec(xy, _unit(N, zi))
                right = mul_vec(_unit(N, xi), mult[yi, zi])
                if not np.array_equal(left, right):
                    raise AlgebraConstructionError(
                        "hom table composition not associative on triple %r"
                        % ((flat[xi], flat[yi], flat[zi]),)
                    )
    ident = {}
    for i, oi in enumerate(objs):
        v = np.zeros(N, dtype=np.int64)
        vec = table.identity[oi] % p
        for idx, c in zip(block(i, i), vec):
            v[idx] = c
        ident[i] = v
        for xi in range(N):
            e = _unit(N, xi)
            si, ti, _ = flat[xi]
            if ti == i and not np.array_equal(mul_vec(v, e), e):
                raise AlgebraConstructionError("identity law fails at object %r" % (oi,))
            if si == i and not np.array_equal(mul_vec(e, v), e):
                raise AlgebraConstructionError("identity law fails at object %r" % (oi,))

    def is_nilpotent(x: np.ndarray) -> bool:
        v = x % p
        for _ in range(N + 1):
            if not v.any():
                return True
            v = mul_vec(v, x)
        return False

    # radical: everything off-diagonal, plus non-units of each local End
    rad = _RrefSpan(p, N)
    rad_elements: list[np.ndarray] = []

    def add_rad(v):
        if rad.insert(v.copy()):
            rad_elements.append(v % p)

    for i in range(len(objs)):
        for j in range(len(objs)):
            if i == j:
                continue
            for idx in block(i, j):
                add_rad(_unit(N, idx))
    for i in range(len(objs)):
        e = ident[i]
        for idx in block(i, i):
            x = _unit(N, idx)
            lam = None
            for c in range(p):
                if is_nilpotent((x - c * e) % p):
                    if lam is not None:
                        raise AlgebraConstructionError(
                            "endomorphism algebra of object %r is not local over F_p" % (objs[i],)
                        )
                    lam = c
            if lam is None:
                raise AlgebraConstructionError(
                    "endomorphism algebra of object %r is not local with residue F_p" % (objs[i],)
                )
            v = (x - lam * e) % p
            if v.any():
                add_rad(v)

    rad2 = _RrefSpan(p, N)
    for x in rad_elements:
        for y in rad_elements:
            v = mul_vec(x, y)
            if v.any():
                rad2.insert(v)

    # arrows: per block, a complement of rad^2 inside rad
    vertices = [str(o) for o in objs]
    arrows = []
    arrow_vecs: dict[str, np.ndarray] = {}
    for i in range(len(objs)):
        for j in range(len(objs)):
            cols = block(i, j)
            if not cols:
                continue
            probe = _RrefSpan(p, N)
            for x in rad2.rows:
                y = np.zeros(N, dtype=np.int64)
                y[cols] = x[cols]
                if np.array_equal(y % p, x % p):
                    probe.insert(x.copy())
            count = 0
            for x in rad_elements:
                y = np.zeros(N, dtype=np.int64)
                y[cols] = x[cols]
                if not np.array_equal(y % p, x % p):
                    continue
                if probe.insert(x.copy()):
                    label = "g:%s>%s:%d" % (vertices[i], vertices[j], count)
                    arrows.append((vertices[i], vertices[j], label))
                    arrow_vecs[label] = x % p
                    count += 1

    # nilpotency degree of the radical
    power = [v.copy() for v in rad_elements]
    degree = 1
    while power and degree <= N + 1:
        nxt_span = _RrefSpan(p, N)
        nxt = []
        for x in power:
            for y in rad_elements:
                v = mul_vec(y, x)
                if v.any() and nxt_span.insert(v.copy()):
                    nxt.append(v)
        power = nxt
        degree += 1
    niln = degree  # rad^niln = 0

    # paths up to the nilpotency degree, evaluated in the table algebra
    arrow_tgt = {l: t for (s, t, l) in arrows}
    path_list: list[tuple[str, PathLabels, np.ndarray]] = []
    frontier = [(v, (), ident[i]) for i, v in enumerate(vertices)]
    arrow_by_src: dict[str, list[tuple[str, str, str]]] = {}
    for (s, t, l) in arrows:
        arrow_by_src.setdefault(s, []).append((s, t, l))
    for _ in range(max(niln, 2)):
        nxt = []
        for (src, labels, val) in frontier:
            cur_tgt = src if not labels else arrow_tgt[labels[-1]]
            for (s, t, l) in arrow_by_src.get(cur_tgt, []):
                v = mul_vec(arrow_vecs[l], val)
                entry = (src, labels + (l,), v)
                nxt.append(entry)
                if len(labels) + 1 >= 2:
                    path_list.append(entry)
        frontier = nxt

    # relations: kernel of path evaluation, grouped by (src, tgt)
    relations = []
    groups: dict[tuple[str, str], list[tuple[PathLabels, np.ndarray]]] = {}
    for (src, labels, val) in path_list:
        groups.setdefault((src, arrow_tgt[labels[-1]]), []).append((labels, val))
    for key in sorted(groups):
        entries = groups[key]
        mat = Mat(p, np.stack([val for (_, val) in entries], axis=1))
        for kv in kernel_basis(mat):
            terms = [
                (int(kv.a[r, 0]), entries[r][0])
                for r in range(len(entries))
                if kv.a[r, 0] != 0
            ]
            relations.append(terms)

    pres = QuiverPresentation(vertices, arrows, relations, p)
    alg = construct_algebra(pres, tags=dict(tags or {}, builder="hom_table"))
    if alg.dim != N:
        raise AlgebraConstructionError(
            "quiverized algebra has dimension %d but the hom table has total dimension %d"
            % (alg.dim, N)
        )
    alg.tags["arrow_vectors"] = arrow_vecs
    alg.tags["flat_basis"] = flat
    alg.tags["objects"] = list(objs)
    return alg


def load_algebra_spec(path: str) -> Algebra:
    with open(path) as fh:
        d = json.load(fh)
    return construct_algebra(QuiverPresentation.from_spec_dict(d), tags={"name": path})
