"""The category of finite-dimensional modules over a presented algebra.

Modules are quiver representations satisfying the relations; maps are tuples
of vertex-wise blocks intertwining the arrow actions.  Hom spaces, kernels,
cokernels, decompositions, projective covers, syzygies, stable homs, Ext^1
classes and bounded enumeration of indecomposables all reduce to exact F_p
linear algebra on these blocks.

All operations are pure and deterministic; searches that cannot certify an
answer raise InconclusiveError instead of guessing.
"""

from __future__ import annotations

import itertools
from typing import Optional

import numpy as np

from .algebra import Algebra
from .errors import BudgetExceededError, InconclusiveError
from .fp import (
    Mat,
    block_diag,
    hstack,
    image_basis,
    inverse,
    is_invertible,
    kernel_basis,
    rank,
    rref,
    solve_linear,
    vstack,
)

ISO_RANDOM_TRIALS = 64
EXHAUSTIVE_LIMIT = 1 << 14
DEFAULT_ENUM_BUDGET = 1 << 22
EXT_CLASS_CAP = 1 << 12


class Module:
    """A representation of algebra.presentation satisfying its relations."""

    __slots__ = ("algebra", "dims", "action", "total_dim", "_key")

    def __init__(self, algebra: Algebra, dims, action, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != len(algebra.vertices):
            raise ValueError("dims must list one dimension per vertex")
        self.action = dict(action)
        self.total_dim = sum(self.dims)
        self._key = None
        if check:
            self._validate()

    def _validate(self):
        pres = self.algebra.presentation
        vidx = self.vertex_index
        for (s, t, l) in self.algebra.arrows:
            m = self.action.get(l)
            if m is None:
                raise ValueError("missing action matrix for arrow %s" % l)
            if m.shape != (self.dims[vidx[t]], self.dims[vidx[s]]):
                raise ValueError(
                    "action of %s has shape %r, expected %r"
                    % (l, m.shape, (self.dims[vidx[t]], self.dims[vidx[s]]))
                )
            if m.p != self.algebra.p:
                raise ValueError("action modulus mismatch on %s" % l)
        for rel in pres.relations:
            acc = None
            for coeff, labels in rel:
                term = self.path_matrix(labels).scale(coeff)
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                raise ValueError("relation %r does not vanish on this representation" % (rel,))

    @property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.algebra.vertices)}

    def path_matrix(self, labels) -> Mat:
        """Matrix of a path acting on the representation (composition order)."""
        pres = self.algebra.presentation
        src = pres.arrow_src[labels[0]]
        m = Mat.eye(self.algebra.p, self.dims[self.vertex_index[src]])
        for l in labels:
            m = self.action[l] @ m
        return m

    def key(self) -> tuple:
        if self._key is None:
            parts = [self.dims]
            for (_, _, l) in self.algebra.arrows:
                parts.append(self.action[l].key())
            self._key = (id(self.algebra),) + tuple(parts)
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, Module)
            and self.algebra is other.algebra
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Module(dims=%r over %r)" % (list(self.dims), self.algebra)

    def to_json_dict(self) -> dict:
        return {
            "algebra": self.algebra.tags.get("name", "?"),
            "dims": list(self.dims),
            "action": {l: self.action[l].tolist() for (_, _, l) in self.algebra.arrows},
        }


def module_from_json(algebra: Algebra, d: dict) -> Module:
    action = {l: Mat(algebra.p, rows) for l, rows in d["action"].items()}
    return Module(algebra, d["dims"], action)


class ModMap:
    """A homomorphism of modules: one block per vertex, intertwining arrows."""

    __slots__ = ("source", "target", "blocks", "section_blocks")

    def __init__(self, source: Module, target: Module, blocks, check: bool = True):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        self.section_blocks = None
        if check:
            self._validate()

    def _validate(self):
        if self.source.algebra is not self.target.algebra:
            raise ValueError("source and target live over different algebras")
        a = self.source.algebra
        vidx = self.source.vertex_index
        for i, b in enumerate(self.blocks):
            if b.shape != (self.target.dims[i], self.source.dims[i]):
                raise ValueError("block %d has shape %r" % (i, b.shape))
        for (s, t, l) in a.arrows:
            si, ti = vidx[s], vidx[t]
            lhs = self.blocks[ti] @ self.source.action[l]
            rhs = self.target.action[l] @ self.blocks[si]
            if not (lhs == rhs):
                raise ValueError("blocks do not intertwine arrow %s" % l)

    def __matmul__(self, other: "ModMap") -> "ModMap":
        if other.target is not self.source and other.target != self.source:
            raise ValueError("maps not composable")
        return ModMap(
            other.source,
            self.target,
            [a @ b for a, b in zip(self.blocks, other.blocks)],
            check=False,
        )

    def __add__(self, other: "ModMap") -> "ModMap":
        return ModMap(
            self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)], check=False
        )

    def __sub__(self, other: "ModMap") -> "ModMap":
        return ModMap(
            self.source, self.target, [a - b for a, b in zip(self.blocks, other.blocks)], check=False
        )

    def __neg__(self):
        return ModMap(self.source, self.target, [-a for a in self.blocks], check=False)

    def scale(self, c: int) -> "ModMap":
        return ModMap(self.source, self.target, [b.scale(c) for b in self.blocks], check=False)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_mono(self) -> bool:
        return all(rank(b) == b.cols for b in self.blocks)

    def is_epi(self) -> bool:
        return all(rank(b) == b.rows for b in self.blocks)

    def is_iso(self) -> bool:
        return all(b.rows == b.cols and is_invertible(b) for b in self.blocks)

    def inverse(self) -> "ModMap":
        if not self.is_iso():
            raise ValueError("map is not invertible")
        return ModMap(self.target, self.source, [inverse(b) for b in self.blocks], check=False)

    def vec(self) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([b.a.reshape(-1) for b in self.blocks])

    def key(self):
        return (self.source.key(), self.target.key(), tuple(b.key() for b in self.blocks))

    def __eq__(self, other):
        return isinstance(other, ModMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ModMap(%r -> %r)" % (self.source, self.target)


def identity_map(m: Module) -> ModMap:
    return ModMap(m, m, [Mat.eye(m.algebra.p, d) for d in m.dims], check=False)


def zero_map(m: Module, n: Module) -> ModMap:
    return ModMap(m, n, [Mat.zeros(m.algebra.p, n.dims[i], m.dims[i]) for i in range(len(m.dims))], check=False)


def map_from_vec(m: Module, n: Module, v: np.ndarray) -> ModMap:
    blocks = []
    off = 0
    for i in range(len(m.dims)):
        r, c = n.dims[i], m.dims[i]
        blocks.append(Mat(m.algebra.p, v[off : off + r * c].reshape(r, c)))
        off += r * c
    return ModMap(m, n, blocks, check=False)


# --- basic constructions ---


def zero_module(a: Algebra) -> Module:
    dims = [0] * len(a.vertices)
    action = {l: Mat.zeros(a.p, 0, 0) for (_, _, l) in a.arrows}
    return Module(a, dims, action, check=False)


def simple_module(a: Algebra, v: str) -> Module:
    vidx = {w: i for i, w in enumerate(a.vertices)}
    dims = [1 if w == v else 0 for w in a.vertices]
    action = {
        l: Mat.zeros(a.p, dims[vidx[t]], dims[vidx[s]]) for (s, t, l) in a.arrows
    }
    return Module(a, dims, action, check=False)


def projective_module(a: Algebra, v: str) -> Module:
    """P(v) = A e_v: basis the algebra-basis paths with source v."""
    vidx = {w: i for i, w in enumerate(a.vertices)}
    members = [i for i in range(a.dim) if a.basis_src(i) == v]
    slots: dict[str, list[int]] = {w: [] for w in a.vertices}
    for i in members:
        slots[a.basis_tgt(i)].append(i)
    dims = [len(slots[w]) for w in a.vertices]
    pos_in_slot = {}
    for w in a.vertices:
        for r, i in enumerate(slots[w]):
            pos_in_slot[i] = r
    action = {}
    for (s, t, l) in a.arrows:
        m = np.zeros((dims[vidx[t]], dims[vidx[s]]), dtype=np.int64)
        for i in slots[s]:
            col = a.lmul[l].a[:, i]
            for j in np.flatnonzero(col):
                if a.basis_src(int(j)) == v:
                    m[pos_in_slot[int(j)], pos_in_slot[i]] = col[j]
        action[l] = Mat(a.p, m)
    mod = Module(a, dims, action)
    return mod


def regular_module(a: Algebra):
    return direct_sum([projective_module(a, v) for v in a.vertices])


def jordan_module(a: Algebra, size: int) -> Module:
    """J_size over a nilpotent loop algebra: the size x size nilpotent block."""
    if a.tags.get("builder") != "nilpotent_loop":
        raise ValueError("jordan_module needs a nilpotent loop algebra")
    n = a.tags["n"]
    if not (1 <= size <= n):
        raise ValueError("block size must lie in [1, %d]" % n)
    if n == 1:
        return Module(a, [size], {})
    m = np.zeros((size, size), dtype=np.int64)
    for i in range(size - 1):
        m[i + 1, i] = 1
    return Module(a, [size], {"x": Mat(a.p, m)})


def injective_module(a: Algebra, v: str) -> Module:
    return dual_module(projective_module(a.opposite(), v))


def dual_module(m: Module) -> Module:
    """D(m): same dimensions, transposed actions, over the opposite algebra."""
    op = m.algebra.opposite()
    action = {l: m.action[l].T for (_, _, l) in m.algebra.arrows}
    return Module(op, m.dims, action)


def injectives(a: Algebra) -> list[Module]:
    return [injective_module(a, v) for v in a.vertices]


# --- hom spaces ---


def _hom_system(m: Module, n: Module) -> tuple[np.ndarray, list[tuple[int, int]]]:
    p = m.algebra.p
    vidx = m.vertex_index
    sizes = [(n.dims[i], m.dims[i]) for i in range(len(m.dims))]
    offsets = np.cumsum([0] + [r * c for (r, c) in sizes])
    total = int(offsets[-1])
    rows = []
    for (s, t, l) in m.algebra.arrows:
        si, ti = vidx[s], vidx[t]
        out_rows = n.dims[ti] * m.dims[si]
        if out_rows == 0:
            continue
        block = np.zeros((out_rows, total), dtype=np.int64)
        # vec(B_t @ M_a) = kron(I, M_a^T) vec(B_t); vec(N_a @ B_s) = kron(N_a, I) vec(B_s)
        kron_t = np.kron(np.eye(n.dims[ti], dtype=np.int64), m.action[l].a.T)
        kron_s = np.kron(n.action[l].a, np.eye(m.dims[si], dtype=np.int64))
        block[:, offsets[ti] : offsets[ti + 1]] = kron_t
        block[:, offsets[si] : offsets[si + 1]] -= kron_s
        rows.append(block % p)
    if rows:
        system = np.vstack(rows)
    else:
        system = np.zeros((0, total), dtype=np.int64)
    return system, sizes


def hom_space(m: Module, n: Module) -> list[ModMap]:
    """A deterministic basis of Hom(m, n)."""
    if m.algebra is not n.algebra:
        raise ValueError("modules live over different algebras")
    cache = getattr(m.algebra, "_hom_cache", None)
    if cache is None:
        cache = {}
        m.algebra._hom_cache = cache
    ck = (m.key(), n.key())
    if ck in cache:
        return cache[ck]
    system, _ = _hom_system(m, n)
    basis = [map_from_vec(m, n, k.a.reshape(-1)) for k in kernel_basis(Mat(m.algebra.p, system))]
    cache[ck] = basis
    return basis


class HomBasis:
    """Hom(m, n) with coordinates: columns of `matrix` are the basis vectors."""

    def __init__(self, m: Module, n: Module):
        self.m = m
        self.n = n
        self.maps = hom_space(m, n)
        p = m.algebra.p
        if self.maps:
            self.matrix = Mat(p, np.stack([f.vec() for f in self.maps], axis=1))
        else:
            width = sum(n.dims[i] * m.dims[i] for i in range(len(m.dims)))
            self.matrix = Mat(p, np.zeros((width, 0), dtype=np.int64))

    @property
    def dim(self):
        return len(self.maps)

    def coords(self, f: ModMap) -> np.ndarray:
        v = Mat(self.matrix.p, f.vec().reshape(-1, 1))
        if self.dim == 0:
            if not v.is_zero():
                raise ValueError("map not in hom space")
            return np.zeros(0, dtype=np.int64)
        sol, _ = solve_linear(self.matrix, v)
        if sol is None:
            raise ValueError("map not in hom space")
        return sol.a.reshape(-1)

    def from_coords(self, c: np.ndarray) -> ModMap:
        f = zero_map(self.m, self.n)
        for i, ci in enumerate(c):
            if ci:
                f = f + self.maps[i].scale(int(ci))
        return f


# --- kernels, cokernels, sums ---


def kernel(f: ModMap) -> tuple[Module, ModMap]:
    """Kernel with its inclusion: vertex-wise null spaces with induced action."""
    a = f.source.algebra
    vidx = f.source.vertex_index
    kmats = []
    for i, b in enumerate(f.blocks):
        basis = kernel_basis(b)
        if basis:
            kmats.append(hstack(basis))
        else:
            kmats.append(Mat.zeros(a.p, f.source.dims[i], 0))
    dims = [k.cols for k in kmats]
    action = {}
    for (s, t, l) in a.arrows:
        si, ti = vidx[s], vidx[t]
        rhs = f.source.action[l] @ kmats[si]
        sol, _ = solve_linear(kmats[ti], rhs)
        if sol is None:
            raise AssertionError("kernel is not invariant under %s" % l)
        action[l] = sol
    ker = Module(a, dims, action)
    incl = ModMap(ker, f.source, kmats)
    return ker, incl


def cokernel(f: ModMap) -> tuple[Module, ModMap]:
    """Cokernel with its projection; the projection carries section_blocks."""
    a = f.source.algebra
    vidx = f.source.vertex_index
    p = a.p
    projs = []
    comps = []
    for i, b in enumerate(f.blocks):
        n_v = f.target.dims[i]
        im = image_basis(b)
        chosen = list(im)
        comp_cols = []
        for e in range(n_v):
            cand = Mat(p, np.eye(n_v, dtype=np.int64)[:, e : e + 1])
            if not chosen:
                chosen.append(cand)
                comp_cols.append(cand)
                continue
            stackmat = hstack(chosen + [cand])
            if rank(stackmat) > len(chosen):
                chosen.append(cand)
                comp_cols.append(cand)
        r = len(im)
        if chosen:
            u = hstack(chosen)
            uinv = inverse(u)
            proj = Mat(p, uinv.a[r:, :])
        else:
            proj = Mat.zeros(p, 0, 0)
        comp = hstack(comp_cols) if comp_cols else Mat.zeros(p, n_v, 0)
        projs.append(proj)
        comps.append(comp)
    dims = [pr.rows for pr in projs]
    action = {}
    for (s, t, l) in a.arrows:
        si, ti = vidx[s], vidx[t]
        action[l] = projs[ti] @ f.target.action[l] @ comps[si]
    cok = Module(a, dims, action)
    proj_map = ModMap(f.target, cok, projs)
    proj_map.section_blocks = tuple(comps)
    return cok, proj_map


def factor_through_projection(proj: ModMap, g: ModMap) -> ModMap:
    """Given the cokernel projection q: N -> C and g: N -> W with g vanishing
    on the image, return the induced map C -> W."""
    if proj.section_blocks is None:
        raise ValueError("projection does not carry section data")
    blocks = [gb @ sb for gb, sb in zip(g.blocks, proj.section_blocks)]
    induced = ModMap(proj.target, g.target, blocks)
    if not _same_map(induced @ proj, g):
        raise ValueError("map does not factor through the projection")
    return induced


def _same_map(f: ModMap, g: ModMap) -> bool:
    return all(a == b for a, b in zip(f.blocks, g.blocks))


def direct_sum(ms: list[Module]):
    """Block-diagonal sum; returns (module, injections, projections)."""
    if not ms:
        raise ValueError("direct_sum needs the algebra for an empty list; use zero_module")
    a = ms[0].algebra
    for m in ms:
        if m.algebra is not a:
            raise ValueError("direct_sum over mixed algebras")
    vcount = len(a.vertices)
    dims = [sum(m.dims[i] for m in ms) for i in range(vcount)]
    action = {}
    for (s, t, l) in a.arrows:
        action[l] = block_diag(a.p, [m.action[l] for m in ms])
    total = Module(a, dims, action, check=False)
    injections = []
    projections = []
    offsets = [[0] * vcount]
    for m in ms:
        offsets.append([offsets[-1][i] + m.dims[i] for i in range(vcount)])
    for k, m in enumerate(ms):
        inj_blocks = []
        proj_blocks = []
        for i in range(vcount):
            inj = np.zeros((dims[i], m.dims[i]), dtype=np.int64)
            start = offsets[k][i]
            inj[start : start + m.dims[i], :] = np.eye(m.dims[i], dtype=np.int64)
            inj_blocks.append(Mat(a.p, inj))
            proj_blocks.append(Mat(a.p, inj.T))
        injections.append(ModMap(m, total, inj_blocks, check=False))
        projections.append(ModMap(total, m, proj_blocks, check=False))
    return total, injections, projections


def submodule_on_basis(m: Module, mats: list[Mat]) -> tuple[Module, ModMap]:
    """The submodule spanned vertex-wise by the given (full-rank) columns."""
    a = m.algebra
    vidx = m.vertex_index
    dims = [mat.cols for mat in mats]
    action = {}
    for (s, t, l) in a.arrows:
        si, ti = vidx[s], vidx[t]
        sol, _ = solve_linear(mats[ti], m.action[l] @ mats[si])
        if sol is None:
            raise ValueError("subspace is not invariant under %s" % l)
        action[l] = sol
    sub = Module(a, dims, action)
    return sub, ModMap(sub, m, mats)


# --- isomorphism and decomposition ---


def _invertible_combo(maps: list[ModMap], m: Module, n: Module) -> Optional[ModMap]:
    if m.dims != n.dims:
        return None
    if m.total_dim == 0:
        return ModMap(m, n, [Mat.zeros(m.algebra.p, 0, 0) for _ in m.dims], check=False)
    d = len(maps)
    if d == 0:
        return None
    p = m.algebra.p
    for f in maps:
        if f.is_iso():
            return f
    rng = np.random.default_rng(2024)
    for _ in range(ISO_RANDOM_TRIALS):
        coeffs = rng.integers(0, p, size=d)
        if not coeffs.any():
            continue
        f = _combine(maps, coeffs)
        if f.is_iso():
            return f
    if p**d <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(p), repeat=d):
            if not any(coeffs):
                continue
            f = _combine(maps, np.array(coeffs, dtype=np.int64))
            if f.is_iso():
                return f
        return None
    raise InconclusiveError(
        "isomorphism search space too large to certify (dim Hom = %d)" % d
    )


def _combine(maps: list[ModMap], coeffs) -> ModMap:
    f = zero_map(maps[0].source, maps[0].target)
    for c, g in zip(coeffs, maps):
        if c:
            f = f + g.scale(int(c))
    return f


def is_isomorphic(m: Module, n: Module, witness: bool = False):
    """Exact isomorphism test; optionally returns the witness map."""
    result = None
    if m.algebra is not n.algebra or m.dims != n.dims:
        result = None
    elif m.key() == n.key():
        result = identity_map(m) if m.total_dim else ModMap(m, n, [Mat.zeros(m.algebra.p, 0, 0) for _ in m.dims], check=False)
    else:
        homs_mn = hom_space(m, n)
        if len(homs_mn) == len(hom_space(m, m)) == len(hom_space(n, n)):
            result = _invertible_combo(homs_mn, m, n)
        else:
            result = None
    if witness:
        return (result is not None), result
    return result is not None


def _stable_power(phi: ModMap) -> ModMap:
    """phi^N for N >= total dimension, by repeated squaring."""
    n = max(phi.source.total_dim, 1)
    power = phi
    e = 1
    while e < n:
        power = power @ power
        e *= 2
    return power


def endo_fitting_split(m: Module, phi: ModMap):
    """Fitting decomposition along an endomorphism; None if phi gives no split."""
    power = _stable_power(phi)
    kdims = [b.cols - rank(b) for b in power.blocks]
    kdim = sum(kdims)
    if kdim == 0 or kdim == m.total_dim:
        return None
    kmats = []
    imats = []
    for i, b in enumerate(power.blocks):
        kb = kernel_basis(b)
        kmats.append(hstack(kb) if kb else Mat.zeros(m.algebra.p, m.dims[i], 0))
        ib = image_basis(b)
        imats.append(hstack(ib) if ib else Mat.zeros(m.algebra.p, m.dims[i], 0))
    sub_k, _ = submodule_on_basis(m, kmats)
    sub_i, _ = submodule_on_basis(m, imats)
    return sub_k, sub_i


def decompose(m: Module) -> list[tuple[Module, int]]:
    """Indecomposable summands with multiplicities (Krull-Schmidt).

    The split search is Fitting's lemma on endomorphisms: basis elements and
    seeded random combinations first, exhaustive scan as certification when
    the endomorphism ring is small, InconclusiveError otherwise.
    """
    pieces = _decompose_raw(m)
    groups: list[tuple[Module, int]] = []
    for piece in pieces:
        for i, (rep, count) in enumerate(groups):
            if is_isomorphic(piece, rep):
                groups[i] = (rep, count + 1)
                break
        else:
            groups.append((piece, 1))
    groups.sort(key=lambda g: (g[0].total_dim, g[0].dims, g[0].key()[1:]))
    return groups


def _decompose_raw(m: Module) -> list[Module]:
    if m.total_dim == 0:
        return []
    endos = hom_space(m, m)
    d = len(endos)
    if d == 1:
        return [m]
    p = m.algebra.p
    candidates = list(endos)
    rng = np.random.default_rng(99)
    for _ in range(ISO_RANDOM_TRIALS):
        coeffs = rng.integers(0, p, size=d)
        if coeffs.any():
            candidates.append(_combine(endos, coeffs))
    for phi in candidates:
        split = endo_fitting_split(m, phi)
        if split is not None:
            return _decompose_raw(split[0]) + _decompose_raw(split[1])
    if p**d <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(p), repeat=d):
            phi = _combine(endos, np.array(coeffs, dtype=np.int64))
            split = endo_fitting_split(m, phi)
            if split is not None:
                return _decompose_raw(split[0]) + _decompose_raw(split[1])
        return [m]  # certified: every endomorphism is nilpotent or invertible
    raise InconclusiveError(
        "decomposition not certified: End has dimension %d, beyond the exhaustive budget" % d
    )


def is_indecomposable(m: Module) -> bool:
    if m.total_dim == 0:
        return False
    parts = decompose(m)
    return len(parts) == 1 and parts[0][1] == 1


# --- radical, tops, covers ---


def radical_subspaces(m: Module) -> list[Mat]:
    """Vertex-wise basis matrices of rad(m) = (arrow ideal) . m."""
    a = m.algebra
    vidx = m.vertex_index
    cols: dict[int, list[Mat]] = {i: [] for i in range(len(m.dims))}
    for (s, t, l) in a.arrows:
        ti = vidx[t]
        for col in image_basis(m.action[l]):
            cols[ti].append(col)
    out = []
    for i in range(len(m.dims)):
        if cols[i]:
            stacked = hstack(cols[i])
            out.append(hstack(image_basis(stacked)))
        else:
            out.append(Mat.zeros(a.p, m.dims[i], 0))
    return out


def top_dims(m: Module) -> list[int]:
    rads = radical_subspaces(m)
    return [m.dims[i] - rads[i].cols for i in range(len(m.dims))]


def _complement_vectors(p: int, ambient_dim: int, subspace: Mat) -> list[Mat]:
    chosen = [subspace.col(j) for j in range(subspace.cols)]
    comp = []
    for e in range(ambient_dim):
        cand = Mat(p, np.eye(ambient_dim, dtype=np.int64)[:, e : e + 1])
        trial = chosen + [cand]
        if rank(hstack(trial)) > len(chosen):
            chosen.append(cand)
            comp.append(cand)
    return comp


def apply_path(m: Module, labels, v: Mat) -> Mat:
    for l in labels:
        v = m.action[l] @ v
    return v


def projective_cover(m: Module) -> tuple[Module, ModMap]:
    """P(top m) with the evaluation epimorphism; kernel sits in rad P."""
    cache = getattr(m.algebra, "_cover_cache", None)
    if cache is None:
        cache = {}
        m.algebra._cover_cache = cache
    ck = m.key()
    if ck in cache:
        return cache[ck]
    result = _projective_cover_uncached(m)
    cache[ck] = result
    return result


def _projective_cover_uncached(m: Module) -> tuple[Module, ModMap]:
    a = m.algebra
    vidx = m.vertex_index
    rads = radical_subspaces(m)
    generators: list[tuple[str, Mat]] = []
    for i, v in enumerate(a.vertices):
        for g in _complement_vectors(a.p, m.dims[i], rads[i]):
            generators.append((v, g))
    if not generators:
        z = zero_module(a)
        if m.total_dim != 0:
            raise AssertionError("nonzero module with empty top")
        return z, ModMap(z, m, [Mat.zeros(a.p, m.dims[i], 0) for i in range(len(m.dims))], check=False)
    summands = [projective_module(a, v) for (v, _) in generators]
    P, injections, _ = direct_sum(summands)
    blocks = [np.zeros((m.dims[i], P.dims[i]), dtype=np.int64) for i in range(len(m.dims))]
    offsets = [0] * len(m.dims)
    for (v, g), proj_mod in zip(generators, summands):
        slots: dict[str, list[int]] = {w: [] for w in a.vertices}
        for bi in range(a.dim):
            if a.basis_src(bi) == v:
                slots[a.basis_tgt(bi)].append(bi)
        for w in a.vertices:
            wi = vidx[w]
            for local, bi in enumerate(slots[w]):
                labels = a.basis[bi][1]
                img = apply_path(m, labels, g)
                blocks[wi][:, offsets[wi] + local] = img.a[:, 0]
            offsets[wi] += len(slots[w])
    pi = ModMap(P, m, [Mat(a.p, b) for b in blocks])
    if not pi.is_epi():
        raise AssertionError("projective cover map is not epi")
    if top_dims(P) != top_dims(m):
        raise AssertionError("cover is not minimal")
    return P, pi


def syzygy(m: Module):
    """(Omega m, inclusion into P, P, cover map)."""
    P, pi = projective_cover(m)
    om, incl = kernel(pi)
    return om, incl, P, pi


def is_projective_module(m: Module) -> bool:
    return syzygy(m)[0].total_dim == 0


def is_injective_module(m: Module) -> bool:
    return is_projective_module(dual_module(m))


def injective_envelope(m: Module) -> tuple[Module, ModMap]:
    """Minimal mono into an injective, via the dual projective cover."""
    dm = dual_module(m)
    P, pi = projective_cover(dm)
    I = dual_module(P)
    emb = ModMap(m, I, [b.T for b in pi.blocks])
    if not emb.is_mono():
        raise AssertionError("dualized cover is not mono")
    return I, emb


# --- stable homs ---


class StableHom:
    """Hom(m, n) modulo maps factoring through projectives.

    A map factors through some projective iff it factors through the
    projective cover of its target, so the through-subspace is the image of
    Hom(m, P_n) under postcomposition with the cover map.
    """

    def __init__(self, m: Module, n: Module):
        self.hom = HomBasis(m, n)
        p = m.algebra.p
        P, pi = projective_cover(n)
        through = [pi @ g for g in hom_space(m, P)]
        coords = [self.hom.coords(f) for f in through]
        width = self.hom.dim
        if coords:
            mat = Mat(p, np.stack(coords, axis=0))
            red, pivots, _ = rref(mat)
            self.through_rows = red.a[: len(pivots)]
            self.through_pivots = pivots
        else:
            self.through_rows = np.zeros((0, width), dtype=np.int64)
            self.through_pivots = ()
        self.rep_indices = [i for i in range(width) if i not in self.through_pivots]
        self.reps = [self.hom.maps[i] for i in self.rep_indices]

    @property
    def dim(self) -> int:
        return len(self.rep_indices)

    def class_coords(self, f: ModMap) -> np.ndarray:
        """Coordinates of [f] on the representative basis."""
        v = self.hom.coords(f)
        p = self.hom.matrix.p
        for row, piv in zip(self.through_rows, self.through_pivots):
            c = v[piv]
            if c:
                v = (v - c * row) % p
        return v[self.rep_indices]

    def is_stably_zero(self, f: ModMap) -> bool:
        return not self.class_coords(f).any()


def stable_hom_space(m: Module, n: Module) -> StableHom:
    return StableHom(m, n)


# --- Ext^1 classes ---


class ExtClass:
    """One Yoneda class of extensions of z by x, with a chosen representative
    short exact sequence x --i--> e --p--> z."""

    __slots__ = ("coeffs", "middle", "i", "p")

    def __init__(self, coeffs, middle, i, p):
        self.coeffs = coeffs
        self.middle = middle
        self.i = i
        self.p = p

    def is_split_class(self) -> bool:
        return not any(self.coeffs)


def ext1_classes(z: Module, x: Module, cap: int = EXT_CLASS_CAP) -> list[ExtClass]:
    """All Ext^1(z, x) classes, one representative sequence per class.

    Computed as coker(Hom(P_z, x) -> Hom(Omega z, x)); each class is pushed
    out of 0 -> Omega z -> P_z -> z -> 0 along its representing map.
    """
    a = z.algebra
    om, incl, P, pi = syzygy(z)
    hom_om = HomBasis(om, x)
    through = [h @ incl for h in hom_space(P, x)]
    coords = [hom_om.coords(f) for f in through]
    p = a.p
    if coords:
        red, pivots, _ = rref(Mat(p, np.stack(coords, axis=0)))
        rows, piv = red.a[: len(pivots)], pivots
    else:
        rows, piv = np.zeros((0, hom_om.dim), dtype=np.int64), ()
    free = [i for i in range(hom_om.dim) if i not in piv]
    ext_dim = len(free)
    if p**ext_dim > cap:
        raise BudgetExceededError(
            "Ext^1 has dimension %d; enumerating %d classes exceeds the cap"
            % (ext_dim, p**ext_dim),
            frontier=(z.dims, x.dims),
        )
    classes = []
    for coeffs in itertools.product(range(p), repeat=ext_dim):
        rho = zero_map(om, x)
        for c, idx in zip(coeffs, free):
            if c:
                rho = rho + hom_om.maps[idx].scale(int(c))
        ext = _pushout_extension(rho, incl, pi, x, z)
        classes.append(ExtClass(tuple(coeffs), ext[0], ext[1], ext[2]))
    return classes


def _pushout_extension(rho: ModMap, incl: ModMap, pi: ModMap, x: Module, z: Module):
    """Push 0 -> om -> P -> z -> 0 out along rho: om -> x."""
    a = x.algebra
    om = rho.source
    P = pi.source
    xp, injections, _ = direct_sum([x, P])
    mu = ModMap(
        om,
        xp,
        [vstack([rb, ib.scale(-1)]) for rb, ib in zip(rho.blocks, incl.blocks)],
    )
    e, q = cokernel(mu)
    i = q @ injections[0]
    g = ModMap(xp, z, [hstack([Mat.zeros(a.p, z.dims[k], x.dims[k]), pb]) for k, pb in enumerate(pi.blocks)])
    pmap = factor_through_projection(q, g)
    if not i.is_mono() or not pmap.is_epi():
        raise AssertionError("pushout did not produce a short exact sequence")
    for k in range(len(x.dims)):
        if rank(pmap.blocks[k]) + rank(i.blocks[k]) != e.dims[k]:
            raise AssertionError("pushout sequence is not exact in the middle")
    if not (pmap @ i).is_zero():
        raise AssertionError("pushout composite is nonzero")
    return e, i, pmap


# --- enumeration of indecomposables ---


def enumerate_indecomposables(
    a: Algebra, dim_bound: int, budget: int = DEFAULT_ENUM_BUDGET
) -> list[Module]:
    """Complete duplicate-free list of indecomposables with total dim <= bound.

    Nilpotent loop algebras take the closed-form Jordan shortcut; everything
    else is exhaustion over dimension vectors (lex order) and action tuples
    (row-major numeric order), with explicit budget errors.
    """
    if a.tags.get("builder") == "nilpotent_loop":
        n = a.tags["n"]
        return [jordan_module(a, i) for i in range(1, min(n, dim_bound) + 1)]
    vcount = len(a.vertices)
    if vcount == 0:
        return []
    vidx = {v: i for i, v in enumerate(a.vertices)}
    found: list[Module] = []
    spent = 0
    for total in range(1, dim_bound + 1):
        for dims in _compositions(total, vcount):
            cells = [
                (l, dims[vidx[t]], dims[vidx[s]]) for (s, t, l) in a.arrows
            ]
            entries = sum(r * c for (_, r, c) in cells)
            cost = a.p**entries
            if spent + cost > budget:
                raise BudgetExceededError(
                    "indecomposable enumeration budget exhausted before dimension vector %r" % (dims,),
                    frontier=dims,
                )
            spent += cost
            for mod in _modules_with_dims(a, dims, cells):
                if not is_indecomposable(mod):
                    continue
                if any(is_isomorphic(mod, g) for g in found):
                    continue
                found.append(mod)
    return found


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _modules_with_dims(a: Algebra, dims, cells):
    p = a.p
    entries = sum(r * c for (_, r, c) in cells)
    for counter in range(p**entries):
        digits = []
        c = counter
        for _ in range(entries):
            digits.append(c % p)
            c //= p
        action = {}
        off = 0
        ok = True
        for (l, r, cdim) in cells:
            block = np.array(digits[off : off + r * cdim], dtype=np.int64).reshape(r, cdim)
            off += r * cdim
            action[l] = Mat(p, block)
        try:
            mod = Module(a, dims, action)
        except ValueError:
            ok = False
        if ok:
            yield mod


# --- radical of hom spaces between indecomposables ---


def local_end_radical(m: Module) -> list[ModMap]:
    """Basis of rad End(m) for endo-local m with residue field F_p."""
    endos = hom_space(m, m)
    p = m.algebra.p
    ident = identity_map(m)
    rad = []
    vecs = []
    for f in endos:
        lam = None
        for c in range(p):
            g = f - ident.scale(c)
            if _is_nilpotent_endo(g):
                if lam is not None:
                    raise InconclusiveError("endomorphism ring is not local over F_p")
                lam = c
        if lam is None:
            raise InconclusiveError("endomorphism ring is not local with residue F_p")
        g = f - ident.scale(lam)
        if not g.is_zero():
            v = g.vec()
            if not _in_row_span(vecs, v, p):
                vecs.append(v)
                rad.append(g)
    return rad


def _is_nilpotent_endo(f: ModMap) -> bool:
    g = f
    for _ in range(max(f.source.total_dim, 1)):
        if g.is_zero():
            return True
        g = g @ f
    return g.is_zero()


def _in_row_span(rows: list[np.ndarray], v: np.ndarray, p: int) -> bool:
    if not rows:
        return not v.any()
    mat = Mat(p, np.stack(rows, axis=1))
    sol, _ = solve_linear(mat, Mat(p, v.reshape(-1, 1)))
    return sol is not None


def hom_radical(m: Module, n: Module) -> list[ModMap]:
    """Basis of rad(m, n) for indecomposable m, n: all maps when m and n are
    non-isomorphic, the non-isomorphisms otherwise."""
    iso, theta = is_isomorphic(m, n, witness=True)
    if not iso:
        return hom_space(m, n)
    return [r @ theta for r in local_end_radical(n)]
