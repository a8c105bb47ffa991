"""The morphism category of mod A, realized on modules over T_2(A).

An object is a map f: M -> N of modules; it is identified with the module
over the doubled quiver whose connecting arrows act by the blocks of f.
Hom spaces, isomorphism tests and Krull-Schmidt decompositions are delegated
to the module machinery over T_2(A) through this identification.

The monomorphism subcategory relative to a subcategory X keeps the objects
with f injective and source, target and cokernel in X.
"""

from __future__ import annotations

import itertools
from typing import Optional

import numpy as np

from .algebra import Algebra, build_t2, connecting_arrow, lvl_arrow, lvl_vertex
from .errors import BudgetExceededError
from .fp import Mat
from .fp import solve_linear
from .modules import (
    Module,
    ModMap,
    cokernel,
    decompose,
    direct_sum,
    hom_space,
    identity_map,
    is_isomorphic,
    kernel,
    submodule_on_basis,
    syzygy,
    zero_map,
    zero_module,
)
from .subcategory import Subcat

S_ENUM_BUDGET = 1 << 22
LEFT_MINIMAL_CAP = 1 << 14


class MorphObj:
    """An object (a --f--> b) of the morphism category."""

    __slots__ = ("a", "b", "f", "_t2")

    def __init__(self, a: Module, b: Module, f: ModMap):
        if f.source != a or f.target != b:
            raise ValueError("map endpoints do not match the stated objects")
        self.a = a
        self.b = b
        self.f = f
        self._t2 = None

    @property
    def algebra(self) -> Algebra:
        return self.a.algebra

    def t2(self) -> Module:
        if self._t2 is None:
            self._t2 = to_t2(self)
        return self._t2

    def total_dim(self) -> int:
        return self.a.total_dim + self.b.total_dim

    def key(self):
        return self.t2().key()

    def __eq__(self, other):
        return isinstance(other, MorphObj) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "MorphObj(%r -> %r)" % (list(self.a.dims), list(self.b.dims))

    def to_json_dict(self):
        return {
            "source": self.a.to_json_dict(),
            "target": self.b.to_json_dict(),
            "map": [blk.tolist() for blk in self.f.blocks],
        }


class MorphMap:
    """A morphism (phi1, phi2) between morphism-category objects."""

    __slots__ = ("source", "target", "phi1", "phi2")

    def __init__(self, source: MorphObj, target: MorphObj, phi1: ModMap, phi2: ModMap, check=True):
        self.source = source
        self.target = target
        self.phi1 = phi1
        self.phi2 = phi2
        if check:
            lhs = self.phi2 @ source.f
            rhs = target.f @ self.phi1
            if not all(x == y for x, y in zip(lhs.blocks, rhs.blocks)):
                raise ValueError("square does not commute")

    def __matmul__(self, other: "MorphMap") -> "MorphMap":
        return MorphMap(other.source, self.target, self.phi1 @ other.phi1, self.phi2 @ other.phi2, check=False)

    def __add__(self, other: "MorphMap") -> "MorphMap":
        return MorphMap(self.source, self.target, self.phi1 + other.phi1, self.phi2 + other.phi2, check=False)

    def __sub__(self, other: "MorphMap") -> "MorphMap":
        return MorphMap(self.source, self.target, self.phi1 - other.phi1, self.phi2 - other.phi2, check=False)

    def scale(self, c: int) -> "MorphMap":
        return MorphMap(self.source, self.target, self.phi1.scale(c), self.phi2.scale(c), check=False)

    def is_zero(self):
        return self.phi1.is_zero() and self.phi2.is_zero()

    def is_mono(self):
        return self.phi1.is_mono() and self.phi2.is_mono()

    def is_epi(self):
        return self.phi1.is_epi() and self.phi2.is_epi()

    def is_iso(self):
        return self.phi1.is_iso() and self.phi2.is_iso()

    def inverse(self) -> "MorphMap":
        return MorphMap(self.target, self.source, self.phi1.inverse(), self.phi2.inverse(), check=False)

    def to_t2_map(self) -> ModMap:
        return ModMap(self.source.t2(), self.target.t2(), tuple(self.phi1.blocks) + tuple(self.phi2.blocks), check=False)

    def __repr__(self):
        return "MorphMap(%r -> %r)" % (self.source, self.target)


def identity_morph_map(x: MorphObj) -> MorphMap:
    return MorphMap(x, x, identity_map(x.a), identity_map(x.b), check=False)


def zero_morph_map(x: MorphObj, y: MorphObj) -> MorphMap:
    return MorphMap(x, y, zero_map(x.a, y.a), zero_map(x.b, y.b), check=False)


# --- the T_2 dictionary ---


def to_t2(x: MorphObj) -> Module:
    a = x.algebra
    t2 = build_t2(a)
    vcount = len(a.vertices)
    dims = list(x.a.dims) + list(x.b.dims)
    action = {}
    for (s, t, l) in a.arrows:
        action[lvl_arrow(l, 0)] = x.a.action[l]
        action[lvl_arrow(l, 1)] = x.b.action[l]
    for i, v in enumerate(a.vertices):
        action[connecting_arrow(v)] = x.f.blocks[i]
    return Module(t2, dims, action)


def from_t2(m: Module, base: Algebra) -> MorphObj:
    vcount = len(base.vertices)
    a_dims = m.dims[:vcount]
    b_dims = m.dims[vcount:]
    a_action = {l: m.action[lvl_arrow(l, 0)] for (_, _, l) in base.arrows}
    b_action = {l: m.action[lvl_arrow(l, 1)] for (_, _, l) in base.arrows}
    amod = Module(base, a_dims, a_action, check=False)
    bmod = Module(base, b_dims, b_action, check=False)
    f = ModMap(amod, bmod, [m.action[connecting_arrow(v)] for v in base.vertices])
    return MorphObj(amod, bmod, f)


def morph_from_modmap(f: ModMap) -> MorphObj:
    return MorphObj(f.source, f.target, f)


def identity_object(x: Module) -> MorphObj:
    """(X --1--> X)."""
    return MorphObj(x, x, identity_map(x))


def zero_to_object(x: Module) -> MorphObj:
    """(0 --> X)."""
    z = zero_module(x.algebra)
    return MorphObj(z, x, zero_map(z, x))


def syzygy_object(x: Module) -> MorphObj:
    """(Omega X -> P_X), the canonical inclusion of the syzygy."""
    om, incl, P, _ = syzygy(x)
    return MorphObj(om, P, incl)


def morph_hom_space(x: MorphObj, y: MorphObj) -> list[MorphMap]:
    """Basis of Hom(x, y), computed over T_2."""
    base = x.algebra
    vcount = len(base.vertices)
    out = []
    for f in hom_space(x.t2(), y.t2()):
        phi1 = ModMap(x.a, y.a, f.blocks[:vcount], check=False)
        phi2 = ModMap(x.b, y.b, f.blocks[vcount:], check=False)
        out.append(MorphMap(x, y, phi1, phi2, check=False))
    return out


def morph_hom_space_direct(x: MorphObj, y: MorphObj) -> int:
    """Dimension of Hom(x, y) from the commuting-square linear system,
    independent of the T_2 identification (a cross-check)."""
    from .modules import _hom_system

    p = x.algebra.p
    sys1, _ = _hom_system(x.a, y.a)
    sys2, _ = _hom_system(x.b, y.b)
    n1 = sys1.shape[1]
    n2 = sys2.shape[1]
    rows = []
    if sys1.size:
        block = np.zeros((sys1.shape[0], n1 + n2), dtype=np.int64)
        block[:, :n1] = sys1
        rows.append(block)
    if sys2.size:
        block = np.zeros((sys2.shape[0], n1 + n2), dtype=np.int64)
        block[:, n1:] = sys2
        rows.append(block)
    # commutativity: phi2 . f_x - f_y . phi1 = 0, blockwise per vertex
    for i in range(len(x.algebra.vertices)):
        r = y.b.dims[i] * x.a.dims[i]
        if r == 0:
            continue
        block = np.zeros((r, n1 + n2), dtype=np.int64)
        off1 = sum(y.a.dims[k] * x.a.dims[k] for k in range(i))
        off2 = sum(y.b.dims[k] * x.b.dims[k] for k in range(i))
        kron1 = np.kron(y.f.blocks[i].a, np.eye(x.a.dims[i], dtype=np.int64))
        kron2 = np.kron(np.eye(y.b.dims[i], dtype=np.int64), x.f.blocks[i].a.T)
        block[:, off1 : off1 + y.a.dims[i] * x.a.dims[i]] -= kron1
        block[:, n1 + off2 : n1 + off2 + y.b.dims[i] * x.b.dims[i]] += kron2
        rows.append(block % p)
    if rows:
        system = np.vstack(rows) % p
    else:
        system = np.zeros((0, n1 + n2), dtype=np.int64)
    from .fp import kernel_basis

    return len(kernel_basis(Mat(p, system)))


def is_isomorphic_morph(x: MorphObj, y: MorphObj, witness: bool = False):
    ok, wit = is_isomorphic(x.t2(), y.t2(), witness=True)
    if not witness:
        return ok
    if not ok:
        return False, None
    vcount = len(x.algebra.vertices)
    phi1 = ModMap(x.a, y.a, wit.blocks[:vcount], check=False)
    phi2 = ModMap(x.b, y.b, wit.blocks[vcount:], check=False)
    return True, MorphMap(x, y, phi1, phi2, check=False)


def decompose_morph(x: MorphObj) -> list[tuple[MorphObj, int]]:
    base = x.algebra
    return [(from_t2(m, base), mult) for (m, mult) in decompose(x.t2())]


def is_indecomposable_morph(x: MorphObj) -> bool:
    parts = decompose_morph(x)
    return len(parts) == 1 and parts[0][1] == 1


# --- the monomorphism subcategory ---


def is_object_of_S(x: MorphObj, sub: Subcat) -> bool:
    if not x.f.is_mono():
        return False
    if not sub.contains(x.a) or not sub.contains(x.b):
        return False
    cok, _ = cokernel(x.f)
    return sub.contains(cok)


def cok_functor(x: MorphObj) -> MorphObj:
    """(A >-> B) |-> (B ->> Cok f)."""
    if not x.f.is_mono():
        raise ValueError("cokernel view needs a monomorphism")
    cok, proj = cokernel(x.f)
    return MorphObj(x.b, cok, proj)


def ker_functor(y: MorphObj) -> MorphObj:
    """(B ->> C) |-> (Ker f >-> B)."""
    if not y.f.is_epi():
        raise ValueError("kernel view needs an epimorphism")
    ker, incl = kernel(y.f)
    return MorphObj(ker, y.a, incl)


def coker_module(x: MorphObj) -> Module:
    return cokernel(x.f)[0]


def split_left_minimal(x: MorphObj):
    """Split (X -> I) as a left minimal part plus (0 -> I_2).

    Repeatedly Fitting-splits along a non-invertible g in End(I) fixing f
    (g f = f forces f to land in the image part); when no such g exists the
    map is certified left minimal by exhausting the finite annihilator coset.
    """
    a = x.algebra
    p = a.p
    current = x
    tail_parts: list[Module] = []
    while True:
        f = current.f
        ann = _solve_fixers(current)
        g = _noninvertible_fixer(current, ann)
        if g is None:
            break
        power = g
        for _ in range(max(current.b.total_dim, 1)):
            power = power @ g
        from .fp import hstack, image_basis, kernel_basis

        imats = []
        kmats = []
        for i, blk in enumerate(power.blocks):
            ib = image_basis(blk)
            imats.append(hstack(ib) if ib else Mat.zeros(p, current.b.dims[i], 0))
            kb = kernel_basis(blk)
            kmats.append(hstack(kb) if kb else Mat.zeros(p, current.b.dims[i], 0))
        im_mod, im_incl = submodule_on_basis(current.b, imats)
        ker_mod, _ = submodule_on_basis(current.b, kmats)
        new_blocks = []
        for i in range(len(a.vertices)):
            sol, _ = solve_linear(imats[i], f.blocks[i])
            if sol is None:
                raise AssertionError("fixed map does not land in the image part")
            new_blocks.append(sol)
        fprime = ModMap(current.a, im_mod, new_blocks)
        tail_parts.append(ker_mod)
        current = MorphObj(current.a, im_mod, fprime)
    if tail_parts:
        tail, _, _ = direct_sum(tail_parts)
    else:
        tail = zero_module(a)
    return current, tail


def _solve_fixers(x: MorphObj) -> list[ModMap]:
    """Basis of the annihilator {h in End(b): h . f = 0}."""
    endos = hom_space(x.b, x.b)
    if not endos:
        return []
    p = x.algebra.p
    cols = np.stack([(e @ x.f).vec() for e in endos], axis=1)
    from .fp import kernel_basis

    combos = kernel_basis(Mat(p, cols))
    result = []
    for c in combos:
        h = zero_map(x.b, x.b)
        for coeff, e in zip(c.a[:, 0], endos):
            if coeff:
                h = h + e.scale(int(coeff))
        result.append(h)
    return result


def _noninvertible_fixer(x: MorphObj, ann: list[ModMap]):
    """A non-invertible g with g f = f, or None if every fixer is invertible."""
    p = x.algebra.p
    ident = identity_map(x.b)
    if p ** len(ann) > LEFT_MINIMAL_CAP:
        raise BudgetExceededError("left-minimality certification space too large")
    for coeffs in itertools.product(range(p), repeat=len(ann)):
        g = ident
        for c, h in zip(coeffs, ann):
            if c:
                g = g + h.scale(int(c))
        if not g.is_iso():
            return g
    return None


# --- enumeration of indecomposables in S_X ---


def enumerate_S_indecomposables(
    sub: Subcat, dim_bound: int, budget: int = S_ENUM_BUDGET
) -> list[MorphObj]:
    """All indecomposables of the monomorphism category with
    dim(a) + dim(b) <= bound, up to isomorphism.

    (X=X) and (0->X) are seeded directly; every other indecomposable has a
    structure map with no isomorphic component, i.e. lying in the categorical
    radical of Hom(A, B) for its own end terms, so scanning rad(A, B) over
    all pairs of add(X)-objects within the bound is complete.
    """
    found: list[MorphObj] = []

    def register(cand: MorphObj):
        for seen in found:
            if (
                seen.a.dims == cand.a.dims
                and seen.b.dims == cand.b.dims
                and is_isomorphic_morph(seen, cand)
            ):
                return
        found.append(cand)

    for g in sub.generators:
        if g.total_dim <= dim_bound:
            register(zero_to_object(g))
        if 2 * g.total_dim <= dim_bound:
            register(identity_object(g))

    objs = sub.add_objects(dim_bound)
    p = sub.algebra.p
    spent = 0
    from .subcategory import _radical_basis_between

    for (amod, aidx) in objs:
        for (bmod, bidx) in objs:
            if amod.total_dim > bmod.total_dim:
                continue
            if amod.total_dim + bmod.total_dim > dim_bound:
                continue
            rad = _radical_basis_between(sub, aidx, bidx, amod, bmod)
            if not rad:
                continue
            cost = p ** len(rad)
            if spent + cost > budget:
                raise BudgetExceededError(
                    "monomorphism enumeration budget exhausted at pair %r -> %r"
                    % (list(amod.dims), list(bmod.dims)),
                    frontier=(amod.dims, bmod.dims),
                )
            spent += cost
            vecs = np.stack([r.vec() for r in rad], axis=1)
            for coeffs in itertools.product(range(p), repeat=len(rad)):
                cv = np.array(coeffs, dtype=np.int64)
                if not cv.any():
                    continue
                flat = (vecs @ cv) % p
                f = _map_from_vec_pair(amod, bmod, flat)
                if not f.is_mono():
                    continue
                cand = MorphObj(amod, bmod, f)
                if not sub.is_all:
                    cok, _ = cokernel(f)
                    if not sub.contains(cok):
                        continue
                for piece, _mult in decompose_morph(cand):
                    if piece.total_dim() <= dim_bound:
                        register(piece)
    found.sort(key=lambda m: (m.total_dim(), m.a.dims, m.b.dims, m.key()[1:]))
    return found


def _map_from_vec_pair(amod: Module, bmod: Module, flat: np.ndarray) -> ModMap:
    blocks = []
    off = 0
    p = amod.algebra.p
    for i in range(len(amod.dims)):
        r, c = bmod.dims[i], amod.dims[i]
        blocks.append(Mat(p, flat[off : off + r * c].reshape(r, c)))
        off += r * c
    return ModMap(amod, bmod, blocks, check=False)
