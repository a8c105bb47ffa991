"""Three exact structures on the monomorphism category, as decidable predicates.

A conflation is a kernel-cokernel pair of commuting squares whose component
rows are short exact.  The canonical class asks nothing more (beyond all
terms lying in the monomorphism subcategory); the componentwise-split class
(cw) additionally asks both component rows to split; the strongly
componentwise-split class (scw) also asks the induced row of cokernels to
split.

This module provides the membership predicates, Yoneda-class enumeration of
conflations through Ext^1 over T_2, the axiom-checking harness, closed-form
classifiers for the relative projectives and injectives with their
brute-force lifting oracles, the standard deflations/inflations witnessing
"enough projectives/injectives", and relative homological dimensions.
"""

from __future__ import annotations

import itertools
from enum import Enum
from typing import Optional

import numpy as np

from .errors import BudgetExceededError
from .fp import Mat, kernel_basis, rank, solve_linear
from .modules import (
    Module,
    ModMap,
    cokernel,
    ext1_classes,
    factor_through_projection,
    hom_space,
    identity_map,
    is_projective_module,
    kernel,
    map_from_vec,
    zero_map,
    zero_module,
    _hom_system,
)
from .morphism import (
    MorphMap,
    MorphObj,
    cok_functor,
    decompose_morph,
    enumerate_S_indecomposables,
    from_t2,
    identity_object,
    identity_morph_map,
    is_isomorphic_morph,
    is_object_of_S,
    morph_hom_space,
    split_left_minimal,
    syzygy_object,
    to_t2,
    zero_morph_map,
    zero_to_object,
)
from .subcategory import Subcat

PUSHOUT_MAP_CAP = 1 << 10


class StructureKind(Enum):
    CANONICAL = "canonical"
    CW = "cw"
    SCW = "scw"

    @classmethod
    def from_token(cls, token: str) -> "StructureKind":
        for k in cls:
            if k.value == token:
                return k
        raise ValueError("unknown exact-structure kind %r" % token)


ALL_KINDS = (StructureKind.CANONICAL, StructureKind.CW, StructureKind.SCW)


class MalformedConflationError(ValueError):
    pass


class Conflation:
    """A candidate short exact sequence start --i--> middle --p--> end."""

    __slots__ = ("i", "p")

    def __init__(self, i: MorphMap, p: MorphMap, check: bool = True):
        self.i = i
        self.p = p
        if check:
            self.validate()

    @property
    def start(self) -> MorphObj:
        return self.i.source

    @property
    def middle(self) -> MorphObj:
        return self.i.target

    @property
    def end(self) -> MorphObj:
        return self.p.target

    def validate(self):
        if self.i.target is not self.p.source and self.i.target != self.p.source:
            raise MalformedConflationError("maps are not composable")
        for name, (inc, pr) in self.rows().items():
            if not inc.is_mono():
                raise MalformedConflationError("row %s: first map is not mono" % name)
            if not pr.is_epi():
                raise MalformedConflationError("row %s: second map is not epi" % name)
            if not (pr @ inc).is_zero():
                raise MalformedConflationError("row %s: composite is nonzero" % name)
            for v in range(len(inc.blocks)):
                if rank(inc.blocks[v]) + rank(pr.blocks[v]) != inc.target.dims[v]:
                    raise MalformedConflationError("row %s: not exact at vertex %d" % (name, v))

    def rows(self) -> dict:
        """The two component rows as module-level short exact sequences."""
        return {
            "sources": (self.i.phi1, self.p.phi1),
            "targets": (self.i.phi2, self.p.phi2),
        }

    def cokernel_row(self):
        """The induced cokernels row 0 -> Cok f -> Cok h -> Cok g -> 0."""
        cx, px = cokernel(self.start.f)
        cz, pz = cokernel(self.middle.f)
        cy, py = cokernel(self.end.f)
        mu1 = factor_through_projection(px, pz @ self.i.phi2)
        mu2 = factor_through_projection(pz, py @ self.p.phi2)
        if not mu1.is_mono() or not mu2.is_epi() or not (mu2 @ mu1).is_zero():
            raise MalformedConflationError("cokernel row is not short exact")
        for v in range(len(mu1.blocks)):
            if rank(mu1.blocks[v]) + rank(mu2.blocks[v]) != cz.dims[v]:
                raise MalformedConflationError("cokernel row not exact at vertex %d" % v)
        return mu1, mu2

    def to_json_dict(self):
        return {
            "start": self.start.to_json_dict(),
            "middle": self.middle.to_json_dict(),
            "end": self.end.to_json_dict(),
            "i": [[b.tolist() for b in self.i.phi1.blocks], [b.tolist() for b in self.i.phi2.blocks]],
            "p": [[b.tolist() for b in self.p.phi1.blocks], [b.tolist() for b in self.p.phi2.blocks]],
        }

    def __repr__(self):
        return "Conflation(%r -> %r -> %r)" % (self.start, self.middle, self.end)


# --- split tests ---


def is_split_ses(i: ModMap, p: ModMap) -> bool:
    """Whether the short exact sequence (i, p) of modules splits.

    Raises on inputs that are not short exact, naming the failing condition.
    """
    if not i.is_mono():
        raise ValueError("not a short exact sequence: first map is not mono")
    if not p.is_epi():
        raise ValueError("not a short exact sequence: second map is not epi")
    if not (p @ i).is_zero():
        raise ValueError("not a short exact sequence: nonzero composite")
    for v in range(len(i.blocks)):
        if rank(i.blocks[v]) + rank(p.blocks[v]) != i.target.dims[v]:
            raise ValueError("not a short exact sequence: fails exactness at vertex %d" % v)
    return retraction_of(i) is not None


def retraction_of(i: ModMap) -> Optional[ModMap]:
    """A module map r with r . i = id, if one exists."""
    src, tgt = i.source, i.target
    p = src.algebra.p
    system, _ = _hom_system(tgt, src)
    widths = [src.dims[v] * tgt.dims[v] for v in range(len(src.dims))]
    total = sum(widths)
    rows = [system]
    rhs = [np.zeros((system.shape[0], 1), dtype=np.int64)]
    off = 0
    for v in range(len(src.dims)):
        n_eq = src.dims[v] * src.dims[v]
        if n_eq:
            block = np.zeros((n_eq, total), dtype=np.int64)
            block[:, off : off + widths[v]] = np.kron(
                np.eye(src.dims[v], dtype=np.int64), i.blocks[v].a.T
            )
            rows.append(block % p)
            rhs.append(np.eye(src.dims[v], dtype=np.int64).reshape(-1, 1))
        off += widths[v]
    sol, _ = solve_linear(Mat(p, np.vstack(rows)), Mat(p, np.vstack(rhs)))
    if sol is None:
        return None
    return map_from_vec(tgt, src, sol.a.reshape(-1))


def section_of(p_map: ModMap) -> Optional[ModMap]:
    """A module map s with p . s = id, if one exists."""
    src, tgt = p_map.source, p_map.target
    p = src.algebra.p
    system, _ = _hom_system(tgt, src)
    widths = [src.dims[v] * tgt.dims[v] for v in range(len(src.dims))]
    total = sum(widths)
    rows = [system]
    rhs = [np.zeros((system.shape[0], 1), dtype=np.int64)]
    off = 0
    for v in range(len(src.dims)):
        n_eq = tgt.dims[v] * tgt.dims[v]
        if n_eq:
            block = np.zeros((n_eq, total), dtype=np.int64)
            block[:, off : off + widths[v]] = np.kron(
                p_map.blocks[v].a, np.eye(tgt.dims[v], dtype=np.int64)
            )
            rows.append(block % p)
            rhs.append(np.eye(tgt.dims[v], dtype=np.int64).reshape(-1, 1))
        off += widths[v]
    sol, _ = solve_linear(Mat(p, np.vstack(rows)), Mat(p, np.vstack(rhs)))
    if sol is None:
        return None
    return map_from_vec(tgt, src, sol.a.reshape(-1))


def is_conflation(kind: StructureKind, c: Conflation, sub: Subcat) -> bool:
    """Membership of a kernel-cokernel pair in the given exact structure."""
    c.validate()
    if not (
        is_object_of_S(c.start, sub)
        and is_object_of_S(c.middle, sub)
        and is_object_of_S(c.end, sub)
    ):
        return False
    if kind is StructureKind.CANONICAL:
        return True
    rows = c.rows()
    for (inc, pr) in rows.values():
        if retraction_of(inc) is None:
            return False
    if kind is StructureKind.CW:
        return True
    mu1, mu2 = c.cokernel_row()
    return retraction_of(mu1) is not None


# --- enumeration ---


def s_indecomposables(sub: Subcat, dim_bound: int) -> list[MorphObj]:
    key = ("s_ind", dim_bound)
    if key not in sub._caches:
        sub._caches[key] = enumerate_S_indecomposables(sub, dim_bound)
    return sub._caches[key]


def _conflations_between(sub: Subcat, endx: MorphObj, endy: MorphObj) -> list[Conflation]:
    """All H-level conflation classes 0 -> endx -> Z -> endy -> 0 with Z in S."""
    base = sub.algebra
    out = []
    for cls in ext1_classes(endy.t2(), endx.t2()):
        middle = from_t2(cls.middle, base)
        if not is_object_of_S(middle, sub):
            continue
        vcount = len(base.vertices)
        i = MorphMap(
            endx,
            middle,
            ModMap(endx.a, middle.a, cls.i.blocks[:vcount], check=False),
            ModMap(endx.b, middle.b, cls.i.blocks[vcount:], check=False),
            check=False,
        )
        p = MorphMap(
            middle,
            endy,
            ModMap(middle.a, endy.a, cls.p.blocks[:vcount], check=False),
            ModMap(middle.b, endy.b, cls.p.blocks[vcount:], check=False),
            check=False,
        )
        out.append(Conflation(i, p))
    return out


def enumerate_conflations(
    kind: StructureKind,
    sub: Subcat,
    dim_bound: int,
    start: Optional[MorphObj] = None,
    end: Optional[MorphObj] = None,
) -> list[Conflation]:
    """One representative per Yoneda class of conflations of the given kind
    between indecomposable end terms within the dimension bound."""
    key = ("conflations", dim_bound, start.key() if start else None, end.key() if end else None)
    if key not in sub._caches:
        inds = s_indecomposables(sub, dim_bound)
        starts = [start] if start is not None else inds
        ends = [end] if end is not None else inds
        allc = []
        for y in ends:
            for x in starts:
                allc.extend(_conflations_between(sub, x, y))
        sub._caches[key] = allc
    allc = sub._caches[key]
    kind_key = ("conflations", kind, dim_bound, start.key() if start else None, end.key() if end else None)
    if kind_key not in sub._caches:
        sub._caches[kind_key] = [c for c in allc if is_conflation(kind, c, sub)]
    return sub._caches[kind_key]


def _sum_objects(sub: Subcat, dim_bound: int, max_summands: int) -> list[MorphObj]:
    """Direct sums of up to max_summands enumerated S-indecomposables."""
    inds = s_indecomposables(sub, dim_bound)
    out = list(inds)
    if max_summands >= 2:
        for i in range(len(inds)):
            for j in range(i, len(inds)):
                if inds[i].total_dim() + inds[j].total_dim() <= dim_bound:
                    total, _, _ = morph_direct_sum([inds[i], inds[j]])
                    out.append(total)
    return out


def enumerate_conflations_extended(
    kind: StructureKind, sub: Subcat, dim_bound: int, max_summands: int = 2
) -> list[Conflation]:
    """Conflations between direct sums of up to max_summands indecomposables;
    used to exercise composition closure on non-trivial composable pairs."""
    key = ("conflations_ext", kind, dim_bound, max_summands)
    if key not in sub._caches:
        objs = _sum_objects(sub, dim_bound, max_summands)
        allc = []
        for y in objs:
            for x in objs:
                if x.total_dim() + y.total_dim() > dim_bound:
                    continue
                try:
                    cs = _conflations_between(sub, x, y)
                except BudgetExceededError:
                    continue
                allc.extend(c for c in cs if is_conflation(kind, c, sub))
        sub._caches[key] = allc
    return sub._caches[key]


# --- kernels/cokernels of morphism-category maps, via T_2 ---


def morph_kernel(m: MorphMap) -> tuple[MorphObj, MorphMap]:
    base = m.source.algebra
    vcount = len(base.vertices)
    t2map = m.to_t2_map()
    k, incl = kernel(t2map)
    kobj = from_t2(k, base)
    wrapped = MorphMap(
        kobj,
        m.source,
        ModMap(kobj.a, m.source.a, incl.blocks[:vcount], check=False),
        ModMap(kobj.b, m.source.b, incl.blocks[vcount:], check=False),
        check=False,
    )
    return kobj, wrapped


def morph_cokernel(m: MorphMap) -> tuple[MorphObj, MorphMap]:
    base = m.source.algebra
    vcount = len(base.vertices)
    t2map = m.to_t2_map()
    c, proj = cokernel(t2map)
    cobj = from_t2(c, base)
    wrapped = MorphMap(
        m.target,
        cobj,
        ModMap(m.target.a, cobj.a, proj.blocks[:vcount], check=False),
        ModMap(m.target.b, cobj.b, proj.blocks[vcount:], check=False),
        check=False,
    )
    wrapped_section = proj.section_blocks
    wrapped.phi1.section_blocks = wrapped_section[:vcount]
    wrapped.phi2.section_blocks = wrapped_section[vcount:]
    return cobj, wrapped


def lift_through(p_map: ModMap, phi: ModMap) -> Optional[ModMap]:
    """psi with p_map . psi = phi, if one exists (module level)."""
    src = phi.source
    mid = p_map.source
    p = src.algebra.p
    system, _ = _hom_system(src, mid)
    widths = [mid.dims[v] * src.dims[v] for v in range(len(src.dims))]
    total = sum(widths)
    rows = [system]
    rhs = [np.zeros((system.shape[0], 1), dtype=np.int64)]
    off = 0
    for v in range(len(src.dims)):
        n_eq = phi.target.dims[v] * src.dims[v]
        if n_eq:
            block = np.zeros((n_eq, total), dtype=np.int64)
            block[:, off : off + widths[v]] = np.kron(
                p_map.blocks[v].a, np.eye(src.dims[v], dtype=np.int64)
            )
            rows.append(block % p)
            rhs.append(phi.blocks[v].a.reshape(-1, 1))
        off += widths[v]
    sol, _ = solve_linear(Mat(p, np.vstack(rows)), Mat(p, np.vstack(rhs)))
    if sol is None:
        return None
    return map_from_vec(src, mid, sol.a.reshape(-1))


def extend_through(i_map: ModMap, phi: ModMap) -> Optional[ModMap]:
    """psi with psi . i_map = phi, if one exists (module level)."""
    mid = i_map.target
    tgt = phi.target
    p = tgt.algebra.p
    system, _ = _hom_system(mid, tgt)
    widths = [tgt.dims[v] * mid.dims[v] for v in range(len(mid.dims))]
    total = sum(widths)
    rows = [system]
    rhs = [np.zeros((system.shape[0], 1), dtype=np.int64)]
    off = 0
    for v in range(len(mid.dims)):
        n_eq = tgt.dims[v] * phi.source.dims[v]
        if n_eq:
            block = np.zeros((n_eq, total), dtype=np.int64)
            block[:, off : off + widths[v]] = np.kron(
                np.eye(tgt.dims[v], dtype=np.int64), i_map.blocks[v].a.T
            )
            rows.append(block % p)
            rhs.append(phi.blocks[v].a.reshape(-1, 1))
        off += widths[v]
    sol, _ = solve_linear(Mat(p, np.vstack(rows)), Mat(p, np.vstack(rhs)))
    if sol is None:
        return None
    return map_from_vec(mid, tgt, sol.a.reshape(-1))


def morph_lift_through(p_map: MorphMap, phi: MorphMap) -> Optional[MorphMap]:
    psi = lift_through(p_map.to_t2_map(), phi.to_t2_map())
    if psi is None:
        return None
    base = phi.source.algebra
    vcount = len(base.vertices)
    return MorphMap(
        phi.source,
        p_map.source,
        ModMap(phi.source.a, p_map.source.a, psi.blocks[:vcount], check=False),
        ModMap(phi.source.b, p_map.source.b, psi.blocks[vcount:], check=False),
        check=False,
    )


def morph_extend_through(i_map: MorphMap, phi: MorphMap) -> Optional[MorphMap]:
    psi = extend_through(i_map.to_t2_map(), phi.to_t2_map())
    if psi is None:
        return None
    base = phi.source.algebra
    vcount = len(base.vertices)
    return MorphMap(
        i_map.target,
        phi.target,
        ModMap(i_map.target.a, phi.target.a, psi.blocks[:vcount], check=False),
        ModMap(i_map.target.b, phi.target.b, psi.blocks[vcount:], check=False),
        check=False,
    )


# --- axiom checking ---


def check_axioms(kind: StructureKind, sub: Subcat, dim_bound: int) -> dict:
    """(E0), (E1), (E2) and duals on the enumerated conflation universe."""
    report = {"kind": kind.value, "checks": [], "bounded": False}
    inds = s_indecomposables(sub, dim_bound)
    confs = enumerate_conflations(kind, sub, dim_bound)

    def add(name, failures, checked):
        entry = {"axiom": name, "status": "pass" if not failures else "fail", "checked": checked}
        if failures:
            entry["witness"] = failures[0]
        report["checks"].append(entry)

    # E0 / E0^op: identities are deflations and inflations
    e0_fail, e0op_fail = [], []
    z = zero_module(sub.algebra)
    zobj = MorphObj(z, z, zero_map(z, z))
    for y in inds:
        ident = identity_morph_map(y)
        c = Conflation(MorphMap(zobj, y, zero_map(z, y.a), zero_map(z, y.b), check=False), ident)
        if not is_conflation(kind, c, sub):
            e0_fail.append({"object": y.to_json_dict()})
        c_op = Conflation(ident, MorphMap(y, zobj, zero_map(y.a, z), zero_map(y.b, z), check=False))
        if not is_conflation(kind, c_op, sub):
            e0op_fail.append({"object": y.to_json_dict()})
    add("E0", e0_fail, len(inds))
    add("E0op", e0op_fail, len(inds))

    # E1: composable pairs of deflations (middle of the second iso to the end
    # of the first); the extended universe includes decomposable ends so the
    # check is not vacuous for the split-row structures
    ext_confs = enumerate_conflations_extended(kind, sub, dim_bound)
    e1_fail = []
    checked = 0
    for c1 in ext_confs:
        for c2 in ext_confs:
            ok, iso = is_isomorphic_morph(c1.end, c2.middle, witness=True)
            if not ok:
                continue
            composite = c2.p @ (iso @ c1.p)
            if not composite.is_epi():
                e1_fail.append({"reason": "composite not epi", "c1": c1.to_json_dict()})
                continue
            kobj, incl = morph_kernel(composite)
            cand = Conflation(incl, composite)
            checked += 1
            if not is_conflation(kind, cand, sub):
                e1_fail.append({"c1": c1.to_json_dict(), "c2": c2.to_json_dict()})
    add("E1", e1_fail, checked)

    # E1^op: composable pairs of inflations
    e1op_fail = []
    checked = 0
    for c1 in ext_confs:
        for c2 in ext_confs:
            ok, iso = is_isomorphic_morph(c1.middle, c2.start, witness=True)
            if not ok:
                continue
            composite = (c2.i @ iso) @ c1.i
            if not composite.is_mono():
                e1op_fail.append({"reason": "composite not mono", "c1": c1.to_json_dict()})
                continue
            cobj, proj = morph_cokernel(composite)
            cand = Conflation(composite, proj)
            checked += 1
            if not is_conflation(kind, cand, sub):
                e1op_fail.append({"c1": c1.to_json_dict(), "c2": c2.to_json_dict()})
    add("E1op", e1op_fail, checked)

    # E2: pushouts along arbitrary maps out of the start term
    e2_fail = []
    checked = 0
    for c in confs:
        for xprime in inds:
            maps = morph_hom_space(c.start, xprime)
            p = sub.algebra.p
            if p ** len(maps) > PUSHOUT_MAP_CAP:
                report["bounded"] = True
                continue
            for coeffs in itertools.product(range(p), repeat=len(maps)):
                phi = zero_morph_map(c.start, xprime)
                for cf, g in zip(coeffs, maps):
                    if cf:
                        phi = phi + g.scale(int(cf))
                cand = pushout_conflation(c, phi)
                checked += 1
                if not is_conflation(kind, cand, sub):
                    e2_fail.append(
                        {"conflation": c.to_json_dict(), "target": xprime.to_json_dict()}
                    )
    add("E2", e2_fail, checked)

    # E2^op: pullbacks along arbitrary maps into the end term
    e2op_fail = []
    checked = 0
    for c in confs:
        for yprime in inds:
            maps = morph_hom_space(yprime, c.end)
            p = sub.algebra.p
            if p ** len(maps) > PUSHOUT_MAP_CAP:
                report["bounded"] = True
                continue
            for coeffs in itertools.product(range(p), repeat=len(maps)):
                psi = zero_morph_map(yprime, c.end)
                for cf, g in zip(coeffs, maps):
                    if cf:
                        psi = psi + g.scale(int(cf))
                cand = pullback_conflation(c, psi)
                checked += 1
                if not is_conflation(kind, cand, sub):
                    e2op_fail.append(
                        {"conflation": c.to_json_dict(), "source": yprime.to_json_dict()}
                    )
    add("E2op", e2op_fail, checked)

    report["all_pass"] = all(ch["status"] == "pass" for ch in report["checks"])
    return report


def pushout_conflation(c: Conflation, phi: MorphMap) -> Conflation:
    """Push the conflation out along phi: start -> x'."""
    base = c.start.algebra
    vcount = len(base.vertices)
    xprime = phi.target
    x_t2, z_t2 = c.start.t2(), c.middle.t2()
    from .modules import direct_sum
    from .fp import vstack as fp_vstack

    xp, injections, _ = direct_sum([xprime.t2(), z_t2])

    mu = ModMap(
        x_t2,
        xp,
        [fp_vstack([pb, ib.scale(-1)]) for pb, ib in zip(phi.to_t2_map().blocks, c.i.to_t2_map().blocks)],
    )
    e, q = cokernel(mu)
    iprime = q @ injections[0]
    g = ModMap(
        xp,
        c.end.t2(),
        [
            Mat(base.p, np.hstack([np.zeros((pb.rows, xprime.t2().dims[k]), dtype=np.int64), pb.a]))
            for k, pb in enumerate(c.p.to_t2_map().blocks)
        ],
    )
    pprime = factor_through_projection(q, g)
    eobj = from_t2(e, base)
    i_wrapped = MorphMap(
        xprime,
        eobj,
        ModMap(xprime.a, eobj.a, iprime.blocks[:vcount], check=False),
        ModMap(xprime.b, eobj.b, iprime.blocks[vcount:], check=False),
        check=False,
    )
    p_wrapped = MorphMap(
        eobj,
        c.end,
        ModMap(eobj.a, c.end.a, pprime.blocks[:vcount], check=False),
        ModMap(eobj.b, c.end.b, pprime.blocks[vcount:], check=False),
        check=False,
    )
    return Conflation(i_wrapped, p_wrapped)


def pullback_conflation(c: Conflation, psi: MorphMap) -> Conflation:
    """Pull the conflation back along psi: y' -> end."""
    base = c.start.algebra
    vcount = len(base.vertices)
    yprime = psi.source
    z_t2 = c.middle.t2()
    from .modules import direct_sum

    zy, injections, projections = direct_sum([z_t2, yprime.t2()])
    nu = ModMap(
        zy,
        c.end.t2(),
        [
            Mat(base.p, np.hstack([pb.a, (-sb.a) % base.p]))
            for pb, sb in zip(c.p.to_t2_map().blocks, psi.to_t2_map().blocks)
        ],
    )
    w, incl = kernel(nu)
    pprime = projections[1] @ incl
    # the start maps into the pullback via (i, 0)
    target_vec = [
        Mat(base.p, np.vstack([ib.a, np.zeros((yprime.t2().dims[k], ib.cols), dtype=np.int64)]))
        for k, ib in enumerate(c.i.to_t2_map().blocks)
    ]
    iprime_blocks = []
    for k in range(len(incl.blocks)):
        sol, _ = solve_linear(incl.blocks[k], target_vec[k])
        if sol is None:
            raise AssertionError("inflation does not land in the pullback")
        iprime_blocks.append(sol)
    wobj = from_t2(w, base)
    iprime = ModMap(c.start.t2(), w, iprime_blocks)
    i_wrapped = MorphMap(
        c.start,
        wobj,
        ModMap(c.start.a, wobj.a, iprime.blocks[:vcount], check=False),
        ModMap(c.start.b, wobj.b, iprime.blocks[vcount:], check=False),
        check=False,
    )
    p_wrapped = MorphMap(
        wobj,
        yprime,
        ModMap(wobj.a, yprime.a, pprime.blocks[:vcount], check=False),
        ModMap(wobj.b, yprime.b, pprime.blocks[vcount:], check=False),
        check=False,
    )
    return Conflation(i_wrapped, p_wrapped)


# --- classification of relative projectives and injectives ---


def classify_projective(kind: StructureKind, x: MorphObj, sub: Subcat) -> bool:
    """Closed-form test on an indecomposable object of the monomorphism
    subcategory."""
    is_identity_form = x.f.is_iso()
    is_zero_source = x.a.total_dim == 0
    if kind is StructureKind.CANONICAL:
        if is_identity_form or is_zero_source:
            return is_projective_module(x.b)
        return False
    if is_identity_form or is_zero_source:
        return True
    if kind is StructureKind.CW:
        return False
    # scw: additionally the syzygy inclusions Omega(X) -> P_X
    for g in sub.generators:
        if is_projective_module(g):
            continue
        if is_isomorphic_morph(x, syzygy_object(g)):
            return True
    return False


def _is_x_injective_object(m: Module, sub: Subcat) -> bool:
    """All indecomposable summands among the injectives of the exact
    subcategory."""
    if m.total_dim == 0:
        return True
    from .modules import decompose, is_isomorphic

    inj = sub.x_injectives()
    for piece, _ in decompose(m):
        if not any(is_isomorphic(piece, i) for i in inj):
            return False
    return True


def classify_injective(kind: StructureKind, x: MorphObj, sub: Subcat) -> bool:
    """Closed-form test on an indecomposable object of the monomorphism
    subcategory; requires the subcategory to have (verified) enough
    injectives."""
    sub_has_enough_injectives(sub, require=True)
    is_identity_form = x.f.is_iso()
    is_zero_source = x.a.total_dim == 0
    if kind is StructureKind.CANONICAL:
        if is_identity_form or is_zero_source:
            return _is_x_injective_object(x.b, sub)
        return False
    if kind is StructureKind.CW:
        if is_identity_form:
            return True
        if is_zero_source:
            return _is_x_injective_object(x.b, sub)
        if not _is_x_injective_object(x.b, sub):
            return False
        _, tail = split_left_minimal(x)
        return tail.total_dim == 0
    # scw
    if is_identity_form or is_zero_source:
        return True
    if not _is_x_injective_object(x.b, sub):
        return False
    _, tail = split_left_minimal(x)
    return tail.total_dim == 0


def sub_has_enough_injectives(sub: Subcat, require: bool = False) -> bool:
    key = "enough_injectives"
    if key not in sub._caches:
        ok = True
        try:
            for g in sub.generators:
                sub.x_injective_embedding(g)
        except Exception:
            ok = False
        sub._caches[key] = ok
    if require and not sub._caches[key]:
        from .errors import HypothesisNotVerifiedError

        raise HypothesisNotVerifiedError("enough injectives not verified for the subcategory")
    return sub._caches[key]


def brute_force_projective(kind: StructureKind, x: MorphObj, sub: Subcat, dim_bound: int) -> bool:
    """Lifting oracle: x lifts against every enumerated deflation of the kind."""
    for c in enumerate_conflations(kind, sub, dim_bound):
        for phi in morph_hom_space(x, c.end):
            if morph_lift_through(c.p, phi) is None:
                return False
    return True


def brute_force_injective(kind: StructureKind, x: MorphObj, sub: Subcat, dim_bound: int) -> bool:
    """Extension oracle: maps into x extend along every enumerated inflation."""
    for c in enumerate_conflations(kind, sub, dim_bound):
        for phi in morph_hom_space(c.start, x):
            if morph_extend_through(c.i, phi) is None:
                return False
    return True


# --- standard deflations and inflations ---


def morph_direct_sum(objs: list[MorphObj]):
    from .modules import direct_sum

    amod, ainj, aproj = direct_sum([o.a for o in objs])
    bmod, binj, bproj = direct_sum([o.b for o in objs])
    from .fp import block_diag

    f = ModMap(amod, bmod, block_diag_blocks(objs), check=False)
    total = MorphObj(amod, bmod, f)
    injections = [
        MorphMap(o, total, ai, bi, check=False) for o, ai, bi in zip(objs, ainj, binj)
    ]
    projections = [
        MorphMap(total, o, ap, bp, check=False) for o, ap, bp in zip(objs, aproj, bproj)
    ]
    return total, injections, projections


def block_diag_blocks(objs: list[MorphObj]):
    from .fp import block_diag

    p = objs[0].algebra.p
    vcount = len(objs[0].algebra.vertices)
    return [block_diag(p, [o.f.blocks[v] for o in objs]) for v in range(vcount)]


def standard_projective_deflation(kind: StructureKind, x: MorphObj, sub: Subcat) -> Conflation:
    """A conflation of the kind ending at x with kind-projective middle."""
    from .modules import projective_cover, syzygy as mod_syzygy

    base = x.algebra
    if kind is StructureKind.CANONICAL:
        P1, pi1 = projective_cover(x.a)
        P2, pi2 = projective_cover(x.b)
        middle, injections, projections = morph_direct_sum(
            [identity_object(P1), zero_to_object(P2)]
        )
        comp1 = MorphMap(identity_object(P1), x, pi1, x.f @ pi1, check=False)
        comp2 = MorphMap(zero_to_object(P2), x, zero_map(zero_module(base), x.a), pi2, check=False)
        q = (comp1 @ projections[0]) + (comp2 @ projections[1])
    elif kind is StructureKind.CW:
        middle, injections, projections = morph_direct_sum(
            [identity_object(x.a), zero_to_object(x.b)]
        )
        comp1 = MorphMap(identity_object(x.a), x, identity_map(x.a), x.f, check=False)
        comp2 = MorphMap(zero_to_object(x.b), x, zero_map(zero_module(base), x.a), identity_map(x.b), check=False)
        q = (comp1 @ projections[0]) + (comp2 @ projections[1])
    else:
        cokx, g = cokernel(x.f)
        om, incl, P, piC = mod_syzygy(cokx)
        syz = MorphObj(om, P, incl)
        sigma2 = lift_through(g, piC)
        if sigma2 is None:
            raise AssertionError("cover map does not lift through the cokernel projection")
        rhs = sigma2 @ incl
        sigma1_blocks = []
        for v in range(len(base.vertices)):
            sol, _ = solve_linear(x.f.blocks[v], rhs.blocks[v])
            if sol is None:
                raise AssertionError("syzygy comparison map missing")
            sigma1_blocks.append(sol)
        sigma1 = ModMap(om, x.a, sigma1_blocks)
        middle, injections, projections = morph_direct_sum(
            [syz, zero_to_object(x.b), identity_object(x.a)]
        )
        comp1 = MorphMap(syz, x, sigma1, sigma2, check=True)
        comp2 = MorphMap(zero_to_object(x.b), x, zero_map(zero_module(base), x.a), identity_map(x.b), check=False)
        comp3 = MorphMap(identity_object(x.a), x, identity_map(x.a), x.f, check=False)
        q = (comp1 @ projections[0]) + (comp2 @ projections[1]) + (comp3 @ projections[2])
    kobj, incl_k = morph_kernel(q)
    conf = Conflation(incl_k, q)
    if not is_conflation(kind, conf, sub):
        raise AssertionError("standard deflation is not a conflation of its kind")
    for piece, _ in decompose_morph(conf.middle):
        if not classify_projective(kind, piece, sub):
            raise AssertionError("standard deflation middle is not projective")
    return conf


def standard_injective_inflation(kind: StructureKind, x: MorphObj, sub: Subcat) -> Conflation:
    """A conflation of the kind starting at x with kind-injective middle."""
    base = x.algebra
    p = base.p
    if kind is StructureKind.CW:
        I, m = sub.x_injective_embedding(x.b)
        mf = m @ x.f
        middle_f_blocks = []
        for v in range(len(base.vertices)):
            top = np.hstack([mf.blocks[v].a, np.zeros((I.dims[v], x.b.dims[v]), dtype=np.int64)])
            bot = np.hstack(
                [np.zeros((x.b.dims[v], x.a.dims[v]), dtype=np.int64), np.eye(x.b.dims[v], dtype=np.int64)]
            )
            middle_f_blocks.append(Mat(p, np.vstack([top, bot])))
        from .modules import direct_sum

        mid_a, a_inj, _ = direct_sum([x.a, x.b])
        mid_b, b_inj, _ = direct_sum([I, x.b])
        middle = MorphObj(mid_a, mid_b, ModMap(mid_a, mid_b, middle_f_blocks))
        i1 = _stack_map(x.a, mid_a, [identity_map(x.a), x.f])
        i2 = _stack_map(x.b, mid_b, [m, identity_map(x.b)])
        i = MorphMap(x, middle, i1, i2)
        end = MorphObj(x.b, I, m)
        p1 = _row_map(mid_a, x.b, [x.f.scale(-1), identity_map(x.b)])
        p2 = _row_map(mid_b, I, [identity_map(I).scale(-1), m])
        pmap = MorphMap(middle, end, p1, p2)
        conf = Conflation(i, pmap)
    elif kind is StructureKind.SCW:
        cokx, g = cokernel(x.f)
        I, l = sub.x_injective_embedding(x.a)
        d = extend_through(x.f, l)
        if d is None:
            raise AssertionError("injective does not extend along the inflation")
        env = MorphObj(x.a, I, l)
        middle, injections, _ = morph_direct_sum(
            [identity_object(x.b), env, zero_to_object(cokx)]
        )
        comp1 = MorphMap(x, identity_object(x.b), x.f, identity_map(x.b), check=False)
        comp2 = MorphMap(x, env, identity_map(x.a), d, check=True)
        comp3 = MorphMap(x, zero_to_object(cokx), zero_map(x.a, zero_module(base)), g, check=False)
        i = (injections[0] @ comp1) + (injections[1] @ comp2) + (injections[2] @ comp3)
        cobj, proj = morph_cokernel(i)
        conf = Conflation(i, proj)
    else:
        cokx, g = cokernel(x.f)
        I1, l1 = sub.x_injective_embedding(x.a)
        IC, lC = sub.x_injective_embedding(cokx)
        e = extend_through(x.f, l1)
        if e is None:
            raise AssertionError("injective does not extend along the inflation")
        middle, injections, _ = morph_direct_sum(
            [identity_object(I1), zero_to_object(IC)]
        )
        comp1 = MorphMap(x, identity_object(I1), l1, e, check=True)
        comp2 = MorphMap(x, zero_to_object(IC), zero_map(x.a, zero_module(base)), lC @ g, check=False)
        i = (injections[0] @ comp1) + (injections[1] @ comp2)
        cobj, proj = morph_cokernel(i)
        conf = Conflation(i, proj)
    if not is_conflation(kind, conf, sub):
        raise AssertionError("standard inflation is not a conflation of its kind")
    for piece, _ in decompose_morph(conf.middle):
        if not classify_injective(kind, piece, sub):
            raise AssertionError("standard inflation middle is not injective")
    return conf


def _stack_map(src: Module, tgt: Module, maps: list[ModMap]) -> ModMap:
    from .fp import vstack

    blocks = [vstack([m.blocks[v] for m in maps]) for v in range(len(src.dims))]
    return ModMap(src, tgt, blocks)


def _row_map(src: Module, tgt: Module, maps: list[ModMap]) -> ModMap:
    from .fp import hstack

    blocks = [hstack([m.blocks[v] for m in maps]) for v in range(len(tgt.dims))]
    return ModMap(src, tgt, blocks)


# --- relative homological dimensions ---


def projective_dimension(
    kind: StructureKind, x: MorphObj, sub: Subcat, length_cap: int = 6
) -> Optional[int]:
    """Length of the recursive standard resolution; None means "> cap".

    Exact by Schanuel: kernels of any two projective deflations agree up to
    projective summands, so the recursion depth is the minimal length.
    """
    current = x
    n = 0
    while True:
        if current.total_dim() == 0:
            return n
        pieces = decompose_morph(current)
        if all(classify_projective(kind, piece, sub) for piece, _ in pieces):
            return n
        if n == length_cap:
            return None
        conf = standard_projective_deflation(kind, current, sub)
        current = conf.start
        n += 1


def injective_dimension(
    kind: StructureKind, x: MorphObj, sub: Subcat, length_cap: int = 6
) -> Optional[int]:
    current = x
    n = 0
    while True:
        if current.total_dim() == 0:
            return n
        pieces = decompose_morph(current)
        if all(classify_injective(kind, piece, sub) for piece, _ in pieces):
            return n
        if n == length_cap:
            return None
        conf = standard_injective_inflation(kind, current, sub)
        current = conf.end
        n += 1
