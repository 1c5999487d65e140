"""Exact rational polyhedra, cones, fans and flags.

H-representations carry strict rows; feasibility is decided by maximizing a
common slack with exact pivoting, so strictness is honored exactly and an
Infeasible answer certifies that no positive slack exists.  Vertex/ray
enumeration ("double description at desk scale") goes through subset
enumeration of tight constraints and is intended for small ambient dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import _lp
from ._linalg import (ONE, ZERO, Vec, dot, frac, is_zero_vec, neg_primitive_pair,
                      nullspace_basis, primitive, rank_of, reduce_mod_span, rref,
                      vadd, vec, vscale, zero_vec)

LE, LT, EQ = "<=", "<", "="
_RELS = (LE, LT, EQ)


class EmptyPolyhedronError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class HRow:
    a: Vec
    b: Fraction
    rel: str

    def __post_init__(self):
        if self.rel not in _RELS:
            raise ValueError("bad relation %r" % (self.rel,))

    def scaled_canonical(self) -> "HRow":
        """Primitive integer scaling of (a, b); equalities get a sign convention."""
        joint = primitive(tuple(self.a) + (self.b,))
        if self.rel == EQ:
            for x in joint:
                if x != 0:
                    if x < 0:
                        joint = vscale(-1, joint)
                    break
        return HRow(joint[:-1], joint[-1], self.rel)


def row(a, b, rel) -> HRow:
    return HRow(vec(a), frac(b), rel)


@dataclass(frozen=True)
class PolyhedronH:
    """{x in Q^dim : <a_i, x> rel_i b_i}."""

    dim: int
    rows: tuple

    def __post_init__(self):
        for r in self.rows:
            if len(r.a) != self.dim:
                raise DimensionMismatchError("row length %d != dim %d" % (len(r.a), self.dim))

    @staticmethod
    def make(dim: int, rows: Iterable[HRow]) -> "PolyhedronH":
        canon = []
        seen = set()
        for r in rows:
            r = r.scaled_canonical()
            if is_zero_vec(r.a):
                trivially_true = ((r.rel == LE and r.b >= 0)
                                  or (r.rel == LT and r.b > 0)
                                  or (r.rel == EQ and r.b == 0))
                if trivially_true:
                    continue  # drop 0 <= b-style rows; false ones stay
            key = (r.a, r.b, r.rel)
            if key not in seen:
                seen.add(key)
                canon.append(r)
        canon.sort(key=lambda r: (r.rel, r.a, r.b))
        return PolyhedronH(dim, tuple(canon))

    def is_homogeneous(self) -> bool:
        return all(r.b == 0 for r in self.rows)

    def has_strict(self) -> bool:
        return any(r.rel == LT for r in self.rows)

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        for r in self.rows:
            v = dot(r.a, x)
            if r.rel == LE and not v <= r.b:
                return False
            if r.rel == LT and not v < r.b:
                return False
            if r.rel == EQ and v != r.b:
                return False
        return True

    def with_rows(self, extra: Iterable[HRow]) -> "PolyhedronH":
        return PolyhedronH.make(self.dim, self.rows + tuple(extra))

    def weakened(self) -> "PolyhedronH":
        """Strict rows relaxed to non-strict (topological closure of the H-description)."""
        return PolyhedronH.make(self.dim, tuple(
            HRow(r.a, r.b, LE if r.rel == LT else r.rel) for r in self.rows))


class ConeH(PolyhedronH):
    """A PolyhedronH with all right-hand sides zero."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_homogeneous():
            raise ValueError("cone rows must be homogeneous")

    @staticmethod
    def make(dim: int, rows: Iterable[HRow]) -> "ConeH":
        p = PolyhedronH.make(dim, rows)
        return ConeH(p.dim, p.rows)


def whole_space(dim: int) -> ConeH:
    return ConeH.make(dim, ())


def origin_cone(dim: int) -> ConeH:
    return ConeH.make(dim, tuple(row([ONE if j == i else ZERO for j in range(dim)], 0, EQ)
                                 for i in range(dim)))


def intersect(p: PolyhedronH, q: PolyhedronH) -> PolyhedronH:
    if p.dim != q.dim:
        raise DimensionMismatchError("ambient dimensions differ")
    cls = ConeH if p.is_homogeneous() and q.is_homogeneous() else PolyhedronH
    return cls.make(p.dim, p.rows + q.rows)


# ---------------------------------------------------------------------------
# feasibility / optimization

def _split_rows(p: PolyhedronH):
    a_ub, b_ub, a_eq, b_eq, stricts = [], [], [], [], []
    for r in p.rows:
        if r.rel == EQ:
            a_eq.append(r.a)
            b_eq.append(r.b)
        else:
            a_ub.append(r.a)
            b_ub.append(r.b)
            stricts.append(r.rel == LT)
    return a_ub, b_ub, a_eq, b_eq, stricts


def max_linear(p: PolyhedronH, c: Sequence):
    """Maximize c.x over the weak relaxation of p: (status, value, argmax)."""
    a_ub, b_ub, a_eq, b_eq, _ = _split_rows(p)
    status, x, value = _lp.solve_lp(c, a_ub, b_ub, a_eq, b_eq)
    return status, value, x


def feasible(p: PolyhedronH) -> Optional[Vec]:
    """Exact witness honoring strict rows strictly, or None (certified empty)."""
    a_ub, b_ub, a_eq, b_eq, stricts = _split_rows(p)
    d = p.dim
    # variables (x, eps); maximize eps, strict rows get "+eps", eps <= 1 bounds it
    A, B = [], []
    for a, b, s in zip(a_ub, b_ub, stricts):
        A.append(tuple(a) + ((ONE,) if s else (ZERO,)))
        B.append(b)
    A.append(zero_vec(d) + (ONE,))
    B.append(ONE)
    A.append(zero_vec(d) + (-ONE,))
    B.append(ZERO)
    AE = [tuple(a) + (ZERO,) for a in a_eq]
    c = zero_vec(d) + (ONE,)
    status, x, value = _lp.solve_lp(c, A, B, AE, b_eq)
    if status != _lp.OPTIMAL:
        return None
    if any(stricts) and value <= 0:
        return None
    return x[:d]


def is_empty(p: PolyhedronH) -> bool:
    return feasible(p) is None


def _l1_polish(p: PolyhedronH) -> Vec:
    """Deterministic small point of a (weakly described) nonempty polyhedron.

    Minimizes sum |x_i| via x = u - v, u,v >= 0; exact simplex keeps it canonical.
    """
    d = p.dim
    a_ub, b_ub, a_eq, b_eq, _ = _split_rows(p)
    # variables (u, v) each length d, minimize sum(u+v) == maximize -(sum)
    A, B = [], []
    for a, b in zip(a_ub, b_ub):
        A.append(tuple(a) + tuple(-x for x in a))
        B.append(b)
    for i in range(2 * d):
        rr = [ZERO] * (2 * d)
        rr[i] = -ONE
        A.append(tuple(rr))
        B.append(ZERO)
    AE = [tuple(a) + tuple(-x for x in a) for a in a_eq]
    c = (-ONE,) * (2 * d)
    status, x, _ = _lp.solve_lp(c, A, B, AE, b_eq)
    assert status == _lp.OPTIMAL, status
    return tuple(x[i] - x[d + i] for i in range(d))


def relative_interior_point(p: PolyhedronH) -> Vec:
    """A point satisfying every non-implicit inequality strictly.

    Strict rows must be satisfiable; raises EmptyPolyhedronError otherwise.
    Iteratively detects implicit equalities, then maximizes the common slack
    (capped at 1) and polishes with an L1 objective for reproducibility.
    """
    ineq = [r for r in p.rows if r.rel != EQ]
    eqs = [r for r in p.rows if r.rel == EQ]
    while True:
        test = PolyhedronH.make(p.dim, tuple(HRow(r.a, r.b, LT) for r in ineq) + tuple(eqs))
        w = feasible(test)
        if w is not None:
            break
        # find rows that cannot be strict; they are implicit equalities
        weak = PolyhedronH.make(p.dim, tuple(HRow(r.a, r.b, LE) for r in ineq) + tuple(eqs))
        if is_empty(weak):
            raise EmptyPolyhedronError("empty polyhedron has no relative interior point")
        moved = False
        still = []
        for r in ineq:
            status, value, _ = max_linear(weak, vscale(-1, r.a))
            if status == _lp.OPTIMAL and value == -r.b:
                if r.rel == LT:
                    raise EmptyPolyhedronError("a strict row is an implicit equality")
                eqs.append(HRow(r.a, r.b, EQ))
                moved = True
            else:
                still.append(r)
        ineq = still
        if not moved:
            # cannot happen for a consistent weak system (convex averaging)
            raise EmptyPolyhedronError("no common slack and no implicit equalities")
    # pin the slack at its (capped) maximum, then polish
    d = p.dim
    if ineq:
        A = [tuple(r.a) + (ONE,) for r in ineq]
        B = [r.b for r in ineq]
        A.append(zero_vec(d) + (ONE,))
        B.append(ONE)
        A.append(zero_vec(d) + (-ONE,))
        B.append(ZERO)
        AE = [tuple(r.a) + (ZERO,) for r in eqs]
        BE = [r.b for r in eqs]
        status, x, eps = _lp.solve_lp(zero_vec(d) + (ONE,), A, B, AE, BE)
        assert status == _lp.OPTIMAL
        pinned = PolyhedronH.make(d, tuple(HRow(r.a, r.b - eps, LE) for r in ineq) + tuple(eqs))
    else:
        pinned = PolyhedronH.make(d, tuple(eqs))
    return _l1_polish(pinned)


def nice_ray(c: ConeH) -> Vec:
    """relative_interior_point canonicalized to a primitive integer vector."""
    pt = relative_interior_point(c)
    return primitive(pt)


# ---------------------------------------------------------------------------
# recession cone

def recession_cone(p: PolyhedronH) -> ConeH:
    """Homogenized rows with strictness dropped; rec(empty) = {0}."""
    if is_empty(PolyhedronH.make(p.dim, p.rows)):
        return origin_cone(p.dim)
    return ConeH.make(p.dim, tuple(
        HRow(r.a, ZERO, LE if r.rel != EQ else EQ) for r in p.rows))


def cone_over(p: PolyhedronH, height_first: bool = True) -> ConeH:
    """Closed cone over {1} x p in Q^(1+dim): a.x <= b becomes a.x - b*r <= 0, r >= 0."""
    if p.has_strict():
        raise ValueError("cone_over expects a closed description")
    rows = []
    for r in p.rows:
        rows.append(HRow((-r.b,) + tuple(r.a), ZERO, r.rel))
    rows.append(HRow((-ONE,) + zero_vec(p.dim), ZERO, LE))
    return ConeH.make(p.dim + 1, tuple(rows))


# ---------------------------------------------------------------------------
# V-representation (desk scale)

def _implicit_equality_normals(c: PolyhedronH) -> list[Vec]:
    # a.x <= b is implicit iff min a.x == b, i.e. max (-a).x == -b
    normals = [r.a for r in c.rows if r.rel == EQ]
    for r in c.rows:
        if r.rel == EQ:
            continue
        status, value, _ = max_linear(c, vscale(-1, r.a))
        if status == _lp.OPTIMAL and value == -r.b:
            normals.append(r.a)
    return normals


@lru_cache(maxsize=None)
def cone_generators(c: ConeH):
    """(lineality_basis, extreme_rays) generating c = span(lineality) + cone(rays)."""
    if c.has_strict():
        raise ValueError("generator enumeration needs a closed cone")
    d = c.dim
    all_normals = [r.a for r in c.rows]
    lin = nullspace_basis(all_normals, d)
    span_normals = _implicit_equality_normals(c)
    span = nullspace_basis(span_normals, d)
    s = len(span)
    if s == len(lin):
        return tuple(neg_primitive_pair(v) for v in lin), ()
    # complement W of the lineality inside the span: reduce span basis mod lin
    comp = []
    for v in span:
        red = reduce_mod_span(v, lin + comp)
        if not is_zero_vec(red):
            comp.append(red)
    t = len(comp)  # dim of the pointed part
    ineq = []
    for r in c.rows:
        if r.rel == EQ:
            continue
        restricted = tuple(dot(r.a, w) for w in comp)
        if not is_zero_vec(restricted):
            ineq.append(restricted)
    rays_t = set()
    if t == 1:
        candidates = [(ONE,), (-ONE,)]
    else:
        candidates = []
        for subset in itertools.combinations(range(len(ineq)), t - 1):
            sub = [ineq[i] for i in subset]
            if rank_of(sub) != t - 1:
                continue
            ns = nullspace_basis(sub, t)
            if len(ns) != 1:
                continue
            candidates.append(ns[0])
            candidates.append(vscale(-1, ns[0]))
    for cand in candidates:
        if is_zero_vec(cand):
            continue
        vals = [dot(a, cand) for a in ineq]
        if any(v > 0 for v in vals):
            continue
        tight = [ineq[i] for i, v in enumerate(vals) if v == 0]
        if t > 1 and rank_of(tight) != t - 1:
            continue
        rays_t.add(primitive(cand))
    rays = set()
    for rt in rays_t:
        x = zero_vec(d)
        for coef, w in zip(rt, comp):
            x = vadd(x, vscale(coef, w))
        # canonical representative modulo lineality for stable identity
        rays.add(primitive(reduce_mod_span(x, lin)))
    lin_canon = tuple(sorted(neg_primitive_pair(v) for v in lin))
    return lin_canon, tuple(sorted(rays))


def generators(c: ConeH) -> tuple:
    """Generating vectors: extreme rays plus +-(lineality basis), canonically sorted."""
    lin, rays = cone_generators(c)
    gens = set(rays)
    for v in lin:
        gens.add(primitive(v))
        gens.add(primitive(vscale(-1, v)))
    return tuple(sorted(gens))


def rays_from_hrep(c: ConeH) -> tuple:
    return generators(c)


def cone_dim(c: ConeH) -> int:
    lin, rays = cone_generators(c)
    return rank_of(list(lin) + list(rays))


def cone_key(c: ConeH):
    """Canonical identity of a cone as a set of points."""
    return (c.dim, generators(c))


def hrep_from_rays(gens: Sequence[Sequence], dim: int) -> ConeH:
    """H-representation of cone(gens) (lineality allowed via opposite pairs)."""
    gens = [vec(g) for g in gens]
    gens = [g for g in gens if not is_zero_vec(g)]
    if not gens:
        return origin_cone(dim)
    # dual cone {a : <a, g> <= 0} has the g's as its inequality normals
    dual = ConeH.make(dim, tuple(HRow(g, ZERO, LE) for g in gens))
    lin, rays = cone_generators(dual)
    rows = [HRow(r, ZERO, LE) for r in rays]
    rows += [HRow(v, ZERO, EQ) for v in lin]
    return ConeH.make(dim, tuple(rows))


def is_subset(p: PolyhedronH, q: PolyhedronH) -> bool:
    """Exact containment p (with strict rows honored) inside q."""
    if feasible(p) is None:
        return True
    for r in q.rows:
        status, value, _ = max_linear(p, r.a)
        if r.rel in (LE, LT):
            if status == _lp.UNBOUNDED:
                return False
            if value > r.b or (r.rel == LT and value == r.b and _attains(p, r)):
                return False
        else:
            for a in (r.a, vscale(-1, r.a)):
                status, value, _ = max_linear(p, a)
                bb = r.b if a is r.a else -r.b
                if status == _lp.UNBOUNDED or value > bb:
                    return False
    return True


def _attains(p: PolyhedronH, r: HRow) -> bool:
    return feasible(p.with_rows((HRow(r.a, r.b, EQ),))) is not None


def is_face(f: ConeH, c: ConeH) -> bool:
    """f is a face of c: f <= c and some valid functional vanishes exactly on f."""
    gf = generators(f)
    gc = generators(c)
    if not all(c.contains(g) for g in gf):
        return False
    if cone_key(f) == cone_key(c):
        return True
    lin_f, _ = cone_generators(f)
    span_f = list(lin_f) + list(gf)
    outside = [g for g in gc if not f.contains(g)]
    if not outside:
        return cone_key(f) == cone_key(c)
    d = c.dim
    a_eq = [g for g in gf]
    b_eq = [ZERO] * len(a_eq)
    a_ub = [g for g in outside]
    b_ub = [-ONE] * len(outside)
    lam = _lp.lp_feasible_point(a_ub, b_ub, a_eq, b_eq, d)
    return lam is not None


@lru_cache(maxsize=None)
def faces_of(c: ConeH) -> tuple:
    """All faces of c (including c and its minimal face)."""
    seen = {}
    work = [c]
    seen[cone_key(c)] = c
    while work:
        cur = work.pop()
        for r in cur.rows:
            if r.rel == EQ:
                continue
            face = ConeH.make(cur.dim, cur.rows + (HRow(r.a, ZERO, EQ),))
            if feasible(face) is None:
                continue
            key = cone_key(face)
            if key not in seen:
                seen[key] = face
                work.append(face)
    return tuple(sorted(seen.values(), key=lambda f: (cone_dim(f), cone_key(f))))


# ---------------------------------------------------------------------------
# fans

@dataclass(frozen=True)
class Fan:
    dim: int
    cones: tuple

    @staticmethod
    def make(dim: int, cones: Iterable[ConeH], close_faces: bool = False) -> "Fan":
        out = {}
        for c in cones:
            if feasible(c) is None:
                continue
            members = faces_of(c) if close_faces else (c,)
            for m in members:
                out.setdefault(cone_key(m), m)
        ordered = tuple(sorted(out.values(), key=lambda f: (cone_dim(f), cone_key(f))))
        return Fan(dim, ordered)


def fan_violations(fan: Fan) -> list[str]:
    """Check face closure and that pairwise intersections are faces of both."""
    keys = {cone_key(c) for c in fan.cones}
    out = []
    for c in fan.cones:
        for f in faces_of(c):
            if cone_key(f) not in keys:
                out.append("missing face of a member cone")
    for c1, c2 in itertools.combinations(fan.cones, 2):
        inter = intersect(c1, c2)
        if feasible(inter) is None:
            out.append("members with empty intersection (no common origin?)")
            continue
        if not (is_face(inter, c1) and is_face(inter, c2)):
            out.append("pairwise intersection is not a common face")
    return out


def common_refinement(fans: Sequence[Fan]) -> Fan:
    if not fans:
        raise ValueError("need at least one fan")
    dim = fans[0].dim
    for f in fans:
        if f.dim != dim:
            raise DimensionMismatchError("fans in different ambient spaces")
    cells = list(fans[0].cones)
    for f in fans[1:]:
        nxt = {}
        for a in cells:
            for b in f.cones:
                c = intersect(a, b)
                if feasible(c) is not None:
                    nxt.setdefault(cone_key(c), c)
        cells = list(nxt.values())
    return Fan.make(dim, cells)


# ---------------------------------------------------------------------------
# region difference over unions

def poly_in_union(p: PolyhedronH, parts: Sequence[PolyhedronH]) -> bool:
    """Exact test p subseteq union(parts); all inputs may carry strict rows."""
    if feasible(p) is None:
        return True
    for q in parts:
        if is_subset(p, q):
            return True
    if not parts:
        return False
    q = parts[0]
    rest = list(parts[1:])
    # p \ q = union over rows of q of the strict violation pieces
    pieces = []
    prefix: list[HRow] = []
    for r in q.rows:
        if r.rel == EQ:
            viol = [HRow(r.a, r.b, LT), HRow(vscale(-1, r.a), -r.b, LT)]
            keep = HRow(r.a, r.b, EQ)
        elif r.rel == LE:
            viol = [HRow(vscale(-1, r.a), -r.b, LT)]
            keep = r
        else:
            viol = [HRow(vscale(-1, r.a), -r.b, LE)]
            keep = r
        for v in viol:
            pieces.append(p.with_rows(tuple(prefix) + (v,)))
        prefix.append(keep)
    return all(poly_in_union(piece, rest) for piece in pieces)


def covers_equal(a: Sequence[PolyhedronH], b: Sequence[PolyhedronH]) -> bool:
    return (all(poly_in_union(p, b) for p in a)
            and all(poly_in_union(q, a) for q in b))


# ---------------------------------------------------------------------------
# flags of cones

@dataclass(frozen=True)
class FlagOfCones:
    """Nested cones C_0 <= ... <= C_k in R_{>=0} x (N_R / tau), dim C_i = i+1.

    Rays are (1+n)-vectors (height first); tau_rays are n-vectors spanning tau.
    """

    ambient_dim: int  # 1 + n
    tau_rays: tuple
    cones_rays: tuple  # tuple of tuples of rays

    def cone(self, i: int) -> ConeH:
        return hrep_from_rays(self.cones_rays[i], self.ambient_dim)

    def cones(self):
        return [self.cone(i) for i in range(len(self.cones_rays))]

    def length(self) -> int:
        return len(self.cones_rays)


def make_flag(ambient_dim, tau_rays, cones_rays) -> FlagOfCones:
    return FlagOfCones(ambient_dim,
                       tuple(sorted(primitive(r) for r in tau_rays)),
                       tuple(tuple(sorted(primitive(r) for r in rays))
                             for rays in cones_rays))


def validate_flag(flag: FlagOfCones) -> list[str]:
    """Flag invariants; each violation reported distinctly."""
    out = []
    n = flag.ambient_dim - 1
    span_tau, _ = rref(flag.tau_rays) if flag.tau_rays else ([], [])
    prev = None
    for i, rays in enumerate(flag.cones_rays):
        c = flag.cone(i)
        d = cone_dim(c)
        if d != i + 1:
            out.append("dimension: cone %d has dim %d, expected %d" % (i, d, i + 1))
        if len(rays) != d:
            out.append("simplicial: cone %d has %d rays for dim %d" % (i, len(rays), d))
        for rr in rays:
            if rr[0] < 0:
                out.append("stratum: cone %d ray has negative height" % i)
            space = rr[1:]
            if span_tau and reduce_mod_span(space, span_tau) != vec(space):
                out.append("stratum: cone %d ray not a canonical representative mod tau" % i)
        if prev is not None and not is_face(prev, c):
            out.append("nesting: cone %d is not a face of cone %d" % (i - 1, i))
        prev = c
    return out
