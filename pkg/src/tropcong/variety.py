"""Extended congruence varieties as unions of rational cones per stratum.

Cells live in R^{1+n} coordinates (height first), constrained to the canonical
representative subspace of their stratum, so every cell is a Gamma-admissible
H-cone.  Pointwise evaluation of the basis pairs stays authoritative; the cell
data is an index and any disagreement raises InternalConsistencyError.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import polyhedra
from ._linalg import (ONE, ZERO, Vec, dot, is_zero_vec, neg_primitive_pair,
                      primitive, vec, vsub, zero_vec)
from .polyhedra import (EQ, LE, ConeH, FlagOfCones, HRow, feasible, intersect,
                        validate_flag)
from .trop_core import (ContextMismatchError, ExtPoint, Face, ToricContext,
                        TropPoly, bend_relations)
from .congruence import (CongruencePresentation, PrimeMatrix, congruence_in_prime,
                         flag_to_matrix, initial_form_prime, monomial_le)


class InternalConsistencyError(RuntimeError):
    pass


class FiniteBasisRequiredError(ValueError):
    pass


class DenominatorVanishesError(ValueError):
    pass


# ---------------------------------------------------------------------------
# stratum scaffolding

def stratum_cone(context: ToricContext, tau: Face) -> ConeH:
    """R_{>=0} x N_R/tau in (1+n)-coordinates: height >= 0, pivot coords pinned."""
    n = context.rank
    rows = [HRow((-ONE,) + zero_vec(n), ZERO, LE)]
    for p in tau.pivots:
        e = [ZERO] * (n + 1)
        e[1 + p] = ONE
        rows.append(HRow(tuple(e), ZERO, EQ))
    return ConeH.make(n + 1, tuple(rows))


def term_vec(u, a) -> Vec:
    return (a,) + vec(u)


def _difference_rows(m: Vec, others: Iterable[Vec], rel=LE):
    """Rows <other - m, w> <= 0, i.e. m dominates the others."""
    return tuple(HRow(vsub(o, m), ZERO, rel) for o in others if o != m)


# ---------------------------------------------------------------------------
# per-pair agreement cells

def pair_variety(pair, tau: Face) -> list:
    """Cells covering {w in R_{>=0} x N_R/tau : f(w) = g(w)} for one pair."""
    f, g = pair
    ctx = f.context
    if g.context != ctx:
        raise ContextMismatchError("pair members from different contexts")
    base = stratum_cone(ctx, tau)
    fr = f.restrict(tau)
    gr = g.restrict(tau)
    if fr.is_zero() and gr.is_zero():
        return [base]
    if fr.is_zero() or gr.is_zero():
        return []
    fvs = [term_vec(u, a) for u, a in fr.terms]
    gvs = [term_vec(u, a) for u, a in gr.terms]
    cells = []
    for mv in fvs:
        for uv in gvs:
            rows = _difference_rows(mv, fvs) + _difference_rows(uv, gvs)
            rows += (HRow(vsub(mv, uv), ZERO, EQ),)
            cell = base.with_rows(rows)
            if feasible(cell) is not None:
                cells.append(cell)
    return _dedupe_absorb(cells)


def _cone_inside(c: ConeH, d: ConeH) -> bool:
    """Exact containment of cones via generators of c against rows of d."""
    return all(d.contains(g) for g in polyhedra.generators(c))


def _dedupe_absorb(cells: Sequence[ConeH]) -> list:
    """Drop duplicates and cells contained in another cell (small inputs only)."""
    uniq = []
    seen = set()
    for c in cells:
        key = polyhedra.cone_key(c)
        if key not in seen:
            seen.add(key)
            uniq.append(c)
    if len(uniq) > 80:
        return uniq
    keep = []
    for i, c in enumerate(uniq):
        absorbed = any(j != i and _cone_inside(c, d)
                       and not (_cone_inside(d, c) and j > i)
                       for j, d in enumerate(uniq))
        if not absorbed:
            keep.append(c)
    return keep


# ---------------------------------------------------------------------------
# variety supports

@dataclass(frozen=True)
class StratumSupport:
    tau: Face
    cells: tuple


@dataclass(frozen=True)
class VarietySupport:
    context: ToricContext
    pairs: tuple
    strata: tuple  # tuple of StratumSupport, one per face of sigma

    def stratum(self, tau: Face) -> StratumSupport:
        for s in self.strata:
            if s.tau == tau:
                return s
        raise ValueError("stratum not represented in this support")

    def all_cells(self):
        return [(s.tau, c) for s in self.strata for c in s.cells]


_SUPPORT_CACHE: dict = {}


def support_of(E: CongruencePresentation) -> VarietySupport:
    """variety_of_basis with memoization (presentations are immutable)."""
    if E not in _SUPPORT_CACHE:
        _SUPPORT_CACHE[E] = variety_of_basis(E)
    return _SUPPORT_CACHE[E]


def variety_of_basis(E: CongruencePresentation,
                     strata: Optional[Sequence[Face]] = None) -> VarietySupport:
    """Selected Gamma-admissible cells per stratum for the basis pairs of E."""
    ctx = E.context
    faces = tuple(strata) if strata is not None else ctx.faces
    out = []
    for tau in faces:
        cells = [stratum_cone(ctx, tau)]
        for pair in E.pairs:
            pcells = pair_variety(pair, tau)
            nxt = []
            seen = set()
            for c in cells:
                for d in pcells:
                    cell = intersect(c, d)
                    if feasible(cell) is None:
                        continue
                    key = polyhedra.cone_key(cell)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(cell)
            cells = nxt
            if not cells:
                break
        out.append(StratumSupport(tau, tuple(_dedupe_absorb(cells))))
    return VarietySupport(ctx, E.pairs, tuple(out))


def hypersurface(f: TropPoly, strata: Optional[Sequence[Face]] = None) -> VarietySupport:
    """Support of the bend congruence of f: max attained twice, or all terms dead."""
    ctx = f.context
    faces = tuple(strata) if strata is not None else ctx.faces
    pairs = tuple(bend_relations(f))
    out = []
    for tau in faces:
        base = stratum_cone(ctx, tau)
        fr = f.restrict(tau)
        tvs = [term_vec(u, a) for u, a in fr.terms]
        if len(tvs) == 0:
            cells = [base]
        elif len(tvs) == 1:
            cells = []
        else:
            cells = []
            for i, j in itertools.combinations(range(len(tvs)), 2):
                rows = _difference_rows(tvs[i], tvs) + (HRow(vsub(tvs[i], tvs[j]), ZERO, EQ),)
                cell = base.with_rows(rows)
                if feasible(cell) is not None:
                    cells.append(cell)
            cells = _dedupe_absorb(cells)
        out.append(StratumSupport(tau, tuple(cells)))
    return VarietySupport(ctx, pairs, tuple(out))


def intersect_supports(supports: Sequence[VarietySupport]) -> VarietySupport:
    """Support of the union of the pair sets: per-stratum pairwise intersections.

    Only strata represented in every input are intersected."""
    ctx = supports[0].context
    pairs = tuple(p for s in supports for p in s.pairs)
    common = [tau for tau in ctx.faces
              if all(any(s.tau == tau for s in sup.strata) for sup in supports)]
    out = []
    for tau in common:
        cells = list(supports[0].stratum(tau).cells)
        for s in supports[1:]:
            nxt = []
            seen = set()
            for c in cells:
                for d in s.stratum(tau).cells:
                    cell = intersect(c, d)
                    if feasible(cell) is None:
                        continue
                    key = polyhedra.cone_key(cell)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(cell)
            cells = nxt
            if not cells:
                break
        out.append(StratumSupport(tau, tuple(_dedupe_absorb(cells))))
    return VarietySupport(ctx, pairs, tuple(out))


# ---------------------------------------------------------------------------
# membership

def _point_from_vector(ctx: ToricContext, tau: Face, w: Vec) -> ExtPoint:
    return ExtPoint.make(ctx, w[0], tau, w[1:])


def point_in_variety(V: VarietySupport, w: ExtPoint) -> bool:
    """Pointwise evaluation of all pairs (authoritative), cross-checked on cells."""
    pointwise = all(f.evaluate(w) == g.evaluate(w) for f, g in V.pairs)
    try:
        sup = V.stratum(w.tau)
    except ValueError:
        return pointwise  # stratum filtered out of this support; nothing to check
    full = w.full_vector()
    indexed = any(c.contains(full) for c in sup.cells)
    if indexed != pointwise:
        raise InternalConsistencyError(
            "cell index disagrees with pointwise evaluation at %r" % (full,))
    return pointwise


# ---------------------------------------------------------------------------
# piecewise-linear equality on cells
#
# The refinement of a single cone against the linearity arrangement keeps
# generator lists and performs double-description steps, so after the one
# (cached) generator computation per cell everything is LP-free.

def _linearity_forms(polys: Sequence[TropPoly], tau: Face) -> list:
    """Hyperplane normals separating maximizer regions of the given polynomials."""
    forms = set()
    for p in polys:
        tvs = [term_vec(u, a) for u, a in p.restrict(tau).terms]
        for v1, v2 in itertools.combinations(tvs, 2):
            d = neg_primitive_pair(vsub(v1, v2))
            if not is_zero_vec(d):
                forms.add(d)
    return sorted(forms)


def _cross_forms(pairs, tau: Face) -> list:
    forms = set()
    for f, g in pairs:
        fv = [term_vec(u, a) for u, a in f.restrict(tau).terms]
        gv = [term_vec(u, a) for u, a in g.restrict(tau).terms]
        for v1 in fv:
            for v2 in gv:
                d = neg_primitive_pair(vsub(v1, v2))
                if not is_zero_vec(d):
                    forms.add(d)
    return sorted(forms)


def split_generators_by_forms(gens: Sequence[Vec], forms: Sequence[Vec]) -> list:
    """Refine cone(gens) by hyperplanes; returns generator lists of the pieces.

    One double-description step per cutting hyperplane; redundant generators may
    appear but sign tests and relative-interior sampling stay exact."""
    pieces = [tuple(gens)]
    for h in forms:
        nxt = []
        for G in pieces:
            vals = [dot(h, g) for g in G]
            has_pos = any(v > 0 for v in vals)
            has_neg = any(v < 0 for v in vals)
            if not (has_pos and has_neg):
                nxt.append(G)
                continue
            pos = [g for g, v in zip(G, vals) if v > 0]
            neg = [g for g, v in zip(G, vals) if v < 0]
            zero = [g for g, v in zip(G, vals) if v == 0]
            mids = set()
            for gp in pos:
                vp = dot(h, gp)
                for gn in neg:
                    vn = dot(h, gn)
                    w = tuple(vp * b - vn * a for a, b in zip(gp, gn))
                    if not is_zero_vec(w):
                        mids.add(primitive(w))
            mids = sorted(mids)
            nxt.append(tuple(dict.fromkeys(pos + zero + mids)))
            nxt.append(tuple(dict.fromkeys(neg + zero + mids)))
        pieces = nxt
    return pieces


def _gen_rank(gens) -> int:
    from ._linalg import rank_of
    return rank_of(list(gens))


def _relint_sample(gens) -> Vec:
    total = gens[0]
    for g in gens[1:]:
        total = tuple(a + b for a, b in zip(total, g))
    return total


def _maximizer_at(p: TropPoly, tau: Face, w: Vec) -> Optional[Vec]:
    """Term vector of p maximizing at the point w = (r, x); None when p dies."""
    pr = p.restrict(tau)
    if pr.is_zero():
        return None
    tvs = [term_vec(u, a) for u, a in pr.terms]
    vals = [dot(v, w) for v in tvs]
    return tvs[max(range(len(tvs)), key=lambda i: vals[i])]


def _cell_sample_points(cell: ConeH) -> list:
    gens = polyhedra.generators(cell)
    if not gens:
        return [zero_vec(cell.dim)]
    pts = [_relint_sample(gens)]
    pts.extend(gens)
    for g1, g2 in itertools.combinations(gens, 2):
        pts.append(tuple(a + b for a, b in zip(g1, g2)))
    return pts


def _quick_counterexample(f: TropPoly, g: TropPoly, tau: Face, cell: ConeH) -> bool:
    """Cheap sound disproof of equality: evaluation at sample points of the cell."""
    ctx = f.context
    for w in _cell_sample_points(cell):
        p = _point_from_vector(ctx, tau, w)
        if f.evaluate(p) != g.evaluate(p):
            return True
    return False


def _functions_equal_on_cell(f: TropPoly, g: TropPoly, tau: Face, cell: ConeH) -> bool:
    if _quick_counterexample(f, g, tau, cell):
        return False
    forms = sorted(set(_linearity_forms([f, g], tau)) | set(_cross_forms([(f, g)], tau)))
    gens = polyhedra.generators(cell)
    if not gens:  # the cell is the origin; sampling above already decided it
        return True
    for piece in split_generators_by_forms(gens, forms):
        w = _relint_sample(piece)
        mf = _maximizer_at(f, tau, w)
        mg = _maximizer_at(g, tau, w)
        if (mf is None) != (mg is None):
            return False
        if mf is None:
            continue
        d = vsub(mf, mg)
        if any(dot(d, gen) != 0 for gen in piece):
            return False
    return True


def functions_equal_on_variety(f: TropPoly, g: TropPoly, V: VarietySupport) -> bool:
    """Equality of the induced piecewise-linear functions on every cell of V."""
    for tau, cell in V.all_cells():
        if not _functions_equal_on_cell(f, g, tau, cell):
            return False
    return True


def radical_member(E: CongruencePresentation, pair) -> bool:
    """(f, g) in sqrt(E) via agreement on the support; needs the finite-basis flag."""
    if not E.finite_tropical_basis:
        raise FiniteBasisRequiredError(
            "radical membership needs a declared finite tropical basis")
    f, g = pair
    return functions_equal_on_variety(f, g, support_of(E))


def fractions_equal_on_variety(num_den1, num_den2, V: VarietySupport) -> bool:
    """f1/g1 = f2/g2 on V via cross multiplication; denominators must not vanish."""
    f1, g1 = num_den1
    f2, g2 = num_den2
    for den in (g1, g2):
        for tau, cell in V.all_cells():
            if den.restrict(tau).is_zero():
                raise DenominatorVanishesError(
                    "denominator is identically bottom on a cell's stratum")
    return functions_equal_on_variety(f1 * g2, f2 * g1, V)


# ---------------------------------------------------------------------------
# flags against varieties

def _stratum_forms(V: VarietySupport, tau: Face) -> list:
    sides = [p for pr in V.pairs for p in pr]
    return sorted(set(_linearity_forms(sides, tau)) | set(_cross_forms(V.pairs, tau)))


def flag_in_variety(context: ToricContext, flag: FlagOfCones, V: VarietySupport) -> bool:
    """Every flag cone refined against the arrangement; pieces tested pointwise."""
    bad = validate_flag(flag)
    if bad:
        raise ValueError("invalid flag: " + "; ".join(bad))
    tau = context.face_from_rays(flag.tau_rays) if flag.tau_rays else context.dense_face
    try:
        V.stratum(tau)
    except ValueError:
        raise ValueError("flag stratum not represented in the support")
    forms = _stratum_forms(V, tau)
    for i in range(flag.length()):
        rays = flag.cones_rays[i]
        cdim = _gen_rank(rays)
        for piece in split_generators_by_forms(rays, forms):
            if _gen_rank(piece) != cdim:
                continue
            w = _point_from_vector(context, tau, _relint_sample(piece))
            if not point_in_variety(V, w):
                return False
    return True


# ---------------------------------------------------------------------------
# shrinking a flag into the variety

def shrink_flag(context: ToricContext, flag: FlagOfCones, E: CongruencePresentation,
                sample_pairs: int = 50, seed: int = 0) -> FlagOfCones:
    """Cut the flag by the leading-term domination cone of each generator pair.

    Requires E contained in the flag's prime; the output defines the same prime
    (checked on sampled monomials) and lies inside V~(E).
    """
    import random as _random
    theta = flag_to_matrix(context, flag)
    if not congruence_in_prime(E, theta):
        raise ValueError("E is not contained in the prime of the flag")
    n = context.rank
    rows = []
    for f, g in E.pairs:
        mf = _leading_term_vec(f, theta)
        mg = _leading_term_vec(g, theta)
        if mf is None or mg is None:
            if mf is None and mg is None:
                continue
            raise InternalConsistencyError("one side dead, yet the pair is in the prime")
        for p, vcs in ((f, mf), (g, mg)):
            tvs = [term_vec(u, a) for u, a in p.restrict(theta.tau).terms]
            rows.extend(_difference_rows(vcs, tvs))
        rows.append(HRow(vsub(mf, mg), ZERO, EQ))
    new_cones = []
    for i in range(flag.length()):
        c = flag.cone(i).with_rows(tuple(rows))
        if polyhedra.cone_dim(c) != i + 1:
            raise InternalConsistencyError(
                "dimension dropped while shrinking; the cut should be a neighborhood")
        new_cones.append(polyhedra.generators(c))
    out = polyhedra.make_flag(flag.ambient_dim, flag.tau_rays, new_cones)
    bad = validate_flag(out)
    if bad:
        raise InternalConsistencyError("shrunk flag invalid: " + "; ".join(bad))
    theta2 = flag_to_matrix(context, out)
    rng = _random.Random(seed)
    for m1, m2 in _sample_monomial_pairs(context, rng, sample_pairs, 6):
        if monomial_le(theta, m1, m2) != monomial_le(theta2, m1, m2):
            raise InternalConsistencyError("shrunk flag changed the induced order")
    return out


def _leading_term_vec(p: TropPoly, theta: PrimeMatrix) -> Optional[Vec]:
    pr = p.restrict(theta.tau)
    if pr.is_zero():
        return None
    lead = initial_form_prime(p, theta)
    u, a = lead.terms[0]
    return term_vec(u, a)


def _sample_monomial_pairs(context: ToricContext, rng, count: int, degree: int):
    out = []
    n = context.rank
    lo = -degree if context.is_torus() else 0
    for _ in range(count):
        pair = []
        for _ in range(2):
            u = tuple(rng.randint(lo, degree) for _ in range(n))
            a = ZERO if context.coeff == "B" else Fraction(rng.randint(-4, 4))
            pair.append(TropPoly.make(context, {u: a}))
        out.append(tuple(pair))
    return out


# ---------------------------------------------------------------------------
# slices for classical and Boolean varieties

def slice_at_height(V: VarietySupport, tau: Face, r) -> list:
    """Cells of the tau stratum sliced at height r, as polyhedra in x-space."""
    from ._linalg import frac
    r = frac(r)
    sup = V.stratum(tau)
    out = []
    for c in sup.cells:
        rows = []
        for rw in c.rows:
            a_r, a_x = rw.a[0], rw.a[1:]
            rows.append(HRow(vec(a_x), rw.b - a_r * r, rw.rel))
        p = polyhedra.PolyhedronH.make(V.context.rank, tuple(rows))
        if feasible(p) is not None:
            out.append(p)
    return out
