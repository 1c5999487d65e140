"""Initial-form stability, iterated-initial-form regions, and resolution of
boundary primes to trivial-ideal-kernel primes.

The resolution replaces the generic-epsilon argument of the existence proof by
one exact feasibility system per dense-stratum cell (partial sums of the flag
rows, strictly positive combination coefficients, a direction through the
relative interior of tau), followed by exact verification of the produced
matrix.  A feasible cell whose matrix fails verification is skipped; running
out of cells is reported as a bug indicator, not masked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import polyhedra
from ._linalg import (ONE, ZERO, Vec, dot, frac, primitive, vec, vscale,
                      vsub, zero_vec)
from .polyhedra import (EQ, LE, LT, ConeH, EmptyPolyhedronError, FlagOfCones,
                        HRow, PolyhedronH, feasible, relative_interior_point)
from .trop_core import (COEFF_B, ExtPoint, Face, ToricContext, TropPoly,
                        ZeroPolynomialError)
from .congruence import (CongruencePresentation, PrimeMatrix, congruence_in_prime,
                         flag_to_matrix, has_trivial_ideal_kernel,
                         initial_form_point, monomial_le)
from .toric_geom import _perp_basis, _relint_tau_rows
from .variety import (FiniteBasisRequiredError, VarietySupport, flag_in_variety,
                      shrink_flag, stratum_cone, support_of,
                      _sample_monomial_pairs)


# ---------------------------------------------------------------------------
# initial-form stability

@dataclass(frozen=True)
class StabilityData:
    deleted: tuple   # Xi: term vectors (a_u, u) absent from init_v(f)
    margins: tuple   # V_m = f~(v) - <m, v> > 0, aligned with deleted


def _pairing(w: ExtPoint, v: Vec):
    """<(a,u), w> for the term vector v = (a, u...); None when dead."""
    return w.pair(v[0], v[1:]).log


def init_stability(f: TropPoly, v: ExtPoint, w: ExtPoint):
    """Threshold N0 with init_{w + N v}(f) = init_w(init_v(f)) for all N > N0.

    v and w must lie in the same stratum; returns (N0, StabilityData).
    """
    if v.tau != w.tau:
        raise ValueError("v and w must lie in the same stratum")
    if f.is_zero():
        raise ZeroPolynomialError("stability of the zero polynomial")
    init_v = initial_form_point(f, v)
    init_support = set(init_v.support())
    fv = f.evaluate(v).log
    deleted, margins = [], []
    for u, a in f.terms:
        if u in init_support:
            continue
        mv = w.pair(a, u)  # same stratum: dead at v iff dead at w
        pv = v.pair(a, u)
        if pv.is_bottom():
            continue  # dies on the stratum; harmless at w + N v as well
        deleted.append((a,) + vec(u))
        margins.append(fv - pv.log)
    n0 = ZERO
    base = init_v.evaluate(w).log
    for m, margin in zip(deleted, margins):
        bm = _pairing(w, m)
        if bm is None:
            continue
        if base is None:
            raise ValueError("initial form dies at w while a deleted term survives")
        bound = -(base - bm) / margin
        n0 = max(n0, bound)
    return n0, StabilityData(tuple(deleted), tuple(margins))


def shifted_point(w: ExtPoint, v: ExtPoint, N) -> ExtPoint:
    N = frac(N)
    return ExtPoint.make(w.context, w.r + N * v.r, w.tau,
                         tuple(a + N * b for a, b in zip(w.coords, v.coords)))


def iterated_init_region(polys: Sequence[TropPoly], xis: Sequence[ExtPoint]) -> PolyhedronH:
    """Polyhedron Q in (N_1..N_k)-space whose interior makes the iterated initial
    forms at xi_0, .., xi_k equal the single-point initial form at
    xi_0 + N_1 xi_1 + ... + N_k xi_k, for every given polynomial."""
    k = len(xis) - 1
    if k < 0:
        raise ValueError("need at least xi_0")

    # recursive construction mirroring the existence proof
    def region(fs, depth):
        """Rows over (N_1..N_depth); also returns h-chains h_{i,j} for j=0..depth."""
        if depth == 0:
            return [], [[fi] for fi in fs]
        gs = [initial_form_point(fi, xis[depth]) for fi in fs]
        sub_rows, sub_chains = region(gs, depth - 1)
        out_rows = list(sub_rows)
        chains = []
        for fi, gi, chain in zip(fs, gs, sub_chains):
            chain = list(chain) + [fi]  # h_{i,0}, ..., h_{i,depth}
            chains.append(chain)
            fv = fi.evaluate(xis[depth]).log
            init_support = set(gi.support())
            for u, a in fi.terms:
                if u in init_support:
                    continue
                pv = xis[depth].pair(a, u)
                if pv.is_bottom():
                    continue
                margin = fv - pv.log
                m = (a,) + vec(u)
                # N_depth * margin >= -( (h0(xi0)-<m,xi0>) + sum_j N_j (hj(xij)-<m,xij>) )
                coeffs = [ZERO] * k
                coeffs[depth - 1] = -margin
                const = ZERO
                dead = False
                for j in range(depth):
                    hj = chain[j]
                    val = hj.evaluate(xis[j]).log
                    bm = _pairing(xis[j], m)
                    if bm is None:
                        dead = True
                        break
                    gap = val - bm
                    if j == 0:
                        const += gap
                    else:
                        coeffs[j - 1] -= gap
                if dead:
                    continue
                out_rows.append(HRow(tuple(coeffs), const, LE))
        return out_rows, chains

    rows, _ = region(list(polys), k)
    return PolyhedronH.make(k, tuple(rows))


def region_interior_point(Q: PolyhedronH) -> Vec:
    return relative_interior_point(Q)


# ---------------------------------------------------------------------------
# resolution

@dataclass(frozen=True)
class ResolutionResult:
    matrix: PrimeMatrix
    cone: ConeH
    v: Vec
    v_hats: tuple
    b: tuple
    w_hats: tuple
    refinement_samples: int


@dataclass(frozen=True)
class ResolveFailure:
    reason: str  # no_flag_in_variety | closure_hypothesis_violated | no_feasible_cone
    detail: str


NO_FLAG = "no_flag_in_variety"
CLOSURE_VIOLATED = "closure_hypothesis_violated"
NO_FEASIBLE_CONE = "no_feasible_cone"


def _flag_from_matrix(context: ToricContext, theta: PrimeMatrix) -> FlagOfCones:
    pts = [vec((r,) + tuple(x)) for r, x in theta.rows]
    pts = [p for p in pts if any(x != 0 for x in p)]  # a zero row orders nothing
    if not pts:
        if context.coeff != COEFF_B:
            raise ValueError("matrix has no nonzero rows; it defines no flag")
        # over B the height coordinate is inert, so the height ray is equivalent
        pts = [vec((ONE,) + zero_vec(context.rank))]
    cones = []
    acc = []
    for p in pts:
        acc.append(p)
        cones.append(tuple(acc))
    return polyhedra.make_flag(context.rank + 1, theta.tau.rays, cones)


def verify_closure_hypothesis(V: VarietySupport) -> Optional[str]:
    """Every boundary cell must be reachable from some dense cell (preimage of
    its generators nonempty and a height-0 direction through rel.int tau)."""
    ctx = V.context
    n = ctx.rank
    dense = V.stratum(ctx.dense_face).cells
    for sup in V.strata:
        tau = sup.tau
        if tau.dim() == 0:
            continue
        for cell in sup.cells:
            gens = polyhedra.generators(cell)
            ok = False
            for L in dense:
                if not _cell_reaches(ctx, L, tau, gens):
                    continue
                ok = True
                break
            if not ok:
                return ("boundary cell in stratum with rays %r is not a limit of "
                        "the dense part" % (tau.rays,))
    return None


def _cell_reaches(ctx, L: ConeH, tau: Face, target_gens) -> bool:
    n = ctx.rank
    perp = _perp_basis(tau, n)
    for g in target_gens:
        rows = [HRow((ONE,) + zero_vec(n), g[0], EQ)]
        for c in perp:
            rows.append(HRow((ZERO,) + tuple(c), dot(c, g[1:]), EQ))
        if feasible(L.with_rows(tuple(rows))) is None:
            return False
    vsys = L.with_rows(tuple(_relint_tau_rows(tau, n, height_prefix=True)))
    try:
        relative_interior_point(vsys)
    except EmptyPolyhedronError:
        return False
    return True


def resolve_boundary_prime(E: CongruencePresentation,
                           P: Union[PrimeMatrix, FlagOfCones],
                           sample_degree: int = 6,
                           samples: int = 500,
                           seed: int = 0):
    """Produce a trivial-ideal-kernel prime Q with E <= Q <= P (the latter sampled).

    Follows the constructive existence argument: pick a flag for P inside the
    support of E, then solve one feasibility system per dense cell in the
    unknowns (V-hat_i, b_i, v) with partial-sum projection constraints."""
    if not E.finite_tropical_basis:
        raise FiniteBasisRequiredError("resolution needs a declared finite tropical basis")
    ctx = E.context
    if isinstance(P, FlagOfCones):
        theta = flag_to_matrix(ctx, P)
        flag = P
    else:
        theta = P
        flag = _flag_from_matrix(ctx, P)
    if has_trivial_ideal_kernel(theta):
        return ResolutionResult(theta, stratum_cone(ctx, ctx.dense_face),
                                (), (), (), tuple((r,) + x for r, x in theta.rows), 0)
    if not congruence_in_prime(E, theta):
        return ResolveFailure(NO_FLAG, "E is not contained in P")
    V = support_of(E)
    bad = verify_closure_hypothesis(V)
    if bad is not None:
        return ResolveFailure(CLOSURE_VIOLATED, bad)
    if not flag_in_variety(ctx, flag, V):
        flag = shrink_flag(ctx, flag, E, seed=seed)
        if not flag_in_variety(ctx, flag, V):
            return ResolveFailure(NO_FLAG, "no flag for P inside the support")
    theta_flag = flag_to_matrix(ctx, flag)
    w_rows = [vec((r,) + tuple(x)) for r, x in theta_flag.rows]
    tau = theta_flag.tau
    n = ctx.rank
    k = len(w_rows) - 1
    dense = V.stratum(ctx.dense_face).cells
    rng = random.Random(seed)
    tried = []
    for L in dense:
        sol = _resolution_system(ctx, L, tau, w_rows)
        if sol is None:
            tried.append("infeasible")
            continue
        v, v_hats, bs = sol
        w_hats = [v_hats[0]]
        for i in range(1, k + 1):
            w_hats.append(vscale(ONE / bs[i - 1], vsub(v_hats[i], v_hats[i - 1])))
        rows = [(v[0], v[1:])] + [(wh[0], wh[1:]) for wh in w_hats]
        Q = PrimeMatrix.make(ctx, ctx.dense_face, rows)
        if not has_trivial_ideal_kernel(Q):
            tried.append("kernel")
            continue
        if not congruence_in_prime(E, Q):
            tried.append("containment")
            continue
        ok, checked = _sampled_refinement(ctx, Q, theta, rng, samples, sample_degree)
        if not ok:
            tried.append("refinement")
            continue
        return ResolutionResult(Q, L, v, tuple(v_hats), tuple(bs), tuple(w_hats), checked)
    return ResolveFailure(NO_FEASIBLE_CONE,
                          "no dense cell admits a verified system (tried: %s)" % tried)


def _resolution_system(ctx, L: ConeH, tau: Face, w_rows):
    """Feasibility in unknowns (V0..Vk in L, b_1..b_k > 0, v in L cap {0} x rel.int tau).

    pi_tau(V_i) = w_0 + sum_{j<=i} b_j w_j; returns (v, (V_i,), (b_j,)) or None."""
    n = ctx.rank
    k = len(w_rows) - 1
    d = 1 + n
    nvars = (k + 1) * d + k + d  # V-hats, b's, v
    off_v = (k + 1) * d + k

    def embed(row_vec, block):
        out = [ZERO] * nvars
        for t, val in enumerate(row_vec):
            out[block * d + t] = val
        return tuple(out)

    rows = []
    for i in range(k + 1):
        for r in L.rows:
            rows.append(HRow(embed(r.a, i), ZERO, r.rel))
    for r in L.rows:
        out = [ZERO] * nvars
        for t, val in enumerate(r.a):
            out[off_v + t] = val
        rows.append(HRow(tuple(out), ZERO, r.rel))
    # v: height zero and rel.int tau
    for r in _relint_tau_rows(tau, n, height_prefix=True):
        out = [ZERO] * nvars
        for t, val in enumerate(r.a):
            out[off_v + t] = val
        rows.append(HRow(tuple(out), r.b, r.rel))
    # b_j > 0
    for j in range(k):
        out = [ZERO] * nvars
        out[(k + 1) * d + j] = -ONE
        rows.append(HRow(tuple(out), ZERO, LT))
    # projection constraints: height exactly, coords modulo span(tau)
    perp = _perp_basis(tau, n)
    for i in range(k + 1):
        out = [ZERO] * nvars
        out[i * d + 0] = ONE
        for j in range(1, i + 1):
            out[(k + 1) * d + (j - 1)] -= w_rows[j][0]
        rows.append(HRow(tuple(out), w_rows[0][0], EQ))
        for c in perp:
            out = [ZERO] * nvars
            for t in range(n):
                out[i * d + 1 + t] = c[t]
            for j in range(1, i + 1):
                out[(k + 1) * d + (j - 1)] -= dot(c, w_rows[j][1:])
            rows.append(HRow(tuple(out), dot(c, w_rows[0][1:]), EQ))
    system = PolyhedronH.make(nvars, tuple(rows))
    if feasible(system) is None:
        return None
    x = relative_interior_point(system)
    v_hats = [vec(x[i * d:(i + 1) * d]) for i in range(k + 1)]
    bs = [x[(k + 1) * d + j] for j in range(k)]
    v = primitive(vec(x[off_v:off_v + d]))
    return v, v_hats, bs


def _sampled_refinement(ctx, Q: PrimeMatrix, P: PrimeMatrix, rng, samples, degree):
    """m1 <=_Q m2 implies m1 <=_P m2 on random monomials (both directions, so
    Q-equivalence implies P-equivalence as well)."""
    checked = 0
    for m1, m2 in _sample_monomial_pairs(ctx, rng, samples, degree):
        checked += 1
        for a, b in ((m1, m2), (m2, m1)):
            if monomial_le(Q, a, b) and not monomial_le(P, a, b):
                return False, checked
    return True, checked


# ---------------------------------------------------------------------------
# cancellativity harness

@dataclass(frozen=True)
class CancellativityReport:
    trials: int
    products_equal: int
    violations: tuple


def cancellativity_harness(E: CongruencePresentation, trials: int = 200,
                           max_degree: int = 3, seed: int = 0) -> CancellativityReport:
    """Random (g, f1, f2): whenever g*f1 = g*f2 as functions on the support and g
    is not identically bottom there, f1 = f2 must follow."""
    from .variety import functions_equal_on_variety
    if not E.finite_tropical_basis:
        raise FiniteBasisRequiredError("harness needs a declared finite tropical basis")
    V = support_of(E)
    bad = verify_closure_hypothesis(V)
    if bad is not None:
        raise ValueError("closure hypothesis fails: " + bad)
    ctx = E.context
    rng = random.Random(seed)
    products_equal = 0
    violations = []
    done = 0
    while done < trials:
        g = _random_poly(ctx, rng, max_degree)
        f1 = _random_poly(ctx, rng, max_degree)
        f2 = _random_poly(ctx, rng, max_degree)
        if g.is_zero() or not _nonzero_on_support(g, V):
            continue
        done += 1
        if functions_equal_on_variety(g * f1, g * f2, V):
            products_equal += 1
            if not functions_equal_on_variety(f1, f2, V):
                violations.append((str(g), str(f1), str(f2)))
    return CancellativityReport(done, products_equal, tuple(violations))


def _nonzero_on_support(g: TropPoly, V: VarietySupport) -> bool:
    for sup in V.strata:
        if not sup.cells:
            continue
        if not g.restrict(sup.tau).is_zero():
            return True
    return False


def _random_poly(ctx, rng, max_degree: int, max_terms: int = 3) -> TropPoly:
    n = ctx.rank
    lo = -max_degree if ctx.is_torus() else 0
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        u = tuple(rng.randint(lo, max_degree) for _ in range(n))
        a = ZERO if ctx.coeff == COEFF_B else Fraction(rng.randint(-3, 3))
        terms[u] = max(terms.get(u, a), a)
    return TropPoly.make(ctx, terms)
