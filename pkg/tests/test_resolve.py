import random
from fractions import Fraction as F

import pytest

from tropcong.congruence import (CongruencePresentation, PrimeMatrix,
                                 congruence_in_prime, has_trivial_ideal_kernel,
                                 initial_form_point, monomial_le)
from tropcong.polyhedra import relative_interior_point
from tropcong.resolve import (CLOSURE_VIOLATED, NO_FLAG,
                              ResolutionResult, ResolveFailure,
                              cancellativity_harness, init_stability,
                              iterated_init_region, resolve_boundary_prime,
                              shifted_point, verify_closure_hypothesis)
from tropcong.trop_core import ExtPoint, ToricContext, TropPoly, parse_poly
from tropcong.variety import functions_equal_on_variety, variety_of_basis, support_of


# ---------------------------------------------------------------------------
# initial-form stability

def test_stability_monomial(ctx2):
    m = parse_poly(ctx2, "t^2*x*y")
    v = ExtPoint.dense(ctx2, 0, (1, 1))
    w = ExtPoint.dense(ctx2, 1, (0, 0))
    n0, data = init_stability(m, v, w)
    assert n0 == 0 and data.deleted == ()


def test_stability_one_plus_x():
    ctx = ToricContext.torus(1)
    f = parse_poly(ctx, "1 + x")
    v = ExtPoint.dense(ctx, 0, (1,))
    w = ExtPoint.dense(ctx, 1, (0,))
    n0, data = init_stability(f, v, w)
    # direct formula: Xi = {(0;0)} with margin 1; N0 = -(0-0)/1 = 0
    assert n0 == 0
    assert data.deleted == ((F(0), F(0)),) and data.margins == (F(1),)
    at1 = initial_form_point(f, shifted_point(w, v, 1))
    assert at1 == parse_poly(ctx, "x")


def test_stability_quartic(ctx2, quartic, quartic_Q):
    v = ExtPoint.dense(ctx2, 0, (-1, -1))
    w = ExtPoint.dense(ctx2, 1, (0, -1))
    n0, _ = init_stability(quartic, v, w)
    iterated = initial_form_point(initial_form_point(quartic, v), w)
    assert iterated == parse_poly(ctx2, "x^2 + t^1*x*y")
    assert initial_form_point(quartic, shifted_point(w, v, n0 + 1)) == iterated


def _random_poly_1d2(rng, ctx):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        u = (rng.randint(0, 5), rng.randint(0, 5))
        terms[u] = F(rng.randint(-5, 5))
    return TropPoly.make(ctx, terms)


def test_stability_property_sampled(ctx2):
    rng = random.Random(19)
    hits = 0
    for _ in range(200):
        f = _random_poly_1d2(rng, ctx2)
        v = ExtPoint.dense(ctx2, rng.randint(0, 2),
                           (rng.randint(-5, 5), rng.randint(-5, 5)))
        w = ExtPoint.dense(ctx2, rng.randint(0, 2),
                           (rng.randint(-5, 5), rng.randint(-5, 5)))
        n0, data = init_stability(f, v, w)
        iterated = initial_form_point(initial_form_point(f, v), w)
        assert initial_form_point(f, shifted_point(w, v, n0 + 1)) == iterated
        if data.deleted and n0 > 0:
            hits += 1
            below = initial_form_point(f, shifted_point(w, v, max(n0 - 1, 0)))
            # tightness is sampled, not asserted universally
    assert hits > 5


def test_stability_stratum_mismatch(ctx2, quartic):
    v = ExtPoint.make(ctx2, 0, ctx2.deep_face, (0, 0))
    w = ExtPoint.dense(ctx2, 1, (0, 0))
    with pytest.raises(ValueError):
        init_stability(quartic, v, w)


# ---------------------------------------------------------------------------
# iterated initial-form regions

def test_region_base_case_halfline():
    ctx = ToricContext.torus(1)
    f = parse_poly(ctx, "1 + x")
    xi0 = ExtPoint.dense(ctx, 1, (0,))
    xi1 = ExtPoint.dense(ctx, 0, (1,))
    Q = iterated_init_region([f], [xi0, xi1])
    assert Q.dim == 1
    n = relative_interior_point(Q)[0] + 1
    assert initial_form_point(f, shifted_point(xi0, xi1, n)) == \
        initial_form_point(initial_form_point(f, xi1), xi0)


def test_region_quartic_pair(ctx2, quartic):
    g = quartic.delete_term((2, 2))
    xi0 = ExtPoint.dense(ctx2, 1, (0, -1))
    xi1 = ExtPoint.dense(ctx2, 0, (-1, -1))
    Q = iterated_init_region([quartic, g], [xi0, xi1])
    n = relative_interior_point(Q)[0] + 1
    for p in (quartic, g):
        assert initial_form_point(p, shifted_point(xi0, xi1, n)) == \
            initial_form_point(initial_form_point(p, xi1), xi0)


def test_region_zero_vectors_whole_space(ctx2, quartic):
    origin = ExtPoint.dense(ctx2, 0, (0, 0))
    xi0 = ExtPoint.dense(ctx2, 1, (2, 3))
    Q = iterated_init_region([quartic], [xi0, origin, origin])
    assert Q.rows == ()  # all of R^2


# ---------------------------------------------------------------------------
# resolution

def _check_resolution(E, P, res, seed=5):
    assert isinstance(res, ResolutionResult)
    Q = res.matrix
    assert has_trivial_ideal_kernel(Q)
    assert congruence_in_prime(E, Q)
    rng = random.Random(seed)
    ctx = E.context
    for _ in range(300):
        u1 = tuple(rng.randint(0, 6) for _ in range(ctx.rank))
        u2 = tuple(rng.randint(0, 6) for _ in range(ctx.rank))
        a1 = F(0) if ctx.coeff == "B" else F(rng.randint(-4, 4))
        a2 = F(0) if ctx.coeff == "B" else F(rng.randint(-4, 4))
        m1 = TropPoly.make(ctx, {u1: a1})
        m2 = TropPoly.make(ctx, {u2: a2})
        if monomial_le(Q, m1, m2):
            assert monomial_le(P, m1, m2)
        if monomial_le(Q, m2, m1):
            assert monomial_le(P, m2, m1)


def test_resolve_quartic(ctx2, quartic_E, quartic_P):
    res = resolve_boundary_prime(quartic_E, quartic_P, samples=200)
    _check_resolution(quartic_E, quartic_P, res)
    assert res.v[0] == 0 and res.v[1] < 0 and res.v[2] < 0
    # the witnesses reconstruct the matrix rows
    assert res.matrix.rows[0] == (res.v[0], res.v[1:])
    assert res.matrix.rows[1] == (res.w_hats[0][0], res.w_hats[0][1:])


def test_resolve_already_trivial(ctx2, quartic_E, quartic_Q):
    res = resolve_boundary_prime(quartic_E, quartic_Q)
    assert isinstance(res, ResolutionResult)
    assert res.matrix == quartic_Q


def test_resolve_boolean_cubic(ctxB, boolean_E):
    P = PrimeMatrix.from_extended_matrix(ctxB, [[None, None, None]])
    res = resolve_boundary_prime(boolean_E, P, samples=200)
    _check_resolution(boolean_E, P, res)


def test_resolve_not_containing(ctx2, quartic_E):
    # boundary prime that does not contain E: stratum ray(-e1), one row
    tau = ctx2.face_from_rays([(-1, 0)])
    P = PrimeMatrix.make(ctx2, tau, [(F(1), (F(0), F(2)))])
    assert not congruence_in_prime(quartic_E, P)
    res = resolve_boundary_prime(quartic_E, P)
    assert isinstance(res, ResolveFailure) and res.reason == NO_FLAG


def test_resolve_closure_hypothesis_violated(ctx1):
    # E = <(t^1 x, x)>: the dense part of the support is {r = 0} but the whole
    # deep ray survives, so boundary heights are not limits of the dense part
    f = parse_poly(ctx1, "t^1*x")
    g = parse_poly(ctx1, "x")
    E = CongruencePresentation.make(ctx1, [(f, g)], finite_tropical_basis=True)
    P = PrimeMatrix.from_extended_matrix(ctx1, [["1", None]])
    assert congruence_in_prime(E, P)
    res = resolve_boundary_prime(E, P)
    assert isinstance(res, ResolveFailure) and res.reason == CLOSURE_VIOLATED
    assert verify_closure_hypothesis(support_of(E)) is not None


# ---------------------------------------------------------------------------
# cancellativity harness

def test_cancellativity_quartic(quartic_E):
    report = cancellativity_harness(quartic_E, trials=60, max_degree=3, seed=7)
    assert report.trials == 60
    assert report.violations == ()


def test_cancellativity_unit_multiplier(ctx2, quartic_E):
    V = support_of(quartic_E)
    one = parse_poly(ctx2, "1")
    f = parse_poly(ctx2, "x + t^1*y")
    assert functions_equal_on_variety(one * f, one * f, V)


def test_cancellativity_adversarial_torus():
    # g = x + y, f1 = x, f2 = y on the full torus: the products differ somewhere,
    # so no cancellation assertion ever fires
    ctx = ToricContext.torus(2)
    E = CongruencePresentation.make(ctx, (), finite_tropical_basis=True)
    V = variety_of_basis(E)
    g = parse_poly(ctx, "x + y")
    f1, f2 = parse_poly(ctx, "x"), parse_poly(ctx, "y")
    assert not functions_equal_on_variety(g * f1, g * f2, V)


def test_resolve_rank_two_boundary_prime(ctx2):
    # a rank-2 prime on the stratum where y dies; the resolution system now
    # carries a genuine partial sum with b_1 > 0
    from tropcong.polyhedra import make_flag
    from tropcong.congruence import flag_to_matrix
    f = parse_poly(ctx2, "1 + x + y")
    g = parse_poly(ctx2, "1 + t^1*x + t^1*y")
    E = CongruencePresentation.make(ctx2, [(f, g)], finite_tropical_basis=True)
    flag = make_flag(3, [(0, -1)], [[(1, -1, 0)], [(1, -1, 0), (0, -1, 0)]])
    P = flag_to_matrix(ctx2, flag)
    assert P.tau.dim() == 1 and P.rank() == 2
    assert congruence_in_prime(E, P)
    res = resolve_boundary_prime(E, flag, samples=200)
    _check_resolution(E, P, res)
    assert res.matrix.rank() == 3
    assert len(res.b) == 1 and res.b[0] > 0
    # witnesses reconstruct the rows: w_hat_i = (V_i - V_{i-1}) / b_i
    assert res.w_hats[0] == res.v_hats[0]
    diff = tuple((a - b) / res.b[0] for a, b in zip(res.v_hats[1], res.v_hats[0]))
    assert res.w_hats[1] == diff
    # matrix input goes through the same pipeline
    res2 = resolve_boundary_prime(E, P, samples=200)
    _check_resolution(E, P, res2)
