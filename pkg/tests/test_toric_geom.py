from fractions import Fraction as F

import pytest

from tropcong.polyhedra import Fan, PolyhedronH, cone_over, hrep_from_rays, row
from tropcong.toric_geom import (CLAIM_DIRECTION, CLAIM_PREIMAGE, ClosureWitness,
                                 NotInClosure, StratumPoint, cone_closure_witnesses,
                                 limit_approach_check, polyhedron_closure_membership,
                                 project_to_stratum, witness_soundness)
from tropcong.trop_core import ExtPoint


def sigma_fan(ctx):
    return Fan.make(ctx.rank, [ctx.sigma], close_faces=True)


# ---------------------------------------------------------------------------
# projections

def test_project_dense_identity(ctx2):
    p = project_to_stratum(ctx2, (3, -2), ctx2.dense_face)
    assert p.coords == (F(3), F(-2))


def test_project_deep_unique(ctx2):
    a = project_to_stratum(ctx2, (5, 7), ctx2.deep_face)
    b = project_to_stratum(ctx2, (-1, 0), ctx2.deep_face)
    assert a == b and a.coords == (F(0), F(0))


def test_project_ray_quotient(ctx2):
    tau = ctx2.face_from_rays([(-1, 0)])
    p = project_to_stratum(ctx2, (5, -1), tau)
    assert p.coords == (F(0), F(-1))
    assert p.pair((0, 1)) == F(-1)
    assert p.pair((1, 0)) is None  # u outside tau-perp


# ---------------------------------------------------------------------------
# cone closure witnesses

def test_cone_closure_height_one_cell(ctx2):
    # closed cone over {x = y+1, y <= 0}; target the deep point at height 1
    L = cone_over(PolyhedronH.make(2, (row([1, -1], 1, "="), row([0, 1], 0, "<="))))
    target = ExtPoint.make(ctx2, 1, ctx2.deep_face, (0, 0))
    res = cone_closure_witnesses(ctx2, L, ctx2.deep_face, [target])
    assert not isinstance(res, NotInClosure)
    v, hats = res
    assert v == (F(0), F(-1), F(-1))
    assert hats[0] == (F(1), F(0), F(-1))


def test_cone_closure_direction_missing(ctx2):
    # L = R_{>=0} x {0}^2 has no height-0 ray into rel.int(tau); the target
    # class (second coordinate 0) does lie over L, so only claim 3 fails
    L = hrep_from_rays([(1, 0, 0)], 3)
    tau = ctx2.face_from_rays([(-1, 0)])
    target = ExtPoint.make(ctx2, 1, tau, (7, 0))
    res = cone_closure_witnesses(ctx2, L, tau, [target])
    assert isinstance(res, NotInClosure)
    assert res.failed_claims == (CLAIM_DIRECTION,)


def test_cone_closure_dense_degenerate(ctx2):
    L = hrep_from_rays([(1, 1, 0), (1, 0, 1), (0, -1, -1)], 3)
    tau = ctx2.dense_face
    w = ExtPoint.dense(ctx2, 1, (1, 0))
    res = cone_closure_witnesses(ctx2, L, tau, [w])
    assert not isinstance(res, NotInClosure)
    v, hats = res
    assert v == (F(0), F(0), F(0))  # rel.int of the zero face is the origin
    assert hats[0] == w.full_vector()


# ---------------------------------------------------------------------------
# polyhedron closure membership

def test_polyhedron_closure_reference_cell(ctx2):
    L = PolyhedronH.make(2, (row([1, -1], 1, "="), row([0, 1], 0, "<=")))
    w = StratumPoint.make(ctx2, ctx2.deep_face, (0, 0))
    res = polyhedron_closure_membership(ctx2, L, sigma_fan(ctx2), w)
    assert isinstance(res, ClosureWitness)
    assert res.base == (F(0), F(-1))
    assert res.direction == (F(-1), F(-1))
    assert witness_soundness(ctx2, ctx2.deep_face, res.direction, res.base, w)
    assert limit_approach_check(ctx2, ctx2.deep_face, res.direction, res.base, w)


def test_polyhedron_closure_line_misses_deep(ctx2):
    L = PolyhedronH.make(2, (row([1, 1], 0, "="),))
    w = StratumPoint.make(ctx2, ctx2.deep_face, (0, 0))
    res = polyhedron_closure_membership(ctx2, L, sigma_fan(ctx2), w)
    assert isinstance(res, NotInClosure)
    assert res.failed_claims == (CLAIM_DIRECTION,)


def test_polyhedron_closure_single_point(ctx2):
    L = PolyhedronH.make(2, (row([1, 0], 2, "="), row([0, 1], 3, "=")))
    for rays in ([(-1, 0)], [(0, -1)], [(-1, 0), (0, -1)]):
        tau = ctx2.face_from_rays(rays)
        w = StratumPoint.make(ctx2, tau, (2, 3))
        res = polyhedron_closure_membership(ctx2, L, sigma_fan(ctx2), w)
        assert isinstance(res, NotInClosure)
        assert CLAIM_DIRECTION in res.failed_claims


def test_polyhedron_closure_wrong_class(ctx2):
    L = PolyhedronH.make(2, (row([1, 0], 1, "="), row([0, 1], 0, "<=")))
    tau = ctx2.face_from_rays([(0, -1)])
    res = polyhedron_closure_membership(ctx2, L, sigma_fan(ctx2),
                                        StratumPoint.make(ctx2, tau, (5, 0)))
    assert isinstance(res, NotInClosure)
    assert res.failed_claims == (CLAIM_PREIMAGE,)


def test_polyhedron_closure_dense_point_is_plain_membership(ctx2):
    L = PolyhedronH.make(2, (row([0, 1], 0, "<"),))
    inside = polyhedron_closure_membership(ctx2, L, sigma_fan(ctx2),
                                           StratumPoint.make(ctx2, ctx2.dense_face, (3, 0)))
    assert isinstance(inside, ClosureWitness)
    assert inside.base == (F(3), F(0)) and inside.direction == (F(0), F(0))
    outside = polyhedron_closure_membership(ctx2, L, sigma_fan(ctx2),
                                            StratumPoint.make(ctx2, ctx2.dense_face, (0, 1)))
    assert isinstance(outside, NotInClosure)


def test_limit_check_exact_coordinates(ctx2):
    # pairings at w_hat + N v: dead generator strictly decreasing, alive one constant
    tau = ctx2.face_from_rays([(-1, 0)])
    w = StratumPoint.make(ctx2, tau, (0, -1))
    v = (F(-1), F(0))
    w_hat = (F(7), F(-1))
    assert witness_soundness(ctx2, tau, v, w_hat, w)
    assert limit_approach_check(ctx2, tau, v, w_hat, w)
    # a direction that keeps the dead coordinate finite must fail soundness
    assert not witness_soundness(ctx2, tau, (F(0), F(0)), w_hat, w)
