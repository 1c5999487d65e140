"""JSON encoding and decoding for every value the tool reads or emits.

Rationals travel as strings "p/q" (or "p"); bottom is "-inf"; exponents and
ray entries are integers.  Top-level documents carry "format": "tropcong/1".
Decoders raise ParseError with a JSON-path position.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from ._linalg import Vec, frac, vec
from .polyhedra import (EQ, LE, LT, ConeH, Fan, FlagOfCones, HRow, PolyhedronH,
                        make_flag)
from .trop_core import COEFF_B, COEFF_T, ExtPoint, ToricContext, TropPoly
from .toric_geom import StratumPoint
from .congruence import (AddBoth, CongruencePresentation, Derivation, Generator,
                         MulMono, PrimeMatrix, RadicalCertificate, Refl, Sym,
                         Trans)
from .variety import VarietySupport

FORMAT_TAG = "tropcong/1"


class ParseError(ValueError):
    def __init__(self, message: str, path: str):
        super().__init__("%s (at %s)" % (message, path))
        self.path = path


def _get(data, key, path, required=True, default=None):
    if not isinstance(data, dict):
        raise ParseError("expected an object", path)
    if key not in data:
        if required:
            raise ParseError("missing key %r" % key, path)
        return default
    return data[key]


# --- rationals --------------------------------------------------------------

def enc_frac(x: Fraction) -> str:
    return str(x)


def dec_frac(s, path: str) -> Fraction:
    if isinstance(s, bool):
        raise ParseError("expected a rational", path)
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError("expected a rational string", path)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("malformed rational %r: %s" % (s, exc), path)


def dec_extframc(s, path: str) -> Optional[Fraction]:
    if s == "-inf":
        return None
    return dec_frac(s, path)


def enc_vec_int(v) -> list:
    return [int(x) for x in v]


def enc_vec(v) -> list:
    return [enc_frac(x) for x in v]


def dec_vec(data, path: str) -> Vec:
    if not isinstance(data, list):
        raise ParseError("expected a list", path)
    return tuple(dec_frac(x, "%s[%d]" % (path, i)) for i, x in enumerate(data))


# --- context ----------------------------------------------------------------

def enc_context(ctx: ToricContext) -> dict:
    return {"rank": ctx.rank,
            "sigma_rays": [enc_vec_int(r) for r in ctx.sigma_rays],
            "coeff": ctx.coeff}


def dec_context(data, path: str = "$.context", max_dim: Optional[int] = None) -> ToricContext:
    rank = _get(data, "rank", path)
    if not isinstance(rank, int) or rank <= 0:
        raise ParseError("rank must be a positive integer", path + ".rank")
    if max_dim is not None and rank > max_dim:
        raise ParseError("rank %d exceeds the ambient-dimension cap %d" % (rank, max_dim),
                         path + ".rank")
    rays = [dec_vec(r, "%s.sigma_rays[%d]" % (path, i))
            for i, r in enumerate(_get(data, "sigma_rays", path))]
    coeff = _get(data, "coeff", path, required=False, default=COEFF_T)
    if coeff not in (COEFF_T, COEFF_B):
        raise ParseError("coeff must be 'T' or 'B'", path + ".coeff")
    try:
        return ToricContext(rank, rays, coeff)
    except ValueError as exc:
        raise ParseError(str(exc), path)


# --- polynomials ------------------------------------------------------------

def enc_poly(f: TropPoly, with_context: bool = True) -> dict:
    out = {"terms": [{"coeff": enc_frac(a), "exp": enc_vec_int(u)} for u, a in f.terms]}
    if with_context:
        out["context"] = enc_context(f.context)
    return out


def dec_poly(data, ctx: ToricContext, path: str = "$") -> TropPoly:
    terms = {}
    for i, t in enumerate(_get(data, "terms", path)):
        tpath = "%s.terms[%d]" % (path, i)
        u = _get(t, "exp", tpath)
        if not isinstance(u, list) or any(not isinstance(x, int) for x in u):
            raise ParseError("exponent must be a list of integers", tpath + ".exp")
        a = dec_frac(_get(t, "coeff", tpath), tpath + ".coeff")
        key = tuple(u)
        terms[key] = max(terms.get(key, a), a)
    try:
        return TropPoly.make(ctx, terms)
    except ValueError as exc:
        raise ParseError(str(exc), path)


def enc_pair(pair) -> dict:
    f, g = pair
    return {"context": enc_context(f.context),
            "lhs": enc_poly(f, with_context=False),
            "rhs": enc_poly(g, with_context=False)}


def dec_pair(data, ctx: ToricContext, path: str = "$"):
    return (dec_poly(_get(data, "lhs", path), ctx, path + ".lhs"),
            dec_poly(_get(data, "rhs", path), ctx, path + ".rhs"))


def enc_congruence(E: CongruencePresentation) -> dict:
    return {"context": enc_context(E.context),
            "pairs": [{"lhs": enc_poly(f, False), "rhs": enc_poly(g, False)}
                      for f, g in E.pairs],
            "finite_basis": E.finite_tropical_basis}


def dec_congruence(data, ctx: ToricContext, path: str = "$") -> CongruencePresentation:
    pairs = [dec_pair(p, ctx, "%s.pairs[%d]" % (path, i))
             for i, p in enumerate(_get(data, "pairs", path))]
    fb = _get(data, "finite_basis", path, required=False, default=False)
    return CongruencePresentation.make(ctx, pairs, bool(fb))


# --- geometry ---------------------------------------------------------------

def enc_polyhedron(p: PolyhedronH) -> dict:
    return {"dim": p.dim,
            "rows": [{"a": enc_vec(r.a), "b": enc_frac(r.b), "rel": r.rel}
                     for r in p.rows]}


def dec_polyhedron(data, path: str = "$", cone: bool = False) -> PolyhedronH:
    dim = _get(data, "dim", path)
    if not isinstance(dim, int) or dim <= 0:
        raise ParseError("dim must be a positive integer", path + ".dim")
    rows = []
    for i, r in enumerate(_get(data, "rows", path, required=False, default=[])):
        rpath = "%s.rows[%d]" % (path, i)
        a = dec_vec(_get(r, "a", rpath), rpath + ".a")
        if len(a) != dim:
            raise ParseError("row length %d != dim %d" % (len(a), dim), rpath + ".a")
        b = dec_frac(_get(r, "b", rpath), rpath + ".b")
        rel = _get(r, "rel", rpath)
        if rel not in (LE, LT, EQ):
            raise ParseError("rel must be one of <=, <, =", rpath + ".rel")
        rows.append(HRow(a, b, rel))
    try:
        return (ConeH if cone else PolyhedronH).make(dim, tuple(rows))
    except ValueError as exc:
        raise ParseError(str(exc), path)


def dec_cone(data, path: str = "$", default_dim: Optional[int] = None) -> ConeH:
    if isinstance(data, dict) and "rays" in data and "rows" not in data:
        rays = [dec_vec(r, "%s.rays[%d]" % (path, i))
                for i, r in enumerate(data["rays"])]
        dim = _get(data, "dim", path, required=False,
                   default=len(rays[0]) if rays else default_dim)
        if dim is None:
            raise ParseError("cone needs rays or a dim", path)
        from .polyhedra import hrep_from_rays
        return hrep_from_rays(rays, dim)
    return dec_polyhedron(data, path, cone=True)


def enc_fan(fan: Fan) -> dict:
    from .polyhedra import generators
    return {"dim": fan.dim,
            "cones": [{"rays": [enc_vec_int(r) for r in generators(c)]}
                      for c in fan.cones]}


def dec_fan(data, path: str = "$", close_faces: bool = True) -> Fan:
    dim = _get(data, "dim", path)
    cones = [dec_cone(c, "%s.cones[%d]" % (path, i), default_dim=dim)
             for i, c in enumerate(_get(data, "cones", path))]
    return Fan.make(dim, cones, close_faces=close_faces)


def enc_flag(flag: FlagOfCones) -> dict:
    return {"ambient_dim": flag.ambient_dim,
            "tau_rays": [enc_vec_int(r) for r in flag.tau_rays],
            "cones": [{"rays": [enc_vec_int(r) for r in rays]}
                      for rays in flag.cones_rays]}


def dec_flag(data, path: str = "$") -> FlagOfCones:
    tau_rays = [dec_vec(r, "%s.tau_rays[%d]" % (path, i))
                for i, r in enumerate(_get(data, "tau_rays", path, required=False, default=[]))]
    cones = []
    for i, c in enumerate(_get(data, "cones", path)):
        cpath = "%s.cones[%d]" % (path, i)
        cones.append([dec_vec(r, "%s.rays[%d]" % (cpath, j))
                      for j, r in enumerate(_get(c, "rays", cpath))])
    ambient = _get(data, "ambient_dim", path, required=False,
                   default=len(cones[0][0]) if cones and cones[0] else None)
    if ambient is None:
        raise ParseError("flag needs ambient_dim or at least one ray", path)
    return make_flag(ambient, tau_rays, cones)


# --- prime matrices ---------------------------------------------------------

def enc_matrix(theta: PrimeMatrix) -> dict:
    ctx = theta.context
    out = {"context": enc_context(ctx)}
    if ctx.is_affine_preset() or ctx.is_torus():
        dead = set()
        for i in range(ctx.rank):
            e = [0] * ctx.rank
            e[i] = 1
            if not theta.tau.perp_contains(vec(e)):
                dead.add(i)
        matrix = []
        for r, x in theta.rows:
            body = [enc_frac(x[i]) if i not in dead else "-inf" for i in range(ctx.rank)]
            matrix.append(body if ctx.coeff == COEFF_B else [enc_frac(r)] + body)
        out["matrix"] = matrix
        return out
    out["tau_rays"] = [enc_vec_int(r) for r in theta.tau.rays]
    out["rows"] = [{"r": enc_frac(r), "x": enc_vec(x)} for r, x in theta.rows]
    return out


def dec_matrix(data, ctx: ToricContext, path: str = "$") -> PrimeMatrix:
    try:
        if "matrix" in data:
            entries = []
            for i, raw in enumerate(data["matrix"]):
                rpath = "%s.matrix[%d]" % (path, i)
                entries.append([dec_extframc(x, "%s[%d]" % (rpath, j))
                                for j, x in enumerate(raw)])
            return PrimeMatrix.from_extended_matrix(ctx, entries)
        tau_rays = [dec_vec(r, "%s.tau_rays[%d]" % (path, i))
                    for i, r in enumerate(_get(data, "tau_rays", path, required=False,
                                               default=[]))]
        tau = ctx.face_from_rays(tau_rays) if tau_rays else ctx.dense_face
        rows = []
        for i, r in enumerate(_get(data, "rows", path)):
            rpath = "%s.rows[%d]" % (path, i)
            rows.append((dec_frac(_get(r, "r", rpath), rpath + ".r"),
                         dec_vec(_get(r, "x", rpath), rpath + ".x")))
        return PrimeMatrix.make(ctx, tau, rows)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), path)


# --- points -----------------------------------------------------------------

def enc_ext_point(w: ExtPoint) -> dict:
    return {"context": enc_context(w.context),
            "r": enc_frac(w.r),
            "tau_rays": [enc_vec_int(r) for r in w.tau.rays],
            "x": enc_vec(w.coords)}


def dec_ext_point(data, ctx: ToricContext, path: str = "$") -> ExtPoint:
    r = dec_frac(_get(data, "r", path), path + ".r")
    tau_rays = [dec_vec(t, "%s.tau_rays[%d]" % (path, i))
                for i, t in enumerate(_get(data, "tau_rays", path, required=False,
                                           default=[]))]
    try:
        tau = ctx.face_from_rays(tau_rays) if tau_rays else ctx.dense_face
        return ExtPoint.make(ctx, r, tau, dec_vec(_get(data, "x", path), path + ".x"))
    except ValueError as exc:
        raise ParseError(str(exc), path)


def enc_stratum_point(w: StratumPoint) -> dict:
    return {"context": enc_context(w.context),
            "tau_rays": [enc_vec_int(r) for r in w.tau.rays],
            "x": enc_vec(w.coords)}


def dec_stratum_point(data, ctx: ToricContext, path: str = "$") -> StratumPoint:
    tau_rays = [dec_vec(t, "%s.tau_rays[%d]" % (path, i))
                for i, t in enumerate(_get(data, "tau_rays", path, required=False,
                                           default=[]))]
    try:
        tau = ctx.face_from_rays(tau_rays) if tau_rays else ctx.dense_face
        return StratumPoint.make(ctx, tau, dec_vec(_get(data, "x", path), path + ".x"))
    except ValueError as exc:
        raise ParseError(str(exc), path)


# --- derivations and certificates -------------------------------------------

def enc_step(s) -> dict:
    if isinstance(s, Generator):
        return {"op": "gen", "index": s.index}
    if isinstance(s, Refl):
        return {"op": "refl", "poly": enc_poly(s.poly, False)}
    if isinstance(s, Sym):
        return {"op": "sym", "i": s.i}
    if isinstance(s, Trans):
        return {"op": "trans", "i": s.i, "j": s.j}
    if isinstance(s, AddBoth):
        return {"op": "addboth", "i": s.i, "h": enc_poly(s.h, False)}
    if isinstance(s, MulMono):
        return {"op": "mulmono", "i": s.i, "m": enc_poly(s.m, False)}
    raise TypeError("unknown step %r" % (s,))


def dec_step(data, ctx: ToricContext, path: str):
    op = _get(data, "op", path)
    if op == "gen":
        return Generator(_get(data, "index", path))
    if op == "refl":
        return Refl(dec_poly(_get(data, "poly", path), ctx, path + ".poly"))
    if op == "sym":
        return Sym(_get(data, "i", path))
    if op == "trans":
        return Trans(_get(data, "i", path), _get(data, "j", path))
    if op == "addboth":
        return AddBoth(_get(data, "i", path), dec_poly(_get(data, "h", path), ctx, path + ".h"))
    if op == "mulmono":
        return MulMono(_get(data, "i", path), dec_poly(_get(data, "m", path), ctx, path + ".m"))
    raise ParseError("unknown derivation op %r" % op, path + ".op")


def enc_derivation(d: Derivation) -> dict:
    return {"steps": [enc_step(s) for s in d.steps]}


def dec_derivation(data, ctx: ToricContext, path: str = "$") -> Derivation:
    return Derivation(tuple(dec_step(s, ctx, "%s.steps[%d]" % (path, i))
                            for i, s in enumerate(_get(data, "steps", path))))


def enc_certificate(c: RadicalCertificate) -> dict:
    return {"exponent": c.exponent,
            "cofactor": enc_poly(c.cofactor, False),
            "derivation": None if c.derivation is None else enc_derivation(c.derivation)}


def dec_certificate(data, ctx: ToricContext, path: str = "$") -> RadicalCertificate:
    i = _get(data, "exponent", path)
    if not isinstance(i, int) or i < 0:
        raise ParseError("exponent must be a non-negative integer", path + ".exponent")
    h = dec_poly(_get(data, "cofactor", path), ctx, path + ".cofactor")
    d = _get(data, "derivation", path, required=False)
    return RadicalCertificate(i, h, None if d is None else
                              dec_derivation(d, ctx, path + ".derivation"))


# --- variety supports -------------------------------------------------------

def enc_support(V: VarietySupport) -> dict:
    return {"context": enc_context(V.context),
            "strata": [{"tau_rays": [enc_vec_int(r) for r in s.tau.rays],
                        "cells": [enc_polyhedron(c) for c in s.cells]}
                       for s in V.strata]}


# --- top-level helpers -------------------------------------------------------

def dumps(obj) -> str:
    doc = dict(obj)
    doc.setdefault("format", FORMAT_TAG)
    return json.dumps(doc, sort_keys=True, indent=1)


def load_document(text: str, path_label: str = "$"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc, path_label)


def context_of_document(data, path: str = "$", max_dim: Optional[int] = None) -> ToricContext:
    return dec_context(_get(data, "context", path), path + ".context", max_dim=max_dim)
