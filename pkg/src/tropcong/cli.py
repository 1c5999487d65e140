"""tropcong command-line front end.

Results go to stdout as JSON (format tag "tropcong/1"), diagnostics to stderr.
Exit codes: 0/1 encode boolean results, 2 means a parse error, 3 a violated
precondition.  TROPCONG_MAX_DIM caps the ambient dimension (default 6).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import jsonio, polyhedra, resolve as resolve_mod, toric_geom, variety as variety_mod
from .congruence import (CongruencePresentation, NotFound, SearchBounds,
                         has_trivial_ideal_kernel, prime_contains_pair,
                         prime_eval, search_radical_certificate,
                         verify_derivation, verify_radical_certificate)
from .jsonio import ParseError
from .trop_core import ContextMismatchError, ZeroPolynomialError, bend_relations
from .variety import FiniteBasisRequiredError

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


class PreconditionError(ValueError):
    pass


def _max_dim() -> int:
    raw = os.environ.get("TROPCONG_MAX_DIM", "6")
    try:
        return int(raw)
    except ValueError:
        return 6


def _load(path: str):
    try:
        with open(path, "r") as fh:
            text = fh.read()
    except OSError as exc:
        raise PreconditionError("cannot read %s: %s" % (path, exc))
    return jsonio.load_document(text, path_label=path)


def _context(doc, label, max_dim):
    return jsonio.context_of_document(doc, path=label, max_dim=max_dim)


def _same_context(*ctxs):
    first = ctxs[0]
    for c in ctxs[1:]:
        if c != first:
            raise PreconditionError("input files use different contexts")
    return first


def _emit(payload: dict):
    sys.stdout.write(jsonio.dumps(payload) + "\n")


def _bool_exit(value: bool) -> int:
    return EXIT_TRUE if value else EXIT_FALSE


# --- subcommand handlers -----------------------------------------------------


def cmd_eval(args, max_dim):
    fdoc = _load(args.poly)
    wdoc = _load(args.point)
    ctx = _same_context(_context(fdoc, args.poly, max_dim), _context(wdoc, args.point, max_dim))
    f = jsonio.dec_poly(fdoc, ctx, args.poly)
    w = jsonio.dec_ext_point(wdoc, ctx, args.point)
    val = f.evaluate(w)
    _emit({"value": "-inf" if val.is_bottom() else jsonio.enc_frac(val.log)})
    return EXIT_TRUE


def cmd_bend(args, max_dim):
    fdoc = _load(args.poly)
    ctx = _context(fdoc, args.poly, max_dim)
    f = jsonio.dec_poly(fdoc, ctx, args.poly)
    pairs = bend_relations(f)
    _emit({"pairs": [{"lhs": jsonio.enc_poly(a, False), "rhs": jsonio.enc_poly(b, False)}
                     for a, b in pairs]})
    return EXIT_TRUE


def cmd_prime_eval(args, max_dim):
    mdoc = _load(args.matrix)
    fdoc = _load(args.poly)
    ctx = _same_context(_context(mdoc, args.matrix, max_dim), _context(fdoc, args.poly, max_dim))
    theta = jsonio.dec_matrix(mdoc, ctx, args.matrix)
    f = jsonio.dec_poly(fdoc, ctx, args.poly)
    phi = prime_eval(theta, f)
    _emit({"phi": ["-inf" if x is None else jsonio.enc_frac(x) for x in phi]})
    return EXIT_TRUE


def cmd_member(args, max_dim):
    mdoc = _load(args.matrix)
    pdoc = _load(args.pair)
    ctx = _same_context(_context(mdoc, args.matrix, max_dim), _context(pdoc, args.pair, max_dim))
    theta = jsonio.dec_matrix(mdoc, ctx, args.matrix)
    pair = jsonio.dec_pair(pdoc, ctx, args.pair)
    ok = prime_contains_pair(theta, pair)
    _emit({"member": ok})
    return _bool_exit(ok)


def cmd_kernel(args, max_dim):
    mdoc = _load(args.matrix)
    ctx = _context(mdoc, args.matrix, max_dim)
    theta = jsonio.dec_matrix(mdoc, ctx, args.matrix)
    trivial = has_trivial_ideal_kernel(theta)
    _emit({"tau_rays": [jsonio.enc_vec_int(r) for r in theta.tau.rays],
           "trivial": trivial})
    return _bool_exit(trivial)


def _decode_congruence(path, max_dim):
    doc = _load(path)
    ctx = _context(doc, path, max_dim)
    return ctx, jsonio.dec_congruence(doc, ctx, path)


def cmd_variety(args, max_dim):
    ctx, E = _decode_congruence(args.cong, max_dim)
    strata = None
    if args.stratum:
        sdoc = _load(args.stratum)
        rays = [jsonio.dec_vec(r, "%s.tau_rays[%d]" % (args.stratum, i))
                for i, r in enumerate(sdoc.get("tau_rays", []))]
        try:
            strata = [ctx.face_from_rays(rays) if rays else ctx.dense_face]
        except ValueError as exc:
            raise PreconditionError(str(exc))
    V = variety_mod.variety_of_basis(E, strata=strata)
    _emit(jsonio.enc_support(V))
    return EXIT_TRUE


def cmd_hypersurface(args, max_dim):
    fdoc = _load(args.poly)
    ctx = _context(fdoc, args.poly, max_dim)
    f = jsonio.dec_poly(fdoc, ctx, args.poly)
    V = variety_mod.hypersurface(f)
    _emit(jsonio.enc_support(V))
    return EXIT_TRUE


def cmd_radical_member(args, max_dim):
    ctx, E = _decode_congruence(args.cong, max_dim)
    pdoc = _load(args.pair)
    _same_context(ctx, _context(pdoc, args.pair, max_dim))
    pair = jsonio.dec_pair(pdoc, ctx, args.pair)
    if args.finite_basis:
        E = CongruencePresentation.make(ctx, E.pairs, True)
    ok = variety_mod.radical_member(E, pair)
    _emit({"radical_member": ok})
    return _bool_exit(ok)


def cmd_verify(args, max_dim):
    ctx, E = _decode_congruence(args.cong, max_dim)
    pdoc = _load(args.pair)
    _same_context(ctx, _context(pdoc, args.pair, max_dim))
    pair = jsonio.dec_pair(pdoc, ctx, args.pair)
    if args.derivation:
        ddoc = _load(args.derivation)
        d = jsonio.dec_derivation(ddoc, ctx, args.derivation)
        ok = verify_derivation(E, d, pair)
        _emit({"verified": ok, "kind": "derivation"})
        return _bool_exit(ok)
    if args.certificate:
        cdoc = _load(args.certificate)
        cert = jsonio.dec_certificate(cdoc, ctx, args.certificate)
        ok = verify_radical_certificate(E, pair, cert)
        _emit({"verified": ok, "kind": "certificate"})
        return _bool_exit(ok)
    raise PreconditionError("verify needs --derivation or --certificate")


def cmd_radical_search(args, max_dim):
    doc = _load(args.cong)
    ctx = _context(doc, args.cong, max_dim)
    if "pairs" in doc:
        E = jsonio.dec_congruence(doc, ctx, args.cong)
    else:
        E = jsonio.dec_matrix(doc, ctx, args.cong)
    pdoc = _load(args.pair)
    _same_context(ctx, _context(pdoc, args.pair, max_dim))
    pair = jsonio.dec_pair(pdoc, ctx, args.pair)
    bounds = SearchBounds(max_exponent=args.max_i, max_degree=args.max_deg)
    res = search_radical_certificate(E, pair, bounds)
    if isinstance(res, NotFound):
        _emit({"found": False, "explored": res.explored})
        return EXIT_FALSE
    _emit({"found": True, "certificate": jsonio.enc_certificate(res)})
    return EXIT_TRUE


def cmd_closure(args, max_dim):
    ldoc = _load(args.polyhedron)
    fdoc = _load(args.fan)
    wdoc = _load(args.point)
    ctx = _context(wdoc, args.point, max_dim)
    L = jsonio.dec_polyhedron(ldoc, args.polyhedron)
    fan = jsonio.dec_fan(fdoc, args.fan)
    w = jsonio.dec_stratum_point(wdoc, ctx, args.point)
    try:
        res = toric_geom.polyhedron_closure_membership(ctx, L, fan, w)
    except ValueError as exc:
        raise PreconditionError(str(exc))
    if isinstance(res, toric_geom.NotInClosure):
        _emit({"in_closure": False, "failed_claims": list(res.failed_claims)})
        return EXIT_FALSE
    _emit({"in_closure": True,
           "w_hat": jsonio.enc_vec(res.base),
           "v": jsonio.enc_vec(res.direction)})
    return EXIT_TRUE


def cmd_resolve(args, max_dim):
    ctx, E = _decode_congruence(args.cong, max_dim)
    pdoc = _load(args.prime)
    _same_context(ctx, _context(pdoc, args.prime, max_dim))
    P = jsonio.dec_matrix(pdoc, ctx, args.prime)
    res = resolve_mod.resolve_boundary_prime(
        E, P, sample_degree=args.sample_degree, samples=args.samples, seed=args.seed)
    if isinstance(res, resolve_mod.ResolveFailure):
        _emit({"resolved": False, "reason": res.reason, "detail": res.detail})
        return EXIT_FALSE
    _emit({"resolved": True,
           "matrix": jsonio.enc_matrix(res.matrix),
           "cone": jsonio.enc_polyhedron(res.cone),
           "v": jsonio.enc_vec(res.v),
           "v_hats": [jsonio.enc_vec(v) for v in res.v_hats],
           "b": [jsonio.enc_frac(b) for b in res.b],
           "w_hats": [jsonio.enc_vec(v) for v in res.w_hats],
           "refinement_samples": res.refinement_samples})
    return EXIT_TRUE


def cmd_flag_check(args, max_dim):
    ctx, E = _decode_congruence(args.cong, max_dim)
    fdoc = _load(args.flag)
    flag = jsonio.dec_flag(fdoc, args.flag)
    bad = polyhedra.validate_flag(flag)
    if bad:
        _emit({"valid": False, "violations": bad})
        return EXIT_FALSE
    V = variety_mod.variety_of_basis(E)
    ok = variety_mod.flag_in_variety(ctx, flag, V)
    _emit({"valid": True, "in_variety": ok})
    return _bool_exit(ok)


def cmd_cancel_check(args, max_dim):
    ctx, E = _decode_congruence(args.cong, max_dim)
    report = resolve_mod.cancellativity_harness(E, trials=args.trials,
                                                max_degree=args.max_deg, seed=args.seed)
    _emit({"trials": report.trials,
           "products_equal": report.products_equal,
           "violations": [list(v) for v in report.violations]})
    return EXIT_TRUE if not report.violations else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tropcong",
                                 description="exact computations with congruences on "
                                             "tropical polynomial semirings")
    ap.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a polynomial at an extended point")
    p.add_argument("--poly", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("bend", help="bend relations of a polynomial")
    p.add_argument("--poly", required=True)
    p.set_defaults(fn=cmd_bend)

    p = sub.add_parser("prime-eval", help="Phi-vector of a polynomial under a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(fn=cmd_prime_eval)

    p = sub.add_parser("member", help="pair membership in a matrix-defined prime")
    p.add_argument("--matrix", required=True)
    p.add_argument("--pair", required=True)
    p.set_defaults(fn=cmd_member)

    p = sub.add_parser("kernel", help="ideal-kernel stratum of a prime matrix")
    p.add_argument("--matrix", required=True)
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("variety", help="selected cells of the support of a congruence")
    p.add_argument("--cong", required=True)
    p.add_argument("--stratum", default=None)
    p.set_defaults(fn=cmd_variety)

    p = sub.add_parser("hypersurface", help="support of the bend congruence of one polynomial")
    p.add_argument("--poly", required=True)
    p.set_defaults(fn=cmd_hypersurface)

    p = sub.add_parser("radical-member", help="membership in the radical via the support")
    p.add_argument("--cong", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--finite-basis", action="store_true",
                   help="declare that the generators are a finite tropical basis")
    p.set_defaults(fn=cmd_radical_member)

    p = sub.add_parser("verify", help="check a derivation or radical certificate")
    p.add_argument("--cong", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--derivation", default=None)
    p.add_argument("--certificate", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("radical-search", help="bounded search for a radical certificate")
    p.add_argument("--cong", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--max-i", type=int, default=4)
    p.add_argument("--max-deg", type=int, default=8)
    p.set_defaults(fn=cmd_radical_search)

    p = sub.add_parser("closure", help="closure membership of a stratum point")
    p.add_argument("--polyhedron", required=True)
    p.add_argument("--fan", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(fn=cmd_closure)

    p = sub.add_parser("resolve", help="resolve a boundary prime to a trivial-kernel prime")
    p.add_argument("--cong", required=True)
    p.add_argument("--prime", required=True)
    p.add_argument("--sample-degree", type=int, default=6)
    p.add_argument("--samples", type=int, default=500)
    p.set_defaults(fn=cmd_resolve)

    p = sub.add_parser("flag-check", help="validate a flag and test it against a support")
    p.add_argument("--flag", required=True)
    p.add_argument("--cong", required=True)
    p.set_defaults(fn=cmd_flag_check)

    p = sub.add_parser("cancel-check", help="cancellativity property run")
    p.add_argument("--cong", required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-deg", type=int, default=3)
    p.set_defaults(fn=cmd_cancel_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    max_dim = _max_dim()
    try:
        return args.fn(args, max_dim)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, ContextMismatchError, FiniteBasisRequiredError,
            ZeroPolynomialError) as exc:
        print("precondition violated: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print("precondition violated: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
