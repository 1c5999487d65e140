"""Tropical scalars, toric contexts, polynomials, and extended-point evaluation.

Scalars live in the max-plus semifield with exact rational log-values; the
coefficient group is Q (mode "T") or {0} (mode "B").  Polynomials are finite
maps from monoid exponents to coefficient exponents; the zero polynomial is
the empty map.  Everything is immutable.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import polyhedra
from ._linalg import (ONE, ZERO, Vec, dot, frac, is_zero_vec, primitive,
                      reduce_mod_span, rref, vec)
from .polyhedra import ConeH, HRow, LE

COEFF_T = "T"
COEFF_B = "B"


class ContextMismatchError(ValueError):
    pass


class ZeroPolynomialError(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalars

@dataclass(frozen=True, repr=False)
class TropScalar:
    """Element of T: exact rational log-value, or None for bottom (-inf)."""

    log: Optional[Fraction]

    def is_bottom(self) -> bool:
        return self.log is None

    def __add__(self, other: "TropScalar") -> "TropScalar":
        if self.log is None:
            return other
        if other.log is None:
            return self
        return TropScalar(max(self.log, other.log))

    def __mul__(self, other: "TropScalar") -> "TropScalar":
        if self.log is None or other.log is None:
            return BOTTOM
        return TropScalar(self.log + other.log)

    def __pow__(self, k: int) -> "TropScalar":
        if k < 0:
            raise ValueError("negative power")
        if k == 0:
            return TROP_ONE
        if self.log is None:
            return BOTTOM
        return TropScalar(self.log * k)

    def __le__(self, other: "TropScalar") -> bool:
        # a <= b  iff  a + b == b
        return (self + other) == other

    def __repr__(self):
        return "-inf" if self.log is None else str(self.log)


BOTTOM = TropScalar(None)
TROP_ONE = TropScalar(ZERO)


def tsc(x) -> TropScalar:
    if isinstance(x, TropScalar):
        return x
    if x is None:
        return BOTTOM
    return TropScalar(frac(x))


# ---------------------------------------------------------------------------
# toric context

_DEFAULT_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class Face:
    """Face tau <= sigma; rays primitive and sorted, pivots of span(rays) cached."""

    ambient: int
    rays: tuple
    span_rref: tuple
    pivots: tuple

    @staticmethod
    def from_rays(ambient: int, rays: Iterable[Vec]) -> "Face":
        rays = tuple(sorted(primitive(r) for r in rays))
        red, piv = rref(rays) if rays else ([], [])
        return Face(ambient, rays, tuple(red), tuple(piv))

    def dim(self) -> int:
        return len(self.pivots)

    def perp_contains(self, u: Sequence) -> bool:
        """u in tau-perp, i.e. <v, u> = 0 for every ray v of tau."""
        return all(dot(r, u) == 0 for r in self.rays)

    def canonical(self, x: Sequence) -> Vec:
        return reduce_mod_span(vec(x), self.span_rref)

    def cone(self) -> ConeH:
        return polyhedra.hrep_from_rays(self.rays, self.ambient)


class ToricContext:
    """Rank-n lattice, strongly convex rational cone sigma, monoid M = sigma^v cap Z^n.

    Uses the dual convention sigma^v = {u : <v, u> <= 0 for all v in sigma}.
    """

    def __init__(self, rank: int, sigma_rays: Iterable[Vec], coeff: str = COEFF_T,
                 var_names: Optional[Sequence[str]] = None):
        self.rank = rank
        self.sigma_rays = tuple(sorted(primitive(r) for r in sigma_rays))
        for r in self.sigma_rays:
            if len(r) != rank:
                raise polyhedra.DimensionMismatchError("ray length != rank")
        if coeff not in (COEFF_T, COEFF_B):
            raise ValueError("coeff mode must be 'T' or 'B'")
        self.coeff = coeff
        if var_names is None:
            var_names = (_DEFAULT_NAMES[:rank] if rank <= len(_DEFAULT_NAMES)
                         else tuple("x%d" % (i + 1) for i in range(rank)))
        self.var_names = tuple(var_names)
        self._sigma = polyhedra.hrep_from_rays(self.sigma_rays, rank) if self.sigma_rays \
            else polyhedra.origin_cone(rank)
        lin, _ = polyhedra.cone_generators(self._sigma)
        if lin:
            raise ValueError("sigma contains a line; not strongly convex")
        self._faces = None
        self._gens = None

    # presets ---------------------------------------------------------------
    @classmethod
    def affine(cls, n: int, coeff: str = COEFF_T) -> "ToricContext":
        rays = [tuple(-ONE if j == i else ZERO for j in range(n)) for i in range(n)]
        return cls(n, rays, coeff)

    @classmethod
    def torus(cls, n: int, coeff: str = COEFF_T) -> "ToricContext":
        return cls(n, (), coeff)

    # identity ---------------------------------------------------------------
    def _key(self):
        return (self.rank, self.sigma_rays, self.coeff)

    def __eq__(self, other):
        return isinstance(other, ToricContext) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "ToricContext(rank=%d, sigma_rays=%r, coeff=%s)" % (
            self.rank, self.sigma_rays, self.coeff)

    # geometry ---------------------------------------------------------------
    @property
    def sigma(self) -> ConeH:
        return self._sigma

    @property
    def faces(self) -> tuple:
        if self._faces is None:
            fs = []
            for c in polyhedra.faces_of(self._sigma):
                _, rays = polyhedra.cone_generators(c)
                fs.append(Face.from_rays(self.rank, rays))
            fs.sort(key=lambda f: (f.dim(), f.rays))
            self._faces = tuple(fs)
        return self._faces

    @property
    def dense_face(self) -> Face:
        return self.faces[0]

    @property
    def deep_face(self) -> Face:
        return self.faces[-1]

    def face_from_rays(self, rays: Iterable[Vec]) -> Face:
        want = tuple(sorted(primitive(r) for r in rays))
        for f in self.faces:
            if f.rays == want:
                return f
        raise ValueError("not a face of sigma: %r" % (want,))

    def exponent_in_monoid(self, u: Sequence) -> bool:
        u = vec(u)
        if any(x.denominator != 1 for x in u):
            return False
        return all(dot(r, u) <= 0 for r in self.sigma_rays)

    @property
    def monoid_generators(self) -> tuple:
        if self._gens is None:
            self._gens = _monoid_generators(self)
        return self._gens

    def is_affine_preset(self) -> bool:
        want = tuple(sorted(tuple(-ONE if j == i else ZERO for j in range(self.rank))
                            for i in range(self.rank)))
        return self.sigma_rays == want

    def is_torus(self) -> bool:
        return not self.sigma_rays


def _monoid_generators(ctx: ToricContext) -> tuple:
    n = ctx.rank
    ei = lambda i: tuple(ONE if j == i else ZERO for j in range(n))
    if ctx.is_affine_preset():
        return tuple(ei(i) for i in range(n))
    if ctx.is_torus():
        out = []
        for i in range(n):
            out.append(ei(i))
            out.append(tuple(-x for x in ei(i)))
        return tuple(out)
    # general sigma: Hilbert-basis style generating set of sigma^v cap Z^n
    dual = ConeH.make(n, tuple(HRow(r, ZERO, LE) for r in ctx.sigma_rays))
    lin, rays = polyhedra.cone_generators(dual)
    gens = set()
    for v in lin:
        gens.add(primitive(v))
        gens.add(primitive(tuple(-x for x in v)))
    rays = [primitive(r) for r in rays]
    gens.update(rays)
    # lattice points of the fundamental parallelepipeds of a ray triangulation
    if len(rays) >= 2:
        from itertools import combinations
        for sub in combinations(rays, min(len(rays), n)):
            if rank_of_list(sub) != len(sub):
                continue
            gens.update(_parallelepiped_points(sub, dual))
    return tuple(sorted(g for g in gens if not is_zero_vec(g)))


def rank_of_list(rows):
    return len(rref(rows)[0])


def _parallelepiped_points(rays, cone: ConeH):
    """Integer points in {sum l_i r_i : 0 <= l_i <= 1} that lie in cone."""
    n = len(rays[0])
    lo = [min(ZERO, sum(r[j] for r in rays)) for j in range(n)]
    hi = [max(ZERO, sum(r[j] for r in rays)) for j in range(n)]
    ranges = [range(int(lo[j]), int(hi[j]) + 1) for j in range(n)]
    out = []
    for pt in itertools.product(*ranges):
        v = vec(pt)
        if is_zero_vec(v) or not cone.contains(v):
            continue
        # inside the parallelepiped: v = sum l_i r_i with 0 <= l_i <= 1
        from ._linalg import solve_eq
        sol = solve_eq([tuple(r[j] for r in rays) for j in range(n)], v)
        if sol is not None and all(0 <= l <= 1 for l in sol):
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class TropPoly:
    """f = sum over u of t^{a_u} chi^u; empty term map is the zero polynomial."""

    context: ToricContext
    terms: tuple  # sorted tuple of (exponent tuple of ints, Fraction coefficient-exponent)

    @staticmethod
    def make(context: ToricContext, terms) -> "TropPoly":
        canon = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for u, a in items:
            u = tuple(int(x) for x in u)
            if a is None or (isinstance(a, TropScalar) and a.is_bottom()):
                continue
            a = a.log if isinstance(a, TropScalar) else frac(a)
            if not context.exponent_in_monoid(u):
                raise ValueError("exponent %r outside the monoid" % (u,))
            if context.coeff == COEFF_B and a != 0:
                raise ValueError("Boolean coefficients force coefficient exponent 0")
            if u in canon:
                canon[u] = max(canon[u], a)
            else:
                canon[u] = a
        return TropPoly(context, tuple(sorted(canon.items())))

    @staticmethod
    def zero(context: ToricContext) -> "TropPoly":
        return TropPoly(context, ())

    @staticmethod
    def one(context: ToricContext) -> "TropPoly":
        return TropPoly.make(context, {(0,) * context.rank: ZERO})

    @staticmethod
    def monomial(context: ToricContext, u, a=ZERO) -> "TropPoly":
        return TropPoly.make(context, {tuple(u): a})

    @staticmethod
    def variable(context: ToricContext, i: int) -> "TropPoly":
        u = [0] * context.rank
        u[i] = 1
        return TropPoly.make(context, {tuple(u): ZERO})

    # --- basic structure ---
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> tuple:
        return tuple(u for u, _ in self.terms)

    def coeff(self, u) -> TropScalar:
        u = tuple(int(x) for x in u)
        for uu, a in self.terms:
            if uu == u:
                return TropScalar(a)
        return BOTTOM

    def degree(self) -> int:
        return max((sum(abs(x) for x in u) for u, _ in self.terms), default=0)

    def term_vector(self, idx: int) -> Vec:
        """(a_u, u) as a (1+n)-vector for polyhedral computations."""
        u, a = self.terms[idx]
        return (a,) + vec(u)

    def term_vectors(self) -> list:
        return [self.term_vector(i) for i in range(len(self.terms))]

    # --- semiring operations ---
    def _check(self, other: "TropPoly"):
        if self.context != other.context:
            raise ContextMismatchError("operands come from different contexts")

    def __add__(self, other: "TropPoly") -> "TropPoly":
        self._check(other)
        out = dict(self.terms)
        for u, a in other.terms:
            out[u] = max(out[u], a) if u in out else a
        return TropPoly(self.context, tuple(sorted(out.items())))

    def __mul__(self, other: "TropPoly") -> "TropPoly":
        self._check(other)
        out = {}
        for u1, a1 in self.terms:
            for u2, a2 in other.terms:
                u = tuple(x + y for x, y in zip(u1, u2))
                a = a1 + a2
                if u not in out or out[u] < a:
                    out[u] = a
        return TropPoly(self.context, tuple(sorted(out.items())))

    def __pow__(self, k: int) -> "TropPoly":
        if k < 0:
            raise ValueError("negative power")
        acc = TropPoly.one(self.context)
        for _ in range(k):
            acc = acc * self
        return acc

    # --- evaluation ---
    def evaluate(self, w: "ExtPoint") -> TropScalar:
        if self.context != w.context:
            raise ContextMismatchError("polynomial and point contexts differ")
        best = BOTTOM
        for u, a in self.terms:
            v = w.pair(a, u)
            best = best + v
        return best

    def restrict(self, tau: Face) -> "TropPoly":
        """Terms whose exponents survive on the stratum of tau (u in tau-perp)."""
        return TropPoly(self.context, tuple(
            (u, a) for u, a in self.terms if tau.perp_contains(u)))

    def delete_term(self, u) -> "TropPoly":
        u = tuple(int(x) for x in u)
        return TropPoly(self.context, tuple(t for t in self.terms if t[0] != u))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.context.var_names
        parts = []
        for u, a in self.terms:
            factors = []
            if a != 0:
                factors.append("t^%s" % a)
            for i, e in enumerate(u):
                if e == 1:
                    factors.append(names[i])
                elif e != 0:
                    factors.append("%s^%d" % (names[i], e))
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# extended points

@dataclass(frozen=True)
class ExtPoint:
    """Point (r, x) of R_{>=0} x N_R(sigma): height r, stratum face tau, coords mod span(tau)."""

    context: ToricContext
    r: Fraction
    tau: Face
    coords: Vec

    @staticmethod
    def make(context: ToricContext, r, tau: Face, coords) -> "ExtPoint":
        r = frac(r)
        if r < 0:
            raise ValueError("height must be non-negative")
        return ExtPoint(context, r, tau, tau.canonical(coords))

    @staticmethod
    def dense(context: ToricContext, r, coords) -> "ExtPoint":
        return ExtPoint.make(context, r, context.dense_face, coords)

    def pair(self, a: Fraction, u: Sequence) -> TropScalar:
        """< (a, u), (r, x) > = r*a + <x, u> if u in tau-perp, else bottom."""
        if not self.tau.perp_contains(u):
            return BOTTOM
        return TropScalar(self.r * a + dot(self.coords, u))

    def full_vector(self) -> Vec:
        return (self.r,) + self.coords


# ---------------------------------------------------------------------------
# module-level operation aliases

def eval_poly(f: TropPoly, w: ExtPoint) -> TropScalar:
    return f.evaluate(w)


def poly_add(f: TropPoly, g: TropPoly) -> TropPoly:
    return f + g


def poly_mul(f: TropPoly, g: TropPoly) -> TropPoly:
    return f * g


def poly_pow(f: TropPoly, k: int) -> TropPoly:
    return f ** k


def bend_relations(f: TropPoly) -> list:
    """One pair (f, f with term i deleted) per support element; f must be nonzero."""
    if f.is_zero():
        raise ZeroPolynomialError("bend relations of the zero polynomial")
    return [(f, f.delete_term(u)) for u in f.support()]


# ---------------------------------------------------------------------------
# parsing (used by fixtures and tests)

_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9]*|\^|[+*()]|-?\d+(?:/\d+)?)")


def parse_poly(context: ToricContext, text: str) -> TropPoly:
    """Parse '1 + t^2*x*y^2' style input; '1' is the unit, '0' the zero polynomial."""
    text = text.strip()
    if text == "0":
        return TropPoly.zero(context)
    terms = {}
    for chunk in text.split("+"):
        a = ZERO
        u = [0] * context.rank
        for fac in chunk.split("*"):
            fac = fac.strip()
            if not fac:
                raise ValueError("empty factor in %r" % (chunk,))
            if fac == "1":
                continue
            if fac == "t":
                a += 1
                continue
            m = re.fullmatch(r"t\^(-?\d+(?:/\d+)?)", fac)
            if m:
                a += frac(m.group(1))
                continue
            m = re.fullmatch(r"([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?", fac)
            if m and m.group(1) in context.var_names:
                i = context.var_names.index(m.group(1))
                u[i] += int(m.group(2)) if m.group(2) else 1
                continue
            raise ValueError("cannot parse factor %r" % (fac,))
        key = tuple(u)
        terms[key] = max(terms[key], a) if key in terms else a
    return TropPoly.make(context, terms)
