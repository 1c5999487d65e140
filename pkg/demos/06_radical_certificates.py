"""Radical membership: supports, certificates, and the necessity example.

Membership of (f, g) in sqrt(E) is decided geometrically (the induced
piecewise-linear functions agree on the support of E) and algebraically
(a certificate ((f+g)^i + h)(f, g) in <E>, replayed by the verifier).
The finite-tropical-basis hypothesis is what makes the two agree.
"""

from tropcong import ToricContext, parse_poly
from tropcong.congruence import (CongruencePresentation, NotFound, PrimeMatrix,
                                 SearchBounds, prime_contains_pair,
                                 search_radical_certificate,
                                 verify_radical_certificate)
from tropcong.variety import (functions_equal_on_variety, radical_member,
                              support_of)

ctx = ToricContext.affine(1)
x, one, x2 = (parse_poly(ctx, s) for s in ("x", "1", "x^2"))
E = CongruencePresentation.make(ctx, [(x2, one)], finite_tropical_basis=True)
print("E = <(x^2, 1)> on T[x]; its support is the ray {xi = 0, r >= 0}.")
print("  radical_member((x, 1)):", radical_member(E, (x, one)))

cert = search_radical_certificate(E, (x, one))
print("  search found exponent i = %d, cofactor h = %s" % (cert.exponent, cert.cofactor))
print("  derivation steps:", [type(s).__name__ for s in cert.derivation.steps])
print("  verifier accepts:", verify_radical_certificate(E, (x, one), cert))

theta = PrimeMatrix.from_extended_matrix(ctx, [["1", "0"], ["0", "-1"]])
print("\nThe rank-2 prime with matrix (1,0 / 0,-1) has the same support, yet:")
print("  x~ = 1~ on the support:",
      functions_equal_on_variety(x, one, support_of(E)))
print("  (x, 1) in the prime:", prime_contains_pair(theta, (x, one)))
res = search_radical_certificate(theta, (x, one), SearchBounds(max_exponent=6))
print("  bounded certificate search:",
      "NotFound after %d candidates" % res.explored if isinstance(res, NotFound) else res)
print("No certificate can exist: the prime has trivial ideal-kernel, so the")
print("finite-tropical-basis hypothesis in the radical correspondence is necessary.")
