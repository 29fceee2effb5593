"""Genericity certificates for twisting polynomials.

A polynomial f of degree d is of Lefschetz type when
  (i)  f has d distinct zeros in the algebraic closure, and
  (ii) f' has d-1 distinct zeros whose f-images are pairwise distinct;
and of Katz-Lefschetz type for a curve when additionally, with S the
curve's finite bad places,
  (i')   no two points of S share an f-image,
  (ii')  f vanishes at no point of S,
  (iii') every fiber f^{-1}(f(s)), s in S, has d distinct elements.

All conditions are decided by exact polynomial identities (squarefreeness,
gcds, characteristic polynomials of multiplication maps); root enumeration
in extensions is used only to extract failure witnesses, and is capped in
degree.  A FAIL certificate carries a witness that reproduces the violation
whenever one exists below the cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fibration import INFINITY, TwistFamily, bad_set
from .galois import (
    FiniteField,
    InvalidInput,
    Poly,
    _hessenberg_charpoly,
    critical_value_poly,
    distinct_root_count,
    embed,
    factor,
    is_squarefree,
    lift,
    make_field,
    poly_gcd,
    roots_in_field,
    squarefree_decomposition,
)

LEFSCHETZ = "LEFSCHETZ"
KATZ_LEFSCHETZ = "KATZ_LEFSCHETZ"
FAIL = "FAIL"

# largest absolute extension degree searched for witness elements
_WITNESS_DEGREE_CAP = 12


@dataclass(frozen=True)
class KLCertificate:
    poly: Poly
    verdict: str
    failing: str = "none"
    witness: dict | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "poly": list(self.poly.coeffs),
            "field": {"p": self.poly.field.p, "n": self.poly.field.n},
            "verdict": self.verdict,
            "failing": self.failing,
            "witness": self.witness,
            "detail": self.detail,
        }


def standard_twist_poly(field: FiniteField, d: int) -> Poly:
    """t^d - d t - 1."""
    if d < 2:
        raise InvalidInput("degree must be at least 2")
    return Poly.from_ints(field, [-1, -d] + [0] * (d - 2) + [1])


def lemma_predicate(p: int, d: int) -> bool:
    """Arithmetic sufficient condition on (p, d) for t^d - dt - 1 to be of
    Katz-Lefschetz type for the Legendre-type curve: p does not divide
    d(d-1)(d+1) and gcd(p-1, d-1) = 1."""
    if d < 2:
        raise InvalidInput("degree must be at least 2")
    return d * (d - 1) * (d + 1) % p != 0 and math.gcd(p - 1, d - 1) == 1


def lemma_table(p: int, d_max: int) -> dict:
    """Truth table of the predicate, with the residues mod 2p it selects.

    Direct evaluation admits more residue classes than the smallest
    advertised one (for p = 5 both d = 2 and d = 8 mod 10 qualify), so the
    admitted residues are reported explicitly.
    """
    rows = [{"d": d, "predicate": lemma_predicate(p, d)}
            for d in range(2, d_max + 1)]
    residues = sorted({r["d"] % (2 * p) for r in rows if r["predicate"]})
    return {"p": p, "rows": rows, "true_residues_mod_2p": residues}


# -- witness extraction ----------------------------------------------------------


def _first_root_in_extension(h: Poly, cap: int = _WITNESS_DEGREE_CAP):
    """Smallest-field root of h: (absolute_degree, element) or None."""
    if h.degree < 1:
        return None
    base_n = h.field.n
    degs = sorted({piece.degree for piece, _ in factor(h)})
    for e in degs:
        absdeg = base_n * e
        if absdeg > cap:
            return None
        E = make_field(h.field.p, absdeg)
        roots = roots_in_field(h, E)
        if roots:
            return absdeg, roots[0]
    return None


def _repeated_root_witness(h: Poly, kind: str):
    found = _first_root_in_extension(poly_gcd(h, h.derivative()))
    if found is None:
        return None
    absdeg, elt = found
    return {"kind": kind, "field_degree": absdeg, "elements": [elt]}


def _colliding_value_witness(f: Poly, cvp: Poly):
    """Two distinct critical points with the same f-image, if small enough."""
    repeated = [g for g, m in squarefree_decomposition(cvp) if m >= 2]
    fp = f.derivative()
    for block in repeated:
        for piece, _ in factor(block):
            vdeg = f.field.n * piece.degree
            if vdeg > _WITNESS_DEGREE_CAP:
                continue
            kv = make_field(f.field.p, vdeg)
            v0 = roots_in_field(piece, kv)[0]
            h = poly_gcd(lift(fp, kv), lift(f, kv) - Poly.constant(kv, v0))
            for j in range(1, h.degree + 1):
                absdeg = vdeg * j
                if absdeg > _WITNESS_DEGREE_CAP:
                    break
                E = make_field(f.field.p, absdeg)
                roots = roots_in_field(h, E)
                if len(roots) >= 2:
                    return {"kind": "colliding_critical_values",
                            "field_degree": absdeg,
                            "elements": roots[:2]}
    return None


def verify_witness(cert: KLCertificate, fam: TwistFamily | None = None) -> bool:
    """Re-evaluate a FAIL witness and confirm it exhibits the violation."""
    if cert.witness is None:
        return False
    w = cert.witness
    E = make_field(cert.poly.field.p, w["field_degree"])
    f = lift(cert.poly, E)
    elts = w["elements"]
    kind = w["kind"]
    if kind == "repeated_root":
        mu = elts[0]
        return f.evaluate(mu) == 0 and f.derivative().evaluate(mu) == 0
    if kind == "repeated_critical_point":
        mu = elts[0]
        fp = f.derivative()
        return fp.evaluate(mu) == 0 and fp.derivative().evaluate(mu) == 0
    if kind == "colliding_critical_values":
        m1, m2 = elts
        fp = f.derivative()
        return (m1 != m2 and fp.evaluate(m1) == 0 == fp.evaluate(m2)
                and f.evaluate(m1) == f.evaluate(m2))
    if kind == "colliding_images":
        s1, s2 = elts
        return s1 != s2 and f.evaluate(s1) == f.evaluate(s2)
    if kind == "vanishing_at_bad_point":
        return f.evaluate(elts[0]) == 0
    if kind == "deficient_fiber":
        mu, s = elts
        return (f.evaluate(mu) == f.evaluate(s)
                and f.derivative().evaluate(mu) == 0)
    raise InvalidInput(f"unknown witness kind {kind!r}")


# -- certification ---------------------------------------------------------------


def is_lefschetz(f: Poly) -> KLCertificate:
    """Certify conditions (i) and (ii)."""
    if f.degree < 1:
        raise InvalidInput("twisting polynomial must be nonconstant")
    d = f.degree
    if not is_squarefree(f):
        w = _repeated_root_witness(f, "repeated_root")
        return KLCertificate(f, FAIL, "i", w, "polynomial has a repeated root")
    fp = f.derivative()
    if distinct_root_count(fp) != d - 1:
        if not is_squarefree(fp):
            w = _repeated_root_witness(fp, "repeated_critical_point")
            return KLCertificate(f, FAIL, "ii", w,
                                 "derivative has a repeated root")
        return KLCertificate(
            f, FAIL, "ii", None,
            f"derivative has {distinct_root_count(fp)} distinct roots, "
            f"expected {d - 1}")
    cvp = critical_value_poly(f)
    if not is_squarefree(cvp):
        w = _colliding_value_witness(f, cvp)
        return KLCertificate(f, FAIL, "ii", w,
                             "two critical points share their value")
    return KLCertificate(f, LEFSCHETZ)


def _finite_bad_places(fam: TwistFamily) -> list[Poly]:
    return [rep.place for rep in bad_set(fam) if rep.place is not INFINITY]


def _image_poly(f: Poly, place: Poly) -> Poly:
    """Monic polynomial whose roots are the f-images of the place's points.

    Characteristic polynomial of multiplication by f on field[x]/(place).
    """
    F = f.field
    m = place.degree
    red = f % place
    M = [[0] * m for _ in range(m)]
    col = red
    x = Poly.x(F)
    for j in range(m):
        for i in range(col.degree + 1):
            M[i][j] = col.coeffs[i]
        col = (col * x) % place
    return _hessenberg_charpoly(M, F)


def is_katz_lefschetz(f: Poly, fam: TwistFamily) -> KLCertificate:
    """Certify (i')-(iii') against the family's finite bad places, after (i)-(ii)."""
    base = is_lefschetz(lift(f, fam.field))
    if base.verdict == FAIL:
        return base
    f = lift(f, fam.field)
    places = _finite_bad_places(fam)
    # (i') pairwise distinct images over the closure
    product = Poly(fam.field, (1,), trusted=True)
    for place in places:
        product = product * _image_poly(f, place)
    if product.degree > 0 and not is_squarefree(product):
        witness = _colliding_image_witness(f, places)
        return KLCertificate(f, FAIL, "i'", witness,
                             "two bad points share their f-image")
    # (ii') f(s) != 0: f coprime to every bad place
    for place in places:
        if poly_gcd(f, place).degree > 0:
            w = _first_root_in_extension(place)
            witness = None
            if w is not None:
                witness = {"kind": "vanishing_at_bad_point",
                           "field_degree": w[0], "elements": [w[1]]}
            return KLCertificate(f, FAIL, "ii'", witness,
                                 f"f vanishes on the bad place {place}")
    # (iii') full fibers over f(S)
    for place in places:
        absdeg = fam.field.n * place.degree
        kv = make_field(fam.field.p, absdeg)
        theta = roots_in_field(place, kv)[0]
        h = lift(f, kv) - Poly.constant(kv, lift(f, kv).evaluate(theta))
        if not is_squarefree(h):
            witness = None
            found = _first_root_in_extension(poly_gcd(h, h.derivative()))
            if found is not None:
                wdeg, mu = found
                E = make_field(fam.field.p, wdeg)
                witness = {"kind": "deficient_fiber", "field_degree": wdeg,
                           "elements": [mu, embed(theta, kv, E)]}
            return KLCertificate(f, FAIL, "iii'", witness,
                                 f"fiber over f(s) is deficient at place {place}")
    return KLCertificate(f, KATZ_LEFSCHETZ)


def _colliding_image_witness(f: Poly, places: list[Poly]):
    for i, p1 in enumerate(places):
        for p2 in places[i:]:
            L = math.lcm(p1.degree, p2.degree) * f.field.n
            if L > _WITNESS_DEGREE_CAP:
                continue
            E = make_field(f.field.p, L)
            fe = lift(f, E)
            r1 = roots_in_field(p1, E)
            r2 = roots_in_field(p2, E)
            for s1 in r1:
                for s2 in r2:
                    if s1 != s2 and fe.evaluate(s1) == fe.evaluate(s2):
                        return {"kind": "colliding_images",
                                "field_degree": L, "elements": [s1, s2]}
    return None
