"""Heegner-divisor bookkeeping and the image of the period map.

A divisor component is identified by (d, kappa^2, s, +-star): the
discriminant d of the orthogonal-complement lattice, the square of the
primitive cutting class, its divisibility s inside the polarized orthogonal,
and its discriminant class up to sign.  Realizability of a candidate triple
reduces to an exact order/quadratic-value match in the discriminant group;
the ambient divisibility required by the wall conditions is computed from a
canonical representative in explicit block coordinates.

An independent brute-force enumeration over bounded coordinates
(coordinate_oracle) cross-checks the analytic route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional

from . import cones, pell
from .arith import (gcd_all, is_prime, is_square, is_square_mod, is_squarefree,
                    mod2, v_p)
from .lattice import DiscGroup, disc_group_of_gram


class PeriodsError(Exception):
    pass


class BadCongruence(PeriodsError):
    pass


class NonPrimePower(PeriodsError):
    """The wall-constraint reduction needs m - 1 prime or equal to 1."""


class UnsupportedParameters(PeriodsError):
    pass


@dataclass(frozen=True, order=True)
class HeegnerKey:
    """One irreducible Heegner-divisor component.

    star holds the discriminant-class residues with respect to the model's
    generators, normalized to the lexicographically smaller of +-star.
    """

    d: int
    kappa_prim_sq: int
    s: int
    star: tuple[int, ...]


@dataclass(frozen=True)
class WallConstraint:
    k: int
    a: int
    kappa_sq: int


@dataclass(frozen=True)
class ComponentReport:
    count: Optional[int]
    keys: tuple[HeegnerKey, ...]
    certain: bool


@dataclass(frozen=True)
class ExclusionReport:
    keys: tuple[HeegnerKey, ...]
    uncertain: tuple[HeegnerKey, ...]  # multiplicity not pinned down


# ---------------------------------------------------------------------------
# the coordinate model of the polarized orthogonal


@dataclass(frozen=True)
class _Model:
    """Non-unimodular tail of the polarized orthogonal, in block coordinates.

    gamma = 1: coordinates (u - n*v, ell), Gram diag(-2n, -(2m-2)).
    gamma = 2: coordinates (w1, w2), Gram ((-2p, -p), (-p, -(n+m-1)/2)).
    """

    m: int
    n: int
    gamma: int
    tail: tuple[tuple[int, int], tuple[int, int]]
    disc: DiscGroup
    gen_vecs: tuple[tuple[Fraction, Fraction], ...]
    lookup: dict

    @property
    def p(self) -> int:
        return self.m - 1

    def dual_of_star(self, star) -> tuple[Fraction, Fraction]:
        x1 = sum((c * v[0] for c, v in zip(star, self.gen_vecs)), Fraction(0))
        x2 = sum((c * v[1] for c, v in zip(star, self.gen_vecs)), Fraction(0))
        return x1, x2

    def star_of_dual(self, x1: Fraction, x2: Fraction) -> tuple[int, ...]:
        return self.lookup[(x1 % 1, x2 % 1)]

    def normalize(self, star) -> tuple[int, ...]:
        return min(tuple(star), self.disc.negate(star))

    def ambient_div(self, star, s: int) -> int:
        """Divisibility in the full second-cohomology lattice of the canonical
        representative of a primitive class with discriminant data (star, s)."""
        x1, x2 = self.dual_of_star(star)
        a0, b0 = s * x1, s * x2
        assert a0.denominator == 1 and b0.denominator == 1
        return self._ambient_div_coords(int(a0), int(b0), s)

    def _ambient_div_coords(self, a: int, b: int, c: int) -> int:
        if self.gamma == 1:
            return gcd_all(a, 2 * self.p * b, c)
        return gcd_all(self.p * a, b, c)

    def tail_square(self, a: int, b: int) -> int:
        t = self.tail
        return t[0][0] * a * a + 2 * t[0][1] * a * b + t[1][1] * b * b

    def tail_pairings(self, a: int, b: int) -> tuple[int, int]:
        t = self.tail
        return t[0][0] * a + t[0][1] * b, t[1][0] * a + t[1][1] * b


@lru_cache(maxsize=None)
def _model(m: int, n: int, gamma: int) -> _Model:
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    p = m - 1
    if gamma == 1:
        tail = ((-2 * n, 0), (0, -2 * p))
        disc = DiscGroup(
            (2 * n, 2 * p),
            (mod2(Fraction(-1, 2 * n)), mod2(Fraction(-1, 2 * p))),
            ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))),
        )
        vecs = ((Fraction(1, 2 * n), Fraction(0)), (Fraction(0), Fraction(1, 2 * p)))
    elif gamma == 2:
        if (n + m) % 4 != 1:
            raise BadCongruence("divisibility 2 requires n + m = 1 (mod 4)")
        q = (n + m - 1) // 2
        tail = ((-2 * p, -p), (-p, -q))
        disc, vecs = disc_group_of_gram(tail)
    else:
        raise UnsupportedParameters("gamma must be 1 or 2")
    lookup = {}
    for el in disc.elements():
        x1 = sum((c * v[0] for c, v in zip(el, vecs)), Fraction(0))
        x2 = sum((c * v[1] for c, v in zip(el, vecs)), Fraction(0))
        lookup[(x1 % 1, x2 % 1)] = el
    return _Model(m, n, gamma, tail, disc, tuple(vecs), lookup)


def _realizable_classes(m: int, n: int, gamma: int, kappa_sq: int):
    """(s, normalized star, ambient divisibility) triples realizing kappa_sq.

    A primitive class of square kappa_sq with discriminant class star exists
    iff star's quadratic value matches kappa_sq / order(star)^2 modulo 2; the
    divisibility is then the order of star.
    """
    model = _model(m, n, gamma)
    out = []
    seen = set()
    for star in model.disc.elements():
        norm = model.normalize(star)
        if norm in seen:
            continue
        seen.add(norm)
        s = model.disc.element_order(star)
        if Fraction(kappa_sq, s * s) % 2 != model.disc.qbar(star):
            continue
        out.append((s, norm, model.ambient_div(norm, s)))
    return out


def _disc_abs(m: int, n: int, gamma: int) -> int:
    return (2 * n) * (2 * m - 2) // (gamma * gamma)


def _key(m: int, n: int, gamma: int, kappa_sq: int, s: int, star) -> HeegnerKey:
    d_num = abs(kappa_sq) * _disc_abs(m, n, gamma)
    assert d_num % (s * s) == 0
    return HeegnerKey(d_num // (s * s), kappa_sq, s, tuple(star))


# ---------------------------------------------------------------------------
# dimension 4 (m = 2): nonemptiness, components, exclusion list


def heegner_nonempty_m2(n: int, gamma: int, e: int) -> bool:
    """Whether the discriminant-2e Heegner locus is nonempty for square-2n data."""
    if n < 1 or e < 1:
        raise ValueError("need n >= 1 and e >= 1")
    if gamma == 1:
        return is_square_mod(e, 4 * n) or is_square_mod(e - n, 4 * n)
    if gamma == 2:
        if n % 4 != 3:
            raise BadCongruence("divisibility 2 requires n = -1 (mod 4)")
        return is_square_mod(e, n)
    raise UnsupportedParameters("gamma must be 1 or 2")


def _classes_for_discriminant(n: int, gamma: int, e: int):
    """All (s, star, kappa^2) of primitive classes cutting discriminant 2e."""
    disc = _disc_abs(2, n, gamma)
    model = _model(2, n, gamma)
    out = []
    seen = set()
    for star in model.disc.elements():
        norm = model.normalize(star)
        if norm in seen:
            continue
        seen.add(norm)
        s = model.disc.element_order(star)
        num = 2 * e * s * s
        if num % disc:
            continue
        kappa_sq = -(num // disc)
        if kappa_sq % 2:
            continue
        if Fraction(kappa_sq, s * s) % 2 != model.disc.qbar(star):
            continue
        out.append((s, norm, kappa_sq))
    return out


def heegner_components_m2(n: int, gamma: int, e: int) -> ComponentReport:
    """Component count (when the classification applies) with component keys."""
    if gamma == 2 and n % 4 != 3:
        raise BadCongruence("divisibility 2 requires n = -1 (mod 4)")
    classes = _classes_for_discriminant(n, gamma, e)
    keys = tuple(sorted(_key(2, n, gamma, k2, s, star) for s, star, k2 in classes))
    proven = is_prime(n) or (is_squarefree(n) and e % n == 0)
    if proven:
        return ComponentReport(len(keys), keys, True)
    return ComponentReport(None, keys, False)


def excluded_heegner_m2_report(n: int, gamma: int) -> ExclusionReport:
    """Components missed by the period map on square-2n moduli of fourfolds.

    These are the components cut by square -2 classes (any divisibility) and
    by square -10 classes of ambient divisibility 2.
    """
    if gamma not in (1, 2):
        raise UnsupportedParameters("gamma must be 1 or 2")
    if gamma == 2 and n % 4 != 3:
        raise BadCongruence("divisibility 2 requires n = -1 (mod 4)")
    keys: set[HeegnerKey] = set()
    uncertain: set[HeegnerKey] = set()
    for s, star, _amb in _realizable_classes(2, n, gamma, -2):
        keys.add(_key(2, n, gamma, -2, s, star))
    for s, star, amb in _realizable_classes(2, n, gamma, -10):
        if amb != 2:
            continue
        key = _key(2, n, gamma, -10, s, star)
        keys.add(key)
        if s == 10:
            # the number of components here is only pinned down when the
            # 5-free part of n is squarefree
            n_pp = n // 5 ** v_p(n, 5)
            if not is_squarefree(n_pp):
                uncertain.add(key)
    return ExclusionReport(tuple(sorted(keys)), tuple(sorted(uncertain)))


def excluded_heegner_m2(n: int, gamma: int) -> tuple[HeegnerKey, ...]:
    return excluded_heegner_m2_report(n, gamma).keys


# ---------------------------------------------------------------------------
# all dimensions with m - 1 prime (or 1)


def wall_constraints(m: int) -> tuple[WallConstraint, ...]:
    """All (k, a) wall conditions with negative square, for p = m - 1 prime or 1."""
    p = m - 1
    if p != 1 and not is_prime(p):
        raise NonPrimePower(f"wall reduction needs m - 1 prime or 1, got {p}")
    out = []
    for k in range(p + 1):
        a = -1
        while True:
            kappa_sq = 2 * p * (4 * p * a - k * k)
            if kappa_sq >= 0:
                break
            out.append(WallConstraint(k, a, kappa_sq))
            a += 1
    return tuple(out)


def realize_orthogonal_classes(m: int, n: int, gamma: int,
                               wc: WallConstraint) -> tuple[HeegnerKey, ...]:
    """Heegner components cut by classes of total square wc.kappa_sq whose
    ambient divisibility is divisible by 2(m-1)."""
    p = m - 1
    if p != 1 and not is_prime(p):
        raise NonPrimePower(f"need m - 1 prime or 1, got {p}")
    if gamma not in (1, 2):
        raise UnsupportedParameters("gamma must be 1 or 2")
    total = wc.kappa_sq
    keys = set()
    b = 1
    while b * b <= abs(total):
        if total % (b * b) == 0:
            prim_sq = total // (b * b)
            if prim_sq % 2 == 0:
                for s, star, amb in _realizable_classes(m, n, gamma, prim_sq):
                    if (b * amb) % (2 * p) == 0:
                        keys.add(_key(m, n, gamma, prim_sq, s, star))
        b += 1
    return tuple(sorted(keys))


def excluded_heegner(m: int, n: int, gamma: int) -> tuple[HeegnerKey, ...]:
    """The full excluded-component list: union over all wall constraints."""
    keys = set()
    for wc in wall_constraints(m):
        keys.update(realize_orthogonal_classes(m, n, gamma, wc))
    return tuple(sorted(keys))


def excluded_discriminants(m: int, n: int, gamma: int) -> tuple[int, ...]:
    """Sorted distinct d values of the excluded components."""
    return tuple(sorted({k.d for k in excluded_heegner(m, n, gamma)}))


# ---------------------------------------------------------------------------
# brute-force coordinate oracle


@lru_cache(maxsize=None)
def _coprime_products(bound: int) -> frozenset[int]:
    """Products x*y over coprime pairs with |x|, |y| <= bound (0 included)."""
    vals = {0}
    for x in range(1, bound + 1):
        for y in range(x, bound + 1):
            if gcd(x, y) == 1:
                vals.add(x * y)
                vals.add(-x * y)
    return frozenset(vals)


def coordinate_oracle(m: int, n: int, gamma: int, bound: int,
                      squares: Optional[frozenset] = None) -> frozenset:
    """Invariant quadruples (kappa^2, s, +-star, ambient div) realized in a box.

    Enumerates kappa = a*t1 + b*t2 + c*w over tail coordinates
    |a|, |b| <= bound, 0 <= c <= bound, where w = x*u + y*v runs over a
    hyperbolic plane with coprime |x|, |y| <= bound (realizing every even
    square 2xy).  Restricting to `squares` only filters the report; the box
    is unchanged.
    """
    model = _model(m, n, gamma)
    products = _coprime_products(bound)
    out = set()
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            base = model.tail_square(a, b)
            pr1, pr2 = model.tail_pairings(a, b)
            for c in range(bound + 1):
                if gcd_all(a, b, c) != 1:
                    continue
                s = gcd_all(pr1, pr2, c)
                star = model.normalize(model.star_of_dual(Fraction(a, s), Fraction(b, s)))
                amb = model._ambient_div_coords(a, b, c)
                if c == 0:
                    realized = (base,)
                elif squares is None:
                    realized = tuple(base + 2 * c * c * prod for prod in products)
                else:
                    realized = tuple(
                        sq for sq in squares
                        if (sq - base) % (2 * c * c) == 0
                        and (sq - base) // (2 * c * c) in products
                    )
                for k2 in realized:
                    if squares is None or k2 in squares:
                        out.add((k2, s, star, amb))
    return frozenset(out)


# ---------------------------------------------------------------------------
# Hilbert-square parametrizations of Noether-Lefschetz families


def hilbert_square_points(n: int, e: int) -> tuple[tuple[int, int, int], ...]:
    """All (a, b, gamma) giving an ample primitive square-2n class b*L - a*delta.

    The conditions are a^2 - e*b^2 = -n, gcd(a, b) = 1, and slope a/b strictly
    below the nef boundary of the Hilbert square; gamma is 2 for even b and 1
    for odd b.  Sorted by increasing a.
    """
    if n < 1 or e < 1:
        raise ValueError("need n >= 1 and e >= 1")
    nu = cones.nef_slope_s2(e)
    nu_sq = nu.squared()
    out = []
    if nu_sq == e:
        # the nef boundary is the isotropic ray; every solution is admissible
        sols = pell.generalized_solutions_up_to(1, e, -n, 10 ** 9)
        cands = [(s.a, s.b) for s in sols]
    else:
        bound = Fraction(n, e - nu_sq)
        b_max = 1
        while b_max * b_max * bound.denominator <= bound.numerator:
            b_max += 1
        cands = []
        for b in range(1, b_max + 1):
            a_sq = e * b * b - n
            if a_sq <= 0 or not is_square(a_sq):
                continue
            cands.append((isqrt(a_sq), b))
    for a, b in cands:
        if a <= 0 or gcd(a, b) != 1:
            continue
        if Fraction(a, b) ** 2 >= nu_sq:
            continue
        out.append((a, b, 2 if b % 2 == 0 else 1))
    return tuple(sorted(out))


def hilbert_square_point(n: int, e: int, gamma: int = 2) -> Optional[tuple[int, int, int]]:
    """Minimal admissible (a, b, gamma) with the requested divisibility, or None.

    The divisibility-2 flavor (even b) is the default: it is the one carrying
    the fourfolds with a square-2n polarization of divisibility 2.
    """
    for a, b, g in hilbert_square_points(n, e):
        if g == gamma:
            return (a, b, g)
    return None


def nl_family(n: int, gamma: int, a_max: int) -> tuple[int, ...]:
    """Degrees e of Hilbert squares populating square-2n Noether-Lefschetz loci.

    gamma = 1: e = a^2 + n for 1 <= a <= a_max, excluding (n, a) = (1, 2);
    gamma = 2: e = a^2 + a + (n+1)/4 for 0 <= a <= a_max, excluding (3, 1).
    """
    if a_max < 0:
        raise ValueError("a_max must be nonnegative")
    if gamma == 1:
        return tuple(sorted({a * a + n for a in range(1, a_max + 1)
                             if (n, a) != (1, 2)}))
    if gamma == 2:
        if n % 4 != 3:
            raise BadCongruence("divisibility 2 requires n = -1 (mod 4)")
        return tuple(sorted({a * a + a + (n + 1) // 4 for a in range(a_max + 1)
                             if (n, a) != (3, 1)}))
    raise UnsupportedParameters("gamma must be 1 or 2")
