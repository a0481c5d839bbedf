"""Exact solvers for the Pell-type equations a^2 - e*b^2 = t and e1*a^2 - e2*b^2 = t.

All arithmetic is arbitrary-precision integer arithmetic; nothing here ever
touches a float.  Solutions of a^2 - d*b^2 = t fall into finitely many classes
under multiplication by powers of the fundamental unit of a^2 - d*b^2 = 1;
each class is represented by its minimal positive member (a > 0, b > 0,
minimal a).  Class representatives are found with the PQa continued-fraction
algorithm, which stays fast even when the fundamental unit is astronomical.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional

from .arith import is_square, square_divisors


class PellError(Exception):
    """Base class for the solver's domain errors."""


class PerfectSquareInput(PellError):
    """Raised when a fundamental unit is requested for a square d."""


class Unsolvable(PellError):
    """Raised when a solution stream is requested for an unsolvable equation."""


class WrongEquation(PellError):
    """Raised when a purported solution does not satisfy its equation."""


class ExcludedDegenerateCase(PellError):
    """Raised by compose_to_unit on the two excluded parameter combinations."""


@dataclass(frozen=True, order=True)
class PellSolution:
    a: int
    b: int

    def __iter__(self):
        yield self.a
        yield self.b


@dataclass(frozen=True)
class PellEquation:
    """e1*a^2 - e2*b^2 = t; the classical equation a^2 - e*b^2 = t has e1 = 1."""

    e1: int
    e2: int
    t: int

    def __post_init__(self):
        if self.e1 < 1 or self.e2 < 1:
            raise ValueError("coefficients e1, e2 must be positive")
        if self.t == 0:
            raise ValueError("right-hand side t must be nonzero")

    @classmethod
    def classical(cls, e: int, t: int) -> "PellEquation":
        return cls(1, e, t)

    @property
    def d(self) -> int:
        return self.e1 * self.e2

    def holds(self, a: int, b: int) -> bool:
        return self.e1 * a * a - self.e2 * b * b == self.t


@dataclass(frozen=True)
class SolutionClass:
    """A class of associated solutions, given by its minimal positive member.

    conjugate_of is the index (within the containing list) of the conjugate
    class when that class is distinct, and None when the class is its own
    conjugate.
    """

    representative: PellSolution
    conjugate_of: Optional[int]


@dataclass(frozen=True)
class Solvability:
    """Both solvability flags: with b = 0 admitted, and with b > 0 required."""

    any_solution: bool
    with_positive_b: bool


# ---------------------------------------------------------------------------
# fundamental unit and exact sign tests in Z[sqrt(d)]


@lru_cache(maxsize=None)
def fundamental_solution(d: int) -> PellSolution:
    """Minimal positive solution of a^2 - d*b^2 = 1, via continued fractions."""
    if d <= 0:
        raise ValueError("d must be positive")
    r = isqrt(d)
    if r * r == d:
        raise PerfectSquareInput(f"{d} is a perfect square; only (+-1, 0) solve the unit equation")
    m, den, a = 0, 1, r
    p_prev, p = 1, r
    q_prev, q = 0, 1
    while p * p - d * q * q != 1:
        m = den * a - m
        den = (d - m * m) // den
        a = (r + m) // den
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    return PellSolution(p, q)


def _sign_quad(x: int, y: int, d: int) -> int:
    """Sign of x + y*sqrt(d) for nonsquare d (never zero unless x = y = 0)."""
    if x >= 0 and y >= 0:
        return 1 if (x or y) else 0
    if x <= 0 and y <= 0:
        return -1
    # opposite signs: compare x^2 with d*y^2
    if x > 0:
        return 1 if x * x > d * y * y else -1
    return 1 if d * y * y > x * x else -1


def _mul_unit(x: int, y: int, d: int, u: PellSolution) -> tuple[int, int]:
    return x * u.a + d * y * u.b, x * u.b + y * u.a


def _div_unit(x: int, y: int, d: int, u: PellSolution) -> tuple[int, int]:
    return x * u.a - d * y * u.b, y * u.a - x * u.b


def _canonical_rep(d: int, t: int, x: int, y: int) -> tuple[int, int]:
    """Minimal positive member of the class of (x, y) in a^2 - d*b^2 = t.

    The class members with a > 0 and b > 0 are exactly those whose real image
    x + y*sqrt(d) exceeds sqrt(|t|); the minimal one is the unique member in
    the window (sqrt(|t|), sqrt(|t|) * unit].
    """
    u = fundamental_solution(d)
    if _sign_quad(x, y, d) < 0:
        x, y = -x, -y

    def above_window(a: int, b: int) -> bool:
        # a + b*sqrt(d) > sqrt(|t|), i.e. (a + b*sqrt(d))^2 > |t|
        return _sign_quad(a * a + d * b * b - abs(t), 2 * a * b, d) > 0

    while not above_window(x, y):
        x, y = _mul_unit(x, y, d, u)
    while True:
        xd, yd = _div_unit(x, y, d, u)
        if above_window(xd, yd):
            x, y = xd, yd
        else:
            break
    assert x > 0 and y > 0
    return x, y


# ---------------------------------------------------------------------------
# PQa machinery: class representatives of a^2 - d*b^2 = t for nonsquare d


def _pqa_hits(d: int, q0: int, z: int) -> list[tuple[int, int]]:
    """(G, B) pairs with G^2 - d*B^2 = +-q0 from the expansion of (z+sqrt(d))/q0.

    Runs through the preperiod plus two full periods of the continued-fraction
    expansion, which is enough to see the fundamental solution of every class
    attached to the residue z (z^2 must be congruent to d mod q0).
    """
    assert q0 > 0 and (z * z - d) % q0 == 0
    s = isqrt(d)
    p_cur, q_cur = z, q0
    g_prev2, g_prev = -z, q0
    b_prev2, b_prev = 1, 0
    hits: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for _ in range(100000):
        state = (p_cur, q_cur)
        seen[state] = seen.get(state, 0) + 1
        if seen[state] >= 3:
            break
        a_i = (p_cur + s) // q_cur if q_cur > 0 else (p_cur + s + 1) // q_cur
        g_i = a_i * g_prev + g_prev2
        b_i = a_i * b_prev + b_prev2
        p_next = a_i * q_cur - p_cur
        q_next = (d - p_next * p_next) // q_cur
        if abs(q_next) == 1:
            norm = g_i * g_i - d * b_i * b_i
            assert abs(norm) == q0
            hits.append((g_i, b_i))
        g_prev2, g_prev = g_prev, g_i
        b_prev2, b_prev = b_prev, b_i
        p_cur, q_cur = p_next, q_next
    else:  # pragma: no cover
        raise AssertionError("continued-fraction expansion failed to cycle")
    return hits


@lru_cache(maxsize=None)
def _negative_unit(d: int) -> Optional[PellSolution]:
    """Minimal positive solution of a^2 - d*b^2 = -1, or None."""
    sols = [(abs(g), abs(b)) for g, b in _pqa_hits(d, 1, 0) if g * g - d * b * b == -1]
    if not sols:
        return None
    a, b = min(sols)
    return PellSolution(a, b)


@lru_cache(maxsize=None)
def _class_reps(d: int, t: int) -> tuple[PellSolution, ...]:
    """Minimal positive representatives of all solution classes of a^2 - d*b^2 = t.

    d must not be a perfect square.  Sorted by increasing a.
    """
    if is_square(d):
        raise PerfectSquareInput(f"{d} is a perfect square")
    reps: set[tuple[int, int]] = set()
    for f in square_divisors(t):
        m = t // (f * f)
        m_abs = abs(m)
        for z in range(m_abs):
            if (z * z - d) % m_abs:
                continue
            for g, b in _pqa_hits(d, m_abs, z):
                norm = g * g - d * b * b
                if norm == m:
                    x, y = g, b
                elif norm == -m:
                    neg = _negative_unit(d)
                    if neg is None:
                        continue
                    x, y = _mul_unit(g, b, d, neg)
                else:
                    continue
                reps.add(_canonical_rep(d, t, f * x, f * y))
    return tuple(PellSolution(a, b) for a, b in sorted(reps))


def _square_d_solutions(d: int, t: int) -> tuple[PellSolution, ...]:
    """All solutions of a^2 - d*b^2 = t with a, b >= 0 when d = r^2 is a square.

    The unit group is trivial, so (a - r*b)(a + r*b) = t is solved by divisor
    pairs; there are finitely many solutions.
    """
    r = isqrt(d)
    assert r * r == d
    out = set()
    for u in _signed_divisors(t):
        v = t // u
        if (u + v) % 2:
            continue
        a = (u + v) // 2
        rb = (v - u) // 2
        if r == 0:
            continue
        if rb % r:
            continue
        b = rb // r
        if a >= 0 and b >= 0:
            out.add((a, b))
    return tuple(PellSolution(a, b) for a, b in sorted(out))


def _signed_divisors(n: int) -> list[int]:
    out = []
    for f in range(1, isqrt(abs(n)) + 1):
        if n % f == 0:
            out.extend({f, -f, n // f, -(n // f)})
    return sorted(set(out))


# ---------------------------------------------------------------------------
# classical-equation operations


def min_positive_solution(eq: PellEquation) -> Optional[PellSolution]:
    """Minimal positive solution (a > 0, b > 0, minimal a), or None."""
    if eq.e1 != 1:
        return generalized_min(eq.e1, eq.e2, eq.t)
    d, t = eq.e2, eq.t
    if is_square(d):
        pos = [s for s in _square_d_solutions(d, t) if s.a > 0 and s.b > 0]
        return min(pos, key=lambda s: s.a) if pos else None
    reps = _class_reps(d, t)
    if not reps:
        return None
    return min(reps, key=lambda s: s.a)


def solvability(eq: PellEquation) -> Solvability:
    """Both flags: any solution at all (b = 0 admitted), and some b > 0 one."""
    if eq.e1 == 1 and is_square(eq.e2):
        sols = _square_d_solutions(eq.e2, eq.t)
        return Solvability(bool(sols), any(s.b > 0 and s.a > 0 for s in sols))
    pos = min_positive_solution(eq) is not None
    # a pure b = 0 solution needs t = e1 * (perfect square)
    b_zero = eq.t > 0 and eq.t % eq.e1 == 0 and is_square(eq.t // eq.e1)
    # a = 0 solutions (-e2*b^2 = t) generate positive ones under the unit action
    return Solvability(pos or b_zero, pos)


def is_solvable(eq: PellEquation) -> bool:
    """True when the equation has any integer solution (b = 0 admitted)."""
    return solvability(eq).any_solution


def solution_classes(d: int, t: int) -> list[SolutionClass]:
    """One minimal-positive representative per solution class, with conjugacy links."""
    reps = _class_reps(d, t)
    index = {(s.a, s.b): i for i, s in enumerate(reps)}
    out = []
    for s in reps:
        conj = _canonical_rep(d, t, s.a, -s.b)
        j = index[conj]
        out.append(SolutionClass(s, j if j != index[(s.a, s.b)] else None))
    return out


def same_class(d: int, t: int, s1: PellSolution, s2: PellSolution) -> bool:
    """Whether two solutions are associated (differ by a unit, up to sign)."""
    for s in (s1, s2):
        if s.a * s.a - d * s.b * s.b != t:
            raise WrongEquation(f"({s.a},{s.b}) does not solve a^2-{d}b^2={t}")
    if is_square(d):
        return (abs(s1.a), abs(s1.b)) == (abs(s2.a), abs(s2.b))
    # s1 ~ s2 iff s1 * conj(s2) / t lies in Z[sqrt(d)] (it then has norm 1)
    x = s1.a * s2.a - d * s1.b * s2.b
    y = s2.a * s1.b - s1.a * s2.b
    return x % abs(t) == 0 and y % abs(t) == 0


def _class_stream(d: int, rep: PellSolution) -> Iterator[PellSolution]:
    u = fundamental_solution(d)
    x, y = rep.a, rep.b
    while True:
        yield PellSolution(x, y)
        x, y = _mul_unit(x, y, d, u)


def solutions_in_order(d: int, t: int, count: int) -> list[PellSolution]:
    """The first `count` positive solutions of a^2 - d*b^2 = t, by increasing a."""
    if count < 1:
        raise ValueError("count must be positive")
    if is_square(d):
        pos = [s for s in _square_d_solutions(d, t) if s.a > 0 and s.b > 0]
        if not pos:
            raise Unsolvable(f"a^2-{d}b^2={t} has no positive solutions")
        return pos[:count]
    reps = _class_reps(d, t)
    if not reps:
        raise Unsolvable(f"a^2-{d}b^2={t} has no positive solutions")
    streams = [_class_stream(d, r) for r in reps]
    merged = heapq.merge(*streams, key=lambda s: s.a)
    out = []
    for s in merged:
        out.append(s)
        if len(out) == count:
            return out
    raise AssertionError("streams are infinite")  # pragma: no cover


def compose_to_unit(e1: int, e2: int, eps: int, s: PellSolution) -> PellSolution:
    """Fundamental solution of a^2 - e1*e2*b^2 = 1 from a minimal solution of
    e1*a^2 - e2*b^2 = eps, namely (e1*a^2 + e2*b^2, 2ab).

    The two degenerate combinations (e1 = eps = 1) and (e2 = -eps = 1) are
    excluded: there the recipe does not produce the fundamental unit.
    """
    if eps not in (-1, 1):
        raise ValueError("eps must be +-1")
    if e1 == 1 and eps == 1:
        raise ExcludedDegenerateCase("e1 = eps = 1 is excluded")
    if e2 == 1 and eps == -1:
        raise ExcludedDegenerateCase("e2 = -eps = 1 is excluded")
    if e1 * s.a * s.a - e2 * s.b * s.b != eps:
        raise WrongEquation(f"({s.a},{s.b}) does not solve {e1}a^2-{e2}b^2={eps}")
    expected = generalized_min(e1, e2, eps)
    if expected != s:
        raise ValueError(f"({s.a},{s.b}) is not the minimal solution; expected {expected}")
    return PellSolution(e1 * s.a * s.a + e2 * s.b * s.b, 2 * s.a * s.b)


# ---------------------------------------------------------------------------
# generalized equation e1*a^2 - e2*b^2 = t
#
# (a, b) <-> (e1*a, b) is a bijection onto the solutions of
# A^2 - (e1*e2)*B^2 = e1*t whose first argument is divisible by e1.


def _orbit_mod_cycle(d: int, rep: PellSolution, e1: int) -> Iterator[PellSolution]:
    """Members of rep's positive orbit whose first argument is divisible by e1.

    Stops silently once the orbit's residues mod e1 start repeating without a
    hit, which bounds the search exactly.
    """
    u = fundamental_solution(d)
    x, y = rep.a, rep.b
    seen = set()
    found = False
    while True:
        if x % e1 == 0:
            # residues mod e1 are purely periodic (the unit acts invertibly),
            # so after one hit the stream keeps hitting forever
            found = True
            yield PellSolution(x, y)
        elif not found:
            key = (x % e1, y % e1)
            if key in seen:
                return
            seen.add(key)
        x, y = _mul_unit(x, y, d, u)


def _generalized_streams(e1: int, e2: int, t: int) -> list[Iterator[PellSolution]]:
    d, big_t = e1 * e2, e1 * t
    streams = []
    for rep in _class_reps(d, big_t):
        def qualify(rep=rep):
            for sol in _orbit_mod_cycle(d, rep, e1):
                yield PellSolution(sol.a // e1, sol.b)

        streams.append(qualify())
    return streams


def generalized_min(e1: int, e2: int, t: int) -> Optional[PellSolution]:
    """Minimal positive solution of e1*a^2 - e2*b^2 = t, or None."""
    if e1 == 1:
        return min_positive_solution(PellEquation.classical(e2, t))
    d, big_t = e1 * e2, e1 * t
    if is_square(d):
        cands = [
            PellSolution(s.a // e1, s.b)
            for s in _square_d_solutions(d, big_t)
            if s.a > 0 and s.b > 0 and s.a % e1 == 0
        ]
        return min(cands, key=lambda s: s.a) if cands else None
    best: Optional[PellSolution] = None
    for stream in _generalized_streams(e1, e2, t):
        first = next(stream, None)
        if first is not None and (best is None or first.a < best.a):
            best = first
    return best


def generalized_solutions(e1: int, e2: int, t: int, count: int) -> list[PellSolution]:
    """The first `count` positive solutions of e1*a^2 - e2*b^2 = t by increasing a."""
    if count < 1:
        raise ValueError("count must be positive")
    d, big_t = e1 * e2, e1 * t
    if is_square(d):
        out = [
            PellSolution(s.a // e1, s.b)
            for s in _square_d_solutions(d, big_t)
            if s.a > 0 and s.b > 0 and s.a % e1 == 0
        ]
        if not out:
            raise Unsolvable(f"{e1}a^2-{e2}b^2={t} has no positive solutions")
        return sorted(out, key=lambda s: s.a)[:count]
    streams = _generalized_streams(e1, e2, t)
    merged = heapq.merge(*streams, key=lambda s: s.a)
    out = []
    for s in merged:
        out.append(s)
        if len(out) == count:
            break
    if not out:
        raise Unsolvable(f"{e1}a^2-{e2}b^2={t} has no positive solutions")
    return out


def generalized_solutions_up_to(e1: int, e2: int, t: int, a_max: int) -> list[PellSolution]:
    """All positive solutions with a <= a_max, by increasing a."""
    d, big_t = e1 * e2, e1 * t
    if is_square(d):
        return [
            PellSolution(s.a // e1, s.b)
            for s in _square_d_solutions(d, big_t)
            if s.a > 0 and s.b > 0 and s.a % e1 == 0 and s.a // e1 <= a_max
        ]
    out = []
    for stream in _generalized_streams(e1, e2, t):
        for s in stream:
            if s.a > a_max:
                break
            out.append(s)
    return sorted(set(out), key=lambda s: (s.a, s.b))
