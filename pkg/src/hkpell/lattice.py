"""Block-sum lattices, discriminant groups, and primitive-vector orbit keys.

Lattices are formal orthogonal sums of standard blocks: the hyperbolic plane
U, the negative E8 lattice, rank-1 blocks I1(t), and small explicit Gram
blocks.  Discriminant groups carry their Q/2Z-valued quadratic form exactly,
as Fractions.  Orbits of primitive vectors in a lattice containing two
orthogonal hyperbolic planes are classified by the square together with the
order and quadratic value of the discriminant class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import (gcd_all, is_square_mod, mod1, mod2, omega,
                    prime_factors, v_p)


class LatticeError(Exception):
    pass


class ZeroVector(LatticeError):
    pass


class NotPrimitive(LatticeError):
    pass


class NoDoubleU(LatticeError):
    """The ambient lattice does not visibly contain U + U."""


class IncompatibleDivisibility(LatticeError):
    """No primitive vector with the requested square and divisibility exists."""


# ---------------------------------------------------------------------------
# blocks

_U_GRAM = ((0, 1), (1, 0))

# E8 Cartan matrix (chain 1-3-4-5-6-7-8 with 2 attached to 4), negated
_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def _e8_minus_gram() -> tuple[tuple[int, ...], ...]:
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for i, j in _E8_EDGES:
        g[i - 1][j - 1] = g[j - 1][i - 1] = 1
    return tuple(tuple(row) for row in g)


@dataclass(frozen=True)
class Block:
    name: str
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.gram)
        for i, row in enumerate(self.gram):
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
            if row[i] % 2:
                raise ValueError("lattice must be even")
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return _det(self.gram)


U = Block("U", _U_GRAM)
E8_MINUS = Block("E8(-1)", _e8_minus_gram())


def I1(t: int) -> Block:
    if t == 0 or t % 2:
        raise ValueError("I1(t) needs a nonzero even t")
    return Block(f"I1({t})", ((t,),))


def gram_block(rows) -> Block:
    return Block("gram", tuple(tuple(r) for r in rows))


def _det(m) -> int:
    return _det_cached(tuple(tuple(row) for row in m))


def _det_cached(m, _cache={}) -> int:
    if m in _cache:
        return _cache[m]
    n = len(m)
    if n == 1:
        out = m[0][0]
    else:
        out = 0
        for j in range(n):
            minor = tuple(row[:j] + row[j + 1:] for row in m[1:])
            out += (-1) ** j * m[0][j] * _det_cached(minor)
    _cache[m] = out
    return out


@dataclass(frozen=True)
class LatticeSpec:
    blocks: tuple[Block, ...]

    @property
    def rank(self) -> int:
        return sum(b.rank for b in self.blocks)

    @property
    def det(self) -> int:
        out = 1
        for b in self.blocks:
            out *= b.det
        return out

    def gram(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        g = [[0] * n for _ in range(n)]
        off = 0
        for b in self.blocks:
            for i in range(b.rank):
                for j in range(b.rank):
                    g[off + i][off + j] = b.gram[i][j]
            off += b.rank
        return tuple(tuple(row) for row in g)

    def vector(self, coords) -> "LatticeVector":
        return LatticeVector(self, tuple(coords))

    def u_block_count(self) -> int:
        return sum(1 for b in self.blocks if b.name == "U")


@dataclass(frozen=True)
class LatticeVector:
    lattice: LatticeSpec
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise ValueError("coordinate length does not match the lattice rank")

    def pairings(self) -> tuple[int, ...]:
        g = self.lattice.gram()
        return tuple(sum(row[j] * self.coords[j] for j in range(len(row))) for row in g)

    @property
    def square(self) -> int:
        return sum(p * c for p, c in zip(self.pairings(), self.coords))

    @property
    def is_primitive(self) -> bool:
        return gcd_all(*self.coords) == 1


def divisibility(v: LatticeVector) -> int:
    """Positive generator of the pairing ideal v . Lambda."""
    if all(c == 0 for c in v.coords):
        raise ZeroVector("divisibility of the zero vector is undefined")
    return gcd_all(*v.pairings())


# ---------------------------------------------------------------------------
# discriminant groups


def _diagonalize(a, u, v):
    """Reduce a to diagonal form in place, tracking row ops in u, col ops in v."""
    n = len(a)

    def row_op(i, j, c):  # row_i += c * row_j
        for k in range(n):
            a[i][k] += c * a[j][k]
            u[i][k] += c * u[j][k]

    def col_op(i, j, c):  # col_i += c * col_j
        for k in range(n):
            a[k][i] += c * a[k][j]
            v[k][i] += c * v[k][j]

    for t in range(n):
        while True:
            entries = [(abs(a[i][j]), i, j)
                       for i in range(t, n) for j in range(t, n) if a[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for mat in (a, v):
                    for row in mat:
                        row[t], row[pj] = row[pj], row[t]
            done = True
            for i in range(t + 1, n):
                q = a[i][t] // a[t][t]
                if q:
                    row_op(i, t, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    col_op(j, t, -q)
                if a[t][j]:
                    done = False
            if done:
                break


def smith_normal_form(m):
    """(d, u, v) with u*m*v = diag(d), u and v unimodular; d_i divides d_{i+1}."""
    a = [list(row) for row in m]
    n = len(a)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    _diagonalize(a, u, v)
    # enforce the divisibility chain: pull an offending entry into an earlier
    # column and re-reduce (each pass shrinks the earlier pivot to a gcd)
    while True:
        fixed = True
        for t in range(n - 1):
            dt, dn = a[t][t], a[t + 1][t + 1]
            if dt == 0 and dn != 0:
                for mat in (a, v):
                    for row in mat:
                        row[t], row[t + 1] = row[t + 1], row[t]
                a[t], a[t + 1] = a[t + 1], a[t]
                u[t], u[t + 1] = u[t + 1], u[t]
                fixed = False
            elif dt and dn % dt:
                for k in range(n):
                    a[k][t] += a[k][t + 1]
                    v[k][t] += v[k][t + 1]
                _diagonalize(a, u, v)
                fixed = False
        if fixed:
            break
    d = [a[i][i] for i in range(n)]
    return d, u, v


@dataclass(frozen=True)
class DiscGroup:
    """Finite quadratic group as a product of cyclic groups.

    orders[i] is the order of the i-th generator, gen_q[i] its quadratic value
    in Q/2Z (stored in [0, 2)), gen_pair the bilinear pairings in Q/Z.
    """

    orders: tuple[int, ...]
    gen_q: tuple[Fraction, ...]
    gen_pair: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        out = 1
        for d in self.orders:
            out = out * d // gcd(out, d)
        return out

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Orders rewritten so that each divides the next."""
        primary: dict[int, list[int]] = {}
        for d in self.orders:
            for p, e in prime_factors(d):
                primary.setdefault(p, []).append(p ** e)
        slots: list[int] = []
        for p, powers in primary.items():
            powers.sort(reverse=True)
            for i, q in enumerate(powers):
                if i < len(slots):
                    slots[i] *= q
                else:
                    slots.append(q)
        return tuple(sorted(slots))

    def elements(self):
        return itertools.product(*(range(d) for d in self.orders))

    def element_order(self, el) -> int:
        out = 1
        for c, d in zip(el, self.orders):
            k = d // gcd(c, d)
            out = out * k // gcd(out, k)
        return out

    def qbar(self, el) -> Fraction:
        total = Fraction(0)
        for i, c in enumerate(el):
            total += c * c * self.gen_q[i]
            for j in range(i + 1, len(el)):
                total += 2 * c * el[j] * self.gen_pair[i][j]
        return mod2(total)

    def pairing(self, el1, el2) -> Fraction:
        total = Fraction(0)
        for i, c in enumerate(el1):
            for j, e in enumerate(el2):
                total += c * e * self.gen_pair[i][j]
        return mod1(total)

    def negate(self, el) -> tuple[int, ...]:
        return tuple((-c) % d for c, d in zip(el, self.orders))


def disc_group_of_gram(gram) -> tuple[DiscGroup, tuple[tuple[Fraction, ...], ...]]:
    """Discriminant group of an even Gram block, with rational generator lifts.

    The second value gives each generator as a vector in the block's dual,
    expressed in the block basis.
    """
    n = len(gram)
    d, _, v = smith_normal_form(gram)
    orders, vecs = [], []
    for i in range(n):
        di = abs(d[i])
        if di == 1:
            continue
        vec = tuple(Fraction(v[k][i], di) for k in range(n))
        orders.append(di)
        vecs.append(vec)

    def q_of(x):
        return sum(x[i] * gram[i][j] * x[j] for i in range(n) for j in range(n))

    def b_of(x, y):
        return sum(x[i] * gram[i][j] * y[j] for i in range(n) for j in range(n))

    gen_q = tuple(mod2(q_of(x)) for x in vecs)
    gen_pair = tuple(tuple(mod1(b_of(x, y)) for y in vecs) for x in vecs)
    return DiscGroup(tuple(orders), gen_q, gen_pair), tuple(vecs)


def disc_group_of(spec: LatticeSpec) -> DiscGroup:
    """Discriminant group of a block-sum lattice (blockwise; U and E8 drop out)."""
    orders: list[int] = []
    q: list[Fraction] = []
    pair_blocks: list[tuple[tuple[Fraction, ...], ...]] = []
    for b in spec.blocks:
        if abs(b.det) == 1:
            continue
        sub, _ = disc_group_of_gram(b.gram)
        orders.extend(sub.orders)
        q.extend(sub.gen_q)
        pair_blocks.append(sub.gen_pair)
    # assemble the block-diagonal pairing matrix
    total = len(orders)
    pair = [[Fraction(0)] * total for _ in range(total)]
    off = 0
    for blockpair in pair_blocks:
        k = len(blockpair)
        for i in range(k):
            for j in range(k):
                pair[off + i][off + j] = blockpair[i][j]
        off += k
    return DiscGroup(tuple(orders), tuple(q), tuple(tuple(r) for r in pair))


# ---------------------------------------------------------------------------
# Eichler orbit keys


@dataclass(frozen=True)
class OrbitKey:
    """Square, order of the discriminant class, and its quadratic value."""

    square: int
    star_order: int
    star_q: Fraction

    def __post_init__(self):
        if self.star_order < 1:
            raise ValueError("star_order must be positive")
        expected = mod2(Fraction(self.square, self.star_order ** 2))
        if mod2(self.star_q) != expected:
            raise ValueError("star_q must be square/star_order^2 modulo 2")


def orbit_key(v: LatticeVector) -> OrbitKey:
    if not v.is_primitive:
        raise NotPrimitive("orbit keys are defined for primitive vectors")
    if v.lattice.u_block_count() < 2:
        raise NoDoubleU("orbit classification requires two hyperbolic planes")
    div = divisibility(v)
    return OrbitKey(v.square, div, mod2(Fraction(v.square, div * div)))


def exists_primitive_vector(spec: LatticeSpec, key: OrbitKey) -> bool:
    """Whether the lattice contains a primitive vector realizing the key.

    In a lattice containing two orthogonal hyperbolic planes this holds
    exactly when the discriminant group has an element of the stated order
    whose quadratic value matches square/order^2 modulo 2.
    """
    if spec.u_block_count() < 2:
        raise NoDoubleU("existence test requires two hyperbolic planes")
    if key.square % 2:
        return False
    want = mod2(Fraction(key.square, key.star_order ** 2))
    dg = disc_group_of(spec)
    for el in dg.elements():
        if dg.element_order(el) == key.star_order and dg.qbar(el) == want:
            return True
    return False


# ---------------------------------------------------------------------------
# the standard lattices


def k3_lattice() -> LatticeSpec:
    return LatticeSpec((U, U, U, E8_MINUS, E8_MINUS))


def extended_k3_lattice() -> LatticeSpec:
    return LatticeSpec((U, U, U, U, E8_MINUS, E8_MINUS))


def k3_polarized_orthogonal(e: int) -> LatticeSpec:
    """Orthogonal of a degree-2e polarization class in the K3 lattice."""
    if e < 1:
        raise ValueError("e must be positive")
    return LatticeSpec((U, U, E8_MINUS, E8_MINUS, I1(-2 * e)))


def hilbert_scheme_lattice(m: int) -> LatticeSpec:
    """Second cohomology of a 2m-dimensional manifold of K3^[m]-type."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return LatticeSpec((U, U, U, E8_MINUS, E8_MINUS, I1(-2 * (m - 1))))


def polarized_orthogonal(m: int, n: int, gamma: int) -> LatticeSpec:
    """Orthogonal of a square-2n, divisibility-gamma polarization in K3^[m] type.

    gamma = 1 gives U^2 + E8(-1)^2 + I1(-(2m-2)) + I1(-2n); gamma = 2 (which
    requires n + m = 1 mod 4) glues the two rank-1 pieces into a 2x2 block.
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    base = (U, U, E8_MINUS, E8_MINUS)
    if gamma == 1:
        return LatticeSpec(base + (I1(-(2 * m - 2)), I1(-2 * n)))
    if gamma == 2:
        if (n + m) % 4 != 1:
            raise IncompatibleDivisibility(
                "divisibility 2 requires n + m = 1 (mod 4)")
        p = m - 1
        q = (n + m - 1) // 2
        return LatticeSpec(base + (gram_block(((-2 * p, -p), (-p, -q))),))
    raise ValueError("gamma must be 1 or 2")


def disc_group(m: int, n: int, gamma: int) -> DiscGroup:
    """Discriminant group of the polarized orthogonal, with standard generators.

    For gamma = 1 the generators are the duals of the two rank-1 blocks; for
    gamma = 2 closed-form generators are used where available (n odd, or
    n = m - 1) and Smith-form generators otherwise.
    """
    p = m - 1
    if gamma == 1:
        return DiscGroup(
            (2 * p, 2 * n),
            (mod2(Fraction(-1, 2 * p)), mod2(Fraction(-1, 2 * n))),
            ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))),
        )
    spec = polarized_orthogonal(m, n, gamma)  # validates the congruence
    if n % 2 == 1:
        orders = tuple(d for d in (p, n) if d > 1)
        qs = tuple(mod2(Fraction(-2, d)) for d in (p, n) if d > 1)
        zero = tuple(tuple(Fraction(0) for _ in orders) for _ in orders)
        return DiscGroup(orders, qs, zero)
    if n == p:
        return DiscGroup(
            (n, n),
            (mod2(Fraction(-1, n)), mod2(Fraction(-1, n))),
            ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))),
        )
    return disc_group_of(spec)


# ---------------------------------------------------------------------------
# numerics of moduli spaces


def monodromy_index(m: int) -> int:
    """Index of the monodromy group inside the positivity-preserving isometries."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return 2 ** max(omega(m - 1) - 1, 0)


@dataclass(frozen=True)
class ComponentCount:
    count: int | None
    note: str = ""


def moduli_component_count(m: int, n: int, gamma: int) -> ComponentCount:
    """Number of irreducible components of the polarized moduli space.

    Returns count None when the parameters fall outside the tabulated cases.
    """
    if m < 2 or n < 1 or gamma < 1:
        raise ValueError("need m >= 2, n >= 1, gamma >= 1")
    if (2 * n) % gamma or (2 * m - 2) % gamma:
        raise ValueError("gamma must divide both 2n and 2m-2")
    p = m - 1
    if gamma == 1:
        return ComponentCount(1)
    if gamma == 2:
        if (n + m) % 4 == 1:
            return ComponentCount(1)
        return ComponentCount(None, "divisibility 2 outside n+m=1 (mod 4)")
    if gamma == 3 and p % 9 == 0 and n % 9 == 0:
        return ComponentCount(1)
    caveat = "tabulated case; source flags possible redundant hypotheses"
    if gamma == 4:
        if v_p(p, 2) == 2 and v_p(n, 2) == 2 and (n + m) % 16 == 1:
            return ComponentCount(1, caveat)
        if v_p(p, 2) == 3 and v_p(n, 2) == 3:
            return ComponentCount(1, caveat)
        if p % 16 == 0 and n % 16 == 0:
            return ComponentCount(1, caveat)
        return ComponentCount(None)
    fac = prime_factors(gamma)
    if len(fac) == 1:
        q, a = fac[0]
        if q % 2 == 1 and v_p(p, q) == a and v_p(n, q) == a:
            unit = (p // gamma) * pow(n // gamma, -1, gamma) % gamma
            if is_square_mod(-unit % gamma, gamma):
                return ComponentCount(1, caveat)
        if q == 2 and a >= 2 and v_p(p, 2) == a - 1 and v_p(n, 2) == a - 1:
            mod = 2 ** (a + 1)
            unit = (p >> (a - 1)) * pow(n >> (a - 1), -1, mod) % mod
            if is_square_mod(-unit % mod, mod):
                return ComponentCount(1, caveat)
    if all(q % 2 == 1 and e == 1 for q, e in fac) and len(fac) >= 1:
        if p % gamma == 0 and n % gamma == 0:
            a, b = p // gamma, n // gamma
            if gcd(gcd(a, b), gamma) == 1 and is_square_mod(-a * b % n, n):
                return ComponentCount(2 ** (len(fac) - 1))
    return ComponentCount(None)


def strange_dual_params(m: int, n: int, gamma: int) -> tuple[int, int, int]:
    """The dual parameter triple (n+1, m-1, gamma), with the lattice symmetry verified."""
    if gamma not in (1, 2):
        raise ValueError("gamma must be 1 or 2")
    source = polarized_orthogonal(m, n, gamma)
    dual = (n + 1, m - 1, gamma)
    target = polarized_orthogonal(*dual)
    if gamma == 1:
        if sorted(b.gram for b in source.blocks) != sorted(b.gram for b in target.blocks):
            raise LatticeError("block sums fail to match under the symmetry")
        return dual
    # gamma = 2: the substitution (x, y) -> (-x, 2x + y) carries one Gram
    # block to the other
    b1 = source.blocks[-1].gram
    b2 = target.blocks[-1].gram
    s = ((-1, 0), (2, 1))
    carried = tuple(
        tuple(
            sum(s[k][i] * b1[k][l] * s[l][j] for k in range(2) for l in range(2))
            for j in range(2)
        )
        for i in range(2)
    )
    if carried != b2:
        raise LatticeError("Gram blocks fail to match under the base change")
    return dual


def polarization_determined(m: int, n: int, gamma: int) -> bool:
    """Whether (square, divisibility) already pins down the polarization orbit."""
    if (2 * n) % gamma or (2 * m - 2) % gamma:
        raise ValueError("gamma must divide both 2n and 2m-2")
    if gamma == 2:
        return True
    return gcd(gcd(2 * n // gamma, (2 * m - 2) // gamma), gamma) == 1


def heegner_finiteness_bound(m: int, n: int, gamma: int, d: int) -> int:
    """Cap d * |disc| on |kappa^2| over the classes cutting discriminant-d divisors."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    disc = (2 * n) * (2 * m - 2) // (gamma * gamma)
    return d * disc
