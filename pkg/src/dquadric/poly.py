"""Sparse multivariate polynomials over a FieldTower.

Terms map exponent tuples to nonzero AlgebraicElement coefficients; all
arithmetic is exact.  Includes power sums, linear substitution, derivatives,
determinants of polynomial matrices and exact 2-jets at a point.
"""
from __future__ import annotations

from itertools import combinations_with_replacement

from .numeric import AlgebraicElement, FieldTower, TowerMismatch
from . import linalg


class SingularSubstitution(ValueError):
    pass


class NonSquare(ValueError):
    pass


class MultiPoly:
    __slots__ = ('tower', 'arity', 'terms')

    def __init__(self, tower: FieldTower, arity: int, terms: dict | None = None):
        self.tower = tower
        self.arity = arity
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if not c.is_zero():
                    assert len(e) == arity
                    self.terms[e] = c

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, tower, arity):
        return cls(tower, arity)

    @classmethod
    def const(cls, tower, arity, value):
        c = tower._coerce(value)
        return cls(tower, arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, tower, arity, i):
        e = tuple(1 if j == i else 0 for j in range(arity))
        return cls(tower, arity, {e: tower.one()})

    def _co(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.tower.levels != self.tower.levels or other.arity != self.arity:
                raise TowerMismatch("polynomials over different rings")
            return other
        return MultiPoly.const(self.tower, self.arity, other)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = self._co(other)
        terms = dict(self.terms)
        for e, c in o.terms.items():
            if e in terms:
                s = terms[e] + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        r = MultiPoly(self.tower, self.arity)
        r.terms = terms
        return r

    __radd__ = __add__

    def __neg__(self):
        r = MultiPoly(self.tower, self.arity)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, AlgebraicElement)) or not isinstance(other, MultiPoly):
            c = self.tower._coerce(other)
            if c.is_zero():
                return MultiPoly.zero(self.tower, self.arity)
            r = MultiPoly(self.tower, self.arity)
            r.terms = {e: v * c for e, v in self.terms.items()}
            return r
        o = self._co(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                if e in terms:
                    s = terms[e] + p
                    if s.is_zero():
                        del terms[e]
                    else:
                        terms[e] = s
                elif not p.is_zero():
                    terms[e] = p
        r = MultiPoly(self.tower, self.arity)
        r.terms = terms
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int):
        assert n >= 0
        result = MultiPoly.const(self.tower, self.arity, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- queries -----------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            other = self._co(other)
        return self.tower.levels == other.tower.levels and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((e, c.rep) for e, c in self.terms.items()))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def __repr__(self):
        if not self.terms:
            return '0'
        parts = []
        for e in sorted(self.terms, key=lambda t: (-sum(t), t)):
            mono = '*'.join(f'x{i}' + (f'^{k}' if k > 1 else '')
                            for i, k in enumerate(e) if k)
            c = repr(self.terms[e])
            parts.append(f'({c})' + ('*' + mono if mono else ''))
        return ' + '.join(parts)

    # -- calculus -----------------------------------------------------------------

    def partial(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.arity:
            raise IndexError("variable index out of range")
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            nc = c * e[i]
            if ne in terms:
                terms[ne] = terms[ne] + nc
            else:
                terms[ne] = nc
        r = MultiPoly(self.tower, self.arity)
        r.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        return r

    def gradient(self):
        return [self.partial(i) for i in range(self.arity)]

    def evaluate(self, point) -> AlgebraicElement:
        point = [self.tower._coerce(p) for p in point]
        pows = [{0: self.tower.one()} for _ in range(self.arity)]

        def pw(i, k):
            cache = pows[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * point[i]
            return cache[k]

        acc = self.tower.zero()
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            acc = acc + t
        return acc

    # -- substitution ----------------------------------------------------------------

    def substitute(self, images) -> "MultiPoly":
        """General substitution x_i -> images[i] (MultiPoly over the same ring)."""
        assert len(images) == self.arity
        out_arity = images[0].arity
        pows = [{0: MultiPoly.const(self.tower, out_arity, 1)} for _ in range(self.arity)]

        def pw(i, k):
            cache = pows[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * images[i]
            return cache[k]

        acc = MultiPoly.zero(self.tower, out_arity)
        for e, c in self.terms.items():
            t = MultiPoly.const(self.tower, out_arity, c)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            acc = acc + t
        return acc

    def substitute_linear(self, A) -> "MultiPoly":
        """Compose with the linear change x_i -> sum_j A[i][j] x_j.

        A must be square of size arity and invertible over the tower.
        """
        n = self.arity
        assert len(A) == n and all(len(row) == n for row in A)
        rows = [[self.tower._coerce(a) for a in row] for row in A]
        if linalg.det(rows).is_zero():
            raise SingularSubstitution("substitution matrix is singular")
        images = []
        for i in range(n):
            img = MultiPoly.zero(self.tower, n)
            for j in range(n):
                if not rows[i][j].is_zero():
                    img = img + MultiPoly.variable(self.tower, n, j) * rows[i][j]
            images.append(img)
        return self.substitute(images)

    # -- jets ----------------------------------------------------------------------------

    def jet2(self, point):
        """Exact Taylor data at an affine point up to order 2.

        Returns (constant, linear, quadratic) with linear a dict {i: coeff}
        and quadratic a dict {(i,j) i<=j: coeff} for the expansion in
        deviations e_i = x_i - point[i].
        """
        point = [self.tower._coerce(p) for p in point]
        zero = self.tower.zero()
        const = zero
        lin = {}
        quad = {}
        pows = [{0: self.tower.one()} for _ in range(self.arity)]

        def pw(i, k):
            cache = pows[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * point[i]
            return cache[k]

        for e, c in self.terms.items():
            # per-variable truncated binomials (P_i + e_i)^{k}
            active = [(i, k) for i, k in enumerate(e) if k]
            # order 0
            t0 = c
            for i, k in active:
                t0 = t0 * pw(i, k)
            const = const + t0
            # order 1: pick one variable to differentiate
            for i, k in active:
                t1 = c * k
                for j, kj in active:
                    t1 = t1 * pw(j, kj - 1 if j == i else kj)
                if not t1.is_zero():
                    lin[i] = lin.get(i, zero) + t1
            # order 2
            for ai in range(len(active)):
                i, k = active[ai]
                if k >= 2:
                    t2 = c * (k * (k - 1) // 2)
                    for j, kj in active:
                        t2 = t2 * pw(j, kj - 2 if j == i else kj)
                    if not t2.is_zero():
                        key = (i, i)
                        quad[key] = quad.get(key, zero) + t2
                for bi in range(ai + 1, len(active)):
                    j, kj = active[bi]
                    t2 = c * (k * kj)
                    for m, km in active:
                        if m == i:
                            t2 = t2 * pw(m, km - 1)
                        elif m == j:
                            t2 = t2 * pw(m, km - 1)
                        else:
                            t2 = t2 * pw(m, km)
                    if not t2.is_zero():
                        key = (i, j) if i <= j else (j, i)
                        quad[key] = quad.get(key, zero) + t2
        lin = {i: v for i, v in lin.items() if not v.is_zero()}
        quad = {k: v for k, v in quad.items() if not v.is_zero()}
        return const, lin, quad

    # -- exact division (for fraction-free elimination) ------------------------------------

    def leading(self):
        """(exponent, coeff) for the graded-lex leading term."""
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient self/other; raises ValueError if not divisible."""
        o = self._co(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = self
        quot = MultiPoly.zero(self.tower, self.arity)
        le, lc = o.leading()
        lc_inv = lc.invert()
        while not rem.is_zero():
            re, rc = rem.leading()
            qe = tuple(a - b for a, b in zip(re, le))
            if any(k < 0 for k in qe):
                raise ValueError("not divisible")
            qc = rc * lc_inv
            mono = MultiPoly(self.tower, self.arity, {qe: qc})
            quot = quot + mono
            rem = rem - mono * o
        return quot


def power_sum(k: int, n: int, tower: FieldTower) -> MultiPoly:
    """sigma_k = x_0^k + ... + x_{n-1}^k."""
    if k < 1 or n < 1:
        raise ValueError("power_sum requires k >= 1 and n >= 1")
    terms = {}
    one = tower.one()
    for i in range(n):
        e = tuple(k if j == i else 0 for j in range(n))
        terms[e] = one
    return MultiPoly(tower, n, terms)


def monomials(tower: FieldTower, arity: int, degree: int):
    """All monomials of the given total degree, in deterministic order."""
    out = []
    for combo in combinations_with_replacement(range(arity), degree):
        e = [0] * arity
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class PolyMatrix:
    """Rectangular matrix of MultiPoly entries sharing arity and tower."""

    __slots__ = ('rows',)

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        assert self.rows
        n = len(self.rows[0])
        t0 = self.rows[0][0]
        for r in self.rows:
            assert len(r) == n
            for p in r:
                assert p.arity == t0.arity and p.tower.levels == t0.tower.levels

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def det(self) -> MultiPoly:
        """Exact determinant by cofactor expansion, expanding along the line
        with the fewest total terms."""
        n, m = self.shape
        if n != m:
            raise NonSquare("determinant of a non-square matrix")
        if n > 6:
            raise NonSquare("cofactor determinant supported up to size 6")
        return _cofactor_det(self.rows)

    def det_fraction_free(self) -> MultiPoly:
        """Determinant by fraction-free (Bareiss) elimination; cross-oracle."""
        n, m = self.shape
        if n != m:
            raise NonSquare("determinant of a non-square matrix")
        M = [row[:] for row in self.rows]
        t0 = M[0][0]
        sign = 1
        prev = MultiPoly.const(t0.tower, t0.arity, 1)
        for k in range(n - 1):
            if M[k][k].is_zero():
                piv = next((r for r in range(k + 1, n) if not M[r][k].is_zero()), None)
                if piv is None:
                    return MultiPoly.zero(t0.tower, t0.arity)
                M[k], M[piv] = M[piv], M[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                    M[i][j] = num.exact_div(prev)
            prev = M[k][k]
        d = M[n - 1][n - 1]
        return -d if sign < 0 else d


def _cofactor_det(rows):
    n = len(rows)
    t0 = rows[0][0]

    cache = {}

    def minor(rset, cset):
        key = (rset, cset)
        if key in cache:
            return cache[key]
        rs = [i for i in range(n) if rset & (1 << i)]
        cs = [j for j in range(n) if cset & (1 << j)]
        if len(rs) == 1:
            res = rows[rs[0]][cs[0]]
        else:
            # expand along the row with fewest terms
            best_r, best_cost = rs[0], None
            for r in rs:
                cost = sum(len(rows[r][c].terms) for c in cs)
                if best_cost is None or cost < best_cost:
                    best_r, best_cost = r, cost
            res = MultiPoly.zero(t0.tower, t0.arity)
            ri = rs.index(best_r)
            for k, c in enumerate(cs):
                p = rows[best_r][c]
                if p.is_zero():
                    continue
                sub = minor(rset & ~(1 << best_r), cset & ~(1 << c))
                term = p * sub
                if (ri + k) % 2:
                    term = -term
                res = res + term
        cache[key] = res
        return res

    full = (1 << n) - 1
    return minor(full, full)
