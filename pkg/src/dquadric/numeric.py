"""Exact arithmetic over Q and towers of algebraic extensions.

Elements live in iterated quotient rings Q[t1]/(r1)[t2]/(r2)... with monic
relation polynomials.  Relations need not be irreducible: inversion follows
the dynamic-evaluation discipline, raising ZeroDivisor with the discovered
factor so a caller can split the tower and retry per branch.

Element values are stored as flat coefficient vectors over the product basis
(little-endian mixed radix, first level fastest); products go through a
per-tower cached table of basis products.  Relation polynomials and a few
slow paths (extended gcd, square roots, ring maps) use the equivalent nested
list-of-lists form.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

MAX_TOTAL_DEGREE = 64

_Q0 = QQ(0)
_Q1 = QQ(1)


def qq(num, den=1):
    return QQ(num, den)


class NonMonicRelation(ValueError):
    pass


class DegreeTooLarge(ValueError):
    pass


class ZeroElement(ZeroDivisionError):
    pass


class TowerMismatch(ValueError):
    pass


class ZeroDivisor(ArithmeticError):
    """A nonzero, noninvertible element was inverted.

    Carries the tower, the level index whose relation was found reducible and
    the discovered monic factor (tuple of nested coefficient reps over the
    subtower, constant first, leading 1 implied).
    """

    def __init__(self, tower, level, factor):
        self.tower = tower
        self.level = level
        self.factor = factor
        name = tower.levels[level][0]
        super().__init__(
            f"zero divisor: relation for '{name}' splits off a degree-{len(factor)} factor")


# ---------------------------------------------------------------------------
# nested representation arithmetic (relations, gcd, sqrt internals)

def _zero(tower, h):
    if h == 0:
        return _Q0
    d = tower.levels[h - 1][2]
    z = _zero(tower, h - 1)
    return (z,) * d


def _one(tower, h):
    if h == 0:
        return _Q1
    below = _one(tower, h - 1)
    z = _zero(tower, h - 1)
    d = tower.levels[h - 1][2]
    return (below,) + (z,) * (d - 1)


def _from_q(tower, h, q):
    if h == 0:
        return QQ(q)
    below = _from_q(tower, h - 1, q)
    z = _zero(tower, h - 1)
    d = tower.levels[h - 1][2]
    return (below,) + (z,) * (d - 1)


def _lift(tower, h, rep):
    z = _zero(tower, h - 1)
    d = tower.levels[h - 1][2]
    return (rep,) + (z,) * (d - 1)


def _is_zero(rep):
    if isinstance(rep, tuple):
        return all(_is_zero(c) for c in rep)
    return rep == 0


def _add(tower, h, a, b):
    if h == 0:
        return a + b
    return tuple(_add(tower, h - 1, x, y) for x, y in zip(a, b))


def _sub(tower, h, a, b):
    if h == 0:
        return a - b
    return tuple(_sub(tower, h - 1, x, y) for x, y in zip(a, b))


def _neg(tower, h, a):
    if h == 0:
        return -a
    return tuple(_neg(tower, h - 1, x) for x in a)


def _scale(tower, h, a, q):
    if h == 0:
        return a * q
    return tuple(_scale(tower, h - 1, x, q) for x in a)


def _mul_nested(tower, h, a, b):
    if h == 0:
        return a * b
    d = tower.levels[h - 1][2]
    z = _zero(tower, h - 1)
    conv = [z] * (2 * d - 1)
    for i, ai in enumerate(a):
        if _is_zero(ai):
            continue
        for j, bj in enumerate(b):
            if _is_zero(bj):
                continue
            conv[i + j] = _add(tower, h - 1, conv[i + j],
                               _mul_nested(tower, h - 1, ai, bj))
    return _reduce_mod_rel(tower, h, conv)


def _reduce_mod_rel(tower, h, coeffs):
    rel = tower.levels[h - 1][1]
    d = tower.levels[h - 1][2]
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[i]
        if _is_zero(c):
            continue
        for j, rj in enumerate(rel):
            if not _is_zero(rj):
                coeffs[i - d + j] = _sub(tower, h - 1, coeffs[i - d + j],
                                         _mul_nested(tower, h - 1, c, rj))
    while len(coeffs) < d:
        coeffs.append(_zero(tower, h - 1))
    return tuple(coeffs[:d])


def _poly_deg(p):
    for i in range(len(p) - 1, -1, -1):
        if not _is_zero(p[i]):
            return i
    return -1


def _gen_rep(tower, h, level_index):
    d = tower.levels[level_index][2]
    z = _zero(tower, level_index)
    rep = (z, _one(tower, level_index)) + (z,) * (d - 2)
    for lv in range(level_index + 2, h + 1):
        rep = _lift(tower, lv, rep)
    return rep


# ---------------------------------------------------------------------------
# flat <-> nested: depth-first leaf order equals little-endian mixed radix

def _collect(rep, h, out):
    if h == 0:
        out.append(rep)
        return
    for c in rep:
        _collect(c, h - 1, out)


def flatten(tower, h, rep):
    out = []
    _collect(rep, h, out)
    return out


def _unflatten(tower, h, flat, start):
    if h == 0:
        return flat[start], start + 1
    d = tower.levels[h - 1][2]
    parts = []
    pos = start
    for _ in range(d):
        sub, pos = _unflatten(tower, h - 1, flat, pos)
        parts.append(sub)
    return tuple(parts), pos


def unflatten(tower, h, flat):
    rep, pos = _unflatten(tower, h, flat, 0)
    assert pos == len(flat)
    return rep


# ---------------------------------------------------------------------------
# multiplication engine

class _Engine:
    __slots__ = ('D', 'dims', 'table')

    def __init__(self, tower):
        h = tower.height()
        self.dims = [lv[2] for lv in tower.levels]
        self.D = math.prod(self.dims) if self.dims else 1
        basis = []
        for idx in range(self.D):
            rem = idx
            rep = _one(tower, h)
            for k, d in enumerate(self.dims):
                e = rem % d
                rem //= d
                if e:
                    g = _gen_rep(tower, h, k)
                    for _ in range(e):
                        rep = _mul_nested(tower, h, rep, g)
            basis.append(rep)
        table = []
        for i in range(self.D):
            row = []
            for j in range(i + 1):
                prod = _mul_nested(tower, h, basis[i], basis[j])
                flat = flatten(tower, h, prod)
                row.append(tuple((k, q) for k, q in enumerate(flat) if q != 0))
            table.append(row)
        self.table = table

    def mul(self, fa, fb):
        acc = [_Q0] * self.D
        table = self.table
        for i, qa in enumerate(fa):
            if qa == 0:
                continue
            ti = table[i]
            for j, qb in enumerate(fb):
                if qb == 0:
                    continue
                row = ti[j] if j <= i else table[j][i]
                c = qa * qb
                for k, q in row:
                    acc[k] += c * q
        return tuple(acc)

    def mul_matrix(self, fa):
        cols = []
        for j in range(self.D):
            col = [_Q0] * self.D
            for i, qa in enumerate(fa):
                if qa == 0:
                    continue
                row = self.table[i][j] if j <= i else self.table[j][i]
                for k, q in row:
                    col[k] += qa * q
            cols.append(col)
        return cols


_ENGINES: dict = {}


def _engine(levels):
    eng = _ENGINES.get(levels)
    if eng is None:
        eng = _Engine(FieldTower(levels))
        _ENGINES[levels] = eng
    return eng


# ---------------------------------------------------------------------------

class FieldTower:
    """An iterated extension of Q by monic relation polynomials.

    levels: tuple of (name, rel_coeffs, degree); rel_coeffs are the non-leading
    coefficients (constant first) as nested reps over the tower below that
    level.  known_roots records elements (flat reps) discovered as roots of
    split-off linear factors, for reuse by adjoin_root.
    """

    __slots__ = ('levels', 'known_roots', '_names', '_D')

    def __init__(self, levels=(), known_roots=()):
        self.levels = tuple(levels)
        self.known_roots = tuple(known_roots)
        self._names = tuple(lv[0] for lv in self.levels)
        self._D = math.prod((lv[2] for lv in self.levels), start=1)

    # -- construction --------------------------------------------------------

    def extend(self, name: str, rel) -> "FieldTower":
        """Extend by a monic relation given as coefficients c0..cd (constant
        first, leading last, cd = 1); entries may be elements, ints or QQ."""
        coeffs = [self._coerce(c) for c in rel]
        if len(coeffs) < 3:
            raise NonMonicRelation("relation degree must be >= 2")
        if not (coeffs[-1] - 1).is_zero():
            raise NonMonicRelation("relation must be monic")
        degree = len(coeffs) - 1
        if self._D * degree > MAX_TOTAL_DEGREE:
            raise DegreeTooLarge(
                f"total degree {self._D * degree} exceeds {MAX_TOTAL_DEGREE}")
        if name in self._names:
            k = 2
            while f"{name}{k}" in self._names:
                k += 1
            name = f"{name}{k}"
        h = self.height()
        rel_nested = tuple(unflatten(self, h, list(c.rep)) for c in coeffs[:-1])
        new = FieldTower(self.levels + ((name, rel_nested, degree),))
        pad = (_Q0,) * (new._D - self._D)
        return FieldTower(new.levels, tuple(r + pad for r in self.known_roots))

    def _coerce(self, x) -> "AlgebraicElement":
        if isinstance(x, AlgebraicElement):
            if x.tower.levels == self.levels:
                return AlgebraicElement(self, x.rep)
            if x.tower.levels == self.levels[:x.tower.height()]:
                return self.embed(x)
            raise TowerMismatch("element from a different tower")
        q = QQ(x)
        return AlgebraicElement(self, (q,) + (_Q0,) * (self._D - 1))

    # -- queries ----------------------------------------------------------------

    def height(self) -> int:
        return len(self.levels)

    def degree(self) -> int:
        return self._D

    def names(self):
        return self._names

    def level_index(self, name: str) -> int:
        return self._names.index(name)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.levels == other.levels

    def __hash__(self):
        return hash(('tower',) + self._names)

    def __repr__(self):
        return 'Q' if not self.levels else 'Q(' + ', '.join(self._names) + ')'

    def describe(self):
        return [{'name': name, 'degree': degree, 'relation': _rep_to_json(rel)}
                for name, rel, degree in self.levels]

    # -- element constructors -----------------------------------------------------

    def zero(self):
        return AlgebraicElement(self, (_Q0,) * self._D)

    def one(self):
        return AlgebraicElement(self, (_Q1,) + (_Q0,) * (self._D - 1))

    def from_rational(self, num, den=1):
        return AlgebraicElement(self, (QQ(num) / QQ(den),) + (_Q0,) * (self._D - 1))

    def gen(self, name: str) -> "AlgebraicElement":
        li = self.level_index(name)
        idx = math.prod((self.levels[k][2] for k in range(li)), start=1)
        rep = [_Q0] * self._D
        rep[idx] = _Q1
        return AlgebraicElement(self, tuple(rep))

    def embed(self, elem: "AlgebraicElement") -> "AlgebraicElement":
        if elem.tower.levels == self.levels:
            return AlgebraicElement(self, elem.rep)
        hs = elem.tower.height()
        if self.levels[:hs] != elem.tower.levels:
            raise TowerMismatch("not a sub-tower")
        return AlgebraicElement(self, elem.rep + (_Q0,) * (self._D - len(elem.rep)))

    def nested(self, elem) -> tuple:
        return unflatten(self, self.height(), list(elem.rep))

    def from_nested(self, rep) -> "AlgebraicElement":
        return AlgebraicElement(self, tuple(flatten(self, self.height(), rep)))

    # -- maps ------------------------------------------------------------------------

    def conjugation_images(self, name: str) -> dict:
        """Images for the automorphism sending a quadratic generator to the
        other root of its relation, fixing the remaining generators."""
        li = self.level_index(name)
        _, rel, degree = self.levels[li]
        if degree != 2:
            raise ValueError("conjugation is defined for quadratic levels only")
        rep = rel[1]
        for lv in range(li + 1, self.height() + 1):
            rep = _lift(self, lv, rep)
        c1 = self.from_nested(rep)
        return {name: -c1 - self.gen(name)}

    def with_known_root(self, root: "AlgebraicElement") -> "FieldTower":
        return FieldTower(self.levels, self.known_roots + (root.rep,))


QQ_TOWER = FieldTower(())


class AlgebraicElement:
    """An exact element of a FieldTower in reduced canonical form (flat rep)."""

    __slots__ = ('tower', 'rep')

    def __init__(self, tower: FieldTower, rep):
        self.tower = tower
        self.rep = rep

    def _co(self, other):
        if isinstance(other, AlgebraicElement):
            if other.tower.levels != self.tower.levels:
                raise TowerMismatch("elements of different towers")
            return other
        q = QQ(other)
        return AlgebraicElement(self.tower, (q,) + (_Q0,) * (len(self.rep) - 1))

    def __add__(self, other):
        o = self._co(other)
        return AlgebraicElement(self.tower,
                                tuple(x + y for x, y in zip(self.rep, o.rep)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicElement(self.tower, tuple(-x for x in self.rep))

    def __sub__(self, other):
        o = self._co(other)
        return AlgebraicElement(self.tower,
                                tuple(x - y for x, y in zip(self.rep, o.rep)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraicElement):
            if other.tower.levels != self.tower.levels:
                raise TowerMismatch("elements of different towers")
            orep = other.rep
        else:
            q = QQ(other)
            return AlgebraicElement(self.tower, tuple(x * q for x in self.rep))
        eng = _engine(self.tower.levels)
        return AlgebraicElement(self.tower, eng.mul(self.rep, orep))

    __rmul__ = __mul__

    def invert(self) -> "AlgebraicElement":
        """Inverse via the multiplication-matrix solve, falling back to the
        extended-gcd path on zero divisors (to extract the factor)."""
        if self.is_zero():
            raise ZeroElement("inverse of zero")
        t = self.tower
        if not t.levels:
            return AlgebraicElement(t, (_Q1 / self.rep[0],))
        eng = _engine(t.levels)
        D = eng.D
        cols = eng.mul_matrix(self.rep)
        M = [[cols[j][k] for j in range(D)] + [_Q1 if k == 0 else _Q0]
             for k in range(D)]
        r = 0
        piv_cols = []
        for cidx in range(D):
            piv = next((i for i in range(r, D) if M[i][cidx] != 0), None)
            if piv is None:
                # zero divisor: recover the factor via extended gcd
                nested = t.nested(self)
                _inv_gcd(t, t.height(), nested)
                raise AssertionError("gcd path should have raised")
            M[r], M[piv] = M[piv], M[r]
            inv = _Q1 / M[r][cidx]
            if inv != 1:
                M[r] = [x * inv for x in M[r]]
            Mr = M[r]
            for i in range(D):
                if i != r and M[i][cidx] != 0:
                    f = M[i][cidx]
                    M[i] = [x - f * y for x, y in zip(M[i], Mr)]
            piv_cols.append(cidx)
            r += 1
        x = [_Q0] * D
        for rr, cidx in enumerate(piv_cols):
            x[cidx] = M[rr][D]
        return AlgebraicElement(t, tuple(x))

    def __truediv__(self, other):
        return self * self._co(other).invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not any(self.rep)

    def is_rational(self) -> bool:
        return not any(self.rep[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return self.rep[0]

    def level_used(self) -> int:
        """Smallest tower height whose subring contains this element."""
        hi = next((i for i in range(len(self.rep) - 1, -1, -1)
                   if self.rep[i] != 0), 0)
        D = 1
        for h, lv in enumerate(self.tower.levels):
            if hi < D:
                return h
            D *= lv[2]
        return self.tower.height()

    def __eq__(self, other):
        if isinstance(other, AlgebraicElement):
            return self.tower.levels == other.tower.levels and self.rep == other.rep
        if isinstance(other, int) or type(other) is type(_Q0):
            return self.rep[0] == other and not any(self.rep[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def sort_key(self):
        return tuple((int(q.numerator), int(q.denominator)) for q in self.rep)

    def __repr__(self):
        return render(self)

    def to_json(self):
        return _rep_to_json(self.tower.nested(self))


def _rep_to_json(rep):
    if isinstance(rep, tuple):
        return [_rep_to_json(c) for c in rep]
    if rep.denominator != 1:
        return f"{rep.numerator}/{rep.denominator}"
    return str(rep.numerator)


def canonical_equal(x: AlgebraicElement, y) -> bool:
    """True iff x - y canonicalizes to zero (same tower required)."""
    if isinstance(y, AlgebraicElement) and x.tower.levels != y.tower.levels:
        raise TowerMismatch("elements of different towers")
    return (x - y).is_zero()


def tower_extend(tower: FieldTower, name: str, rel) -> FieldTower:
    return tower.extend(name, rel)


def render(elem: AlgebraicElement) -> str:
    """Human-readable rendering, e.g. '-1/5 - 2/5*i'."""
    t = elem.tower
    parts = []
    for idx, q in enumerate(elem.rep):
        if q == 0:
            continue
        rem = idx
        factors = []
        for lv in t.levels:
            e = rem % lv[2]
            rem //= lv[2]
            if e == 1:
                factors.append(lv[0])
            elif e > 1:
                factors.append(f'{lv[0]}^{e}')
        mag = abs(q)
        coeff = str(mag.numerator) if mag.denominator == 1 \
            else f'{mag.numerator}/{mag.denominator}'
        if factors and mag == 1:
            body = '*'.join(factors)
        elif factors:
            body = coeff + '*' + '*'.join(factors)
        else:
            body = coeff
        parts.append(('-' if q < 0 else '+', body))
    if not parts:
        return '0'
    s = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, body in parts[1:]:
        s += f' {sign} {body}'
    return s


# ---------------------------------------------------------------------------
# extended-gcd inversion (slow path; produces ZeroDivisor diagnostics)

def _inv_gcd(tower, h, a):
    """Inverse of a nested rep; raises ZeroDivisor with the discovered factor
    when the relation at the top level splits."""
    if _is_zero(a):
        raise ZeroElement("inverse of zero")
    if h == 0:
        return _Q1 / a
    sub = h - 1
    d = tower.levels[sub][2]
    z = _zero(tower, sub)
    one = _one(tower, sub)
    r0 = list(tower.levels[sub][1]) + [one]
    s0 = [z]
    r1 = list(a)
    s1 = [one]
    while True:
        d1 = _poly_deg(r1)
        if d1 < 0:
            dg = _poly_deg(r0)
            lead_inv = _inv_gcd(tower, sub, r0[dg])
            monic = tuple(_mul_nested(tower, sub, c, lead_inv) for c in r0[:dg])
            raise ZeroDivisor(tower, sub, monic)
        if d1 == 0:
            u = _inv_gcd(tower, sub, r1[0])
            res = [_mul_nested(tower, sub, c, u) for c in s1]
            res += [z] * (d - len(res))
            return tuple(res[:d])
        d0 = _poly_deg(r0)
        if d0 < d1:
            r0, r1, s0, s1 = r1, r0, s1, s0
            continue
        lead_inv = _inv_gcd(tower, sub, r1[d1])
        rem = list(r0)
        srem = list(s0)
        dr = d0
        while dr >= d1:
            q = _mul_nested(tower, sub, rem[dr], lead_inv)
            if not _is_zero(q):
                shift = dr - d1
                for j in range(d1 + 1):
                    if not _is_zero(r1[j]):
                        rem[shift + j] = _sub(tower, sub, rem[shift + j],
                                              _mul_nested(tower, sub, q, r1[j]))
                for j in range(len(s1)):
                    if _is_zero(s1[j]):
                        continue
                    idx = shift + j
                    while len(srem) <= idx:
                        srem.append(z)
                    srem[idx] = _sub(tower, sub, srem[idx],
                                     _mul_nested(tower, sub, q, s1[j]))
            dr = _poly_deg(rem[:dr])
        r0, s0 = r1, s1
        r1, s1 = rem, srem


def ring_map(elem: AlgebraicElement, target: FieldTower, images: dict | None = None,
             validate: bool = False) -> AlgebraicElement:
    """Evaluate elem in `target`, sending each generator to images[name]
    (default: the target's generator of the same name)."""
    images = images or {}
    src = elem.tower

    imgs = []
    for name, _, _ in src.levels:
        if name in images:
            img = images[name]
            if img.tower.levels != target.levels:
                img = target.embed(img)
            imgs.append(img)
        else:
            imgs.append(target.gen(name))

    def go(rep, h):
        if h == 0:
            return target.from_rational(rep)
        g = imgs[h - 1]
        acc = target.zero()
        for c in reversed(rep):
            acc = acc * g + go(c, h - 1)
        return acc

    if validate:
        for li, (name, rel, degree) in enumerate(src.levels):
            g = imgs[li]
            val = g ** degree
            for k, c in enumerate(rel):
                val = val + go(c, li) * g ** k
            if not val.is_zero():
                raise ValueError(f"image of '{name}' does not satisfy its relation")
    return go(src.nested(elem), src.height())


def apply_automorphism(elem: AlgebraicElement, images: dict) -> AlgebraicElement:
    """Ring map from a tower to itself (e.g. conjugation i -> -i)."""
    return ring_map(elem, elem.tower, images)


# ---------------------------------------------------------------------------
# square roots and root adjunction

def _rational_sqrt(q):
    if q < 0:
        return None
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return QQ(rn, rd)
    return None


def sqrt_in_tower(x: AlgebraicElement):
    """Exact square root of x in its own tower, or None.

    Complete when every level is quadratic; conservative (candidate search
    only) when a higher-degree level is present.
    """
    tower = x.tower
    if any(lv[2] != 2 for lv in tower.levels):
        return _sqrt_by_candidates(x)

    def go(rep, h):
        if h == 0:
            return _rational_sqrt(rep)
        c0, c1 = tower.levels[h - 1][1]
        sub = h - 1
        c1h = _scale(tower, sub, c1, QQ(1, 2))
        D = _sub(tower, sub, _mul_nested(tower, sub, c1h, c1h), c0)
        x0, x1 = rep
        a = _sub(tower, sub, x0, _mul_nested(tower, sub, x1, c1h))
        b = x1
        gp = (c1h, _one(tower, sub))  # g' = g + c1/2, so g'^2 = D

        def check(z):
            return _sub(tower, h, _mul_nested(tower, h, z, z), rep) == _zero(tower, h)

        if _is_zero(b):
            ra = go(a, sub)
            if ra is not None:
                z = _lift(tower, h, ra)
                if check(z):
                    return z
            if _is_zero(D):
                return None
            try:
                aD = _mul_nested(tower, sub, a, _inv_gcd(tower, sub, D))
            except (ZeroDivisor, ZeroElement):
                return None
            rb = go(aD, sub)
            if rb is None:
                return None
            z = _mul_nested(tower, h, _lift(tower, h, rb), gp)
            return z if check(z) else None
        t = _sub(tower, sub, _mul_nested(tower, sub, a, a),
                 _mul_nested(tower, sub, D, _mul_nested(tower, sub, b, b)))
        s = go(t, sub)
        if s is None:
            return None
        for sgn in (1, -1):
            cand = _scale(tower, sub,
                          _add(tower, sub, a, _scale(tower, sub, s, QQ(sgn))),
                          QQ(1, 2))
            rx = go(cand, sub)
            if rx is None or _is_zero(rx):
                continue
            try:
                ry = _mul_nested(tower, sub, b,
                                 _inv_gcd(tower, sub, _scale(tower, sub, rx, QQ(2))))
            except (ZeroDivisor, ZeroElement):
                continue
            z = _add(tower, h, _lift(tower, h, rx),
                     _mul_nested(tower, h, _lift(tower, h, ry), gp))
            if check(z):
                return z
        return None

    r = go(tower.nested(x), tower.height())
    if r is None:
        return None
    root = tower.from_nested(r)
    assert (root * root - x).is_zero()
    return root


def _sqrt_by_candidates(x: AlgebraicElement):
    tower = x.tower
    if x.is_rational():
        r = _rational_sqrt(x.as_rational())
        return None if r is None else tower.from_rational(r)
    cands = [tower.gen(n) for n in tower.names()]
    cands += [AlgebraicElement(tower, kr) for kr in tower.known_roots]
    for c in cands:
        if (c * c - x).is_zero():
            return c
    return None


def adjoin_root(tower: FieldTower, c1, c0, name: str = 't'):
    """Root of the monic quadratic t^2 + c1 t + c0 over `tower`.

    Returns (new_tower, root, other_root).  The tower is unchanged when a
    root is already available (known root, generator, rational discriminant,
    or a complete square-root search on all-quadratic towers)."""
    c1 = tower._coerce(c1)
    c0 = tower._coerce(c0)

    def pair(tw, root):
        c1e = tw._coerce(c1)
        return tw, root, -c1e - root

    for cand in ([AlgebraicElement(tower, kr) for kr in tower.known_roots]
                 + [tower.gen(n) for n in tower.names()]):
        if (cand * cand + c1 * cand + c0).is_zero():
            return pair(tower, cand)

    disc = c1 * c1 - 4 * c0
    s = sqrt_in_tower(disc)
    if s is not None:
        root = (s - c1) / 2
        return pair(tower, root)

    new = tower.extend(name, [c0, c1, 1])
    root = new.gen(new.names()[-1])
    return pair(new, root)


# ---------------------------------------------------------------------------
# tower splitting (dynamic evaluation)

def _poly_divmod(tower, sub, num, den):
    num = list(num)
    dd = _poly_deg(den)
    lead_inv = _inv_gcd(tower, sub, den[dd])
    quot = [_zero(tower, sub)] * max(len(num) - dd, 1)
    while _poly_deg(num) >= dd:
        dn = _poly_deg(num)
        q = _mul_nested(tower, sub, num[dn], lead_inv)
        quot[dn - dd] = q
        for j in range(dd + 1):
            num[dn - dd + j] = _sub(tower, sub, num[dn - dd + j],
                                    _mul_nested(tower, sub, q, den[j]))
    return quot, num


def split_tower(tower: FieldTower, level: int, factor):
    """Split the relation at `level` by a proper monic factor (nested coeff
    reps over the subtower, constant first, leading 1 implied).

    Returns [(branch_tower, map_fn), ...] with map_fn sending elements of
    `tower` into the branch."""
    name, rel, degree = tower.levels[level]
    full_rel = list(rel) + [_one(tower, level)]
    fac = list(factor) + [_one(tower, level)]
    quot, rem = _poly_divmod(tower, level, full_rel, fac)
    if any(not _is_zero(c) for c in rem):
        raise ValueError("factor does not divide the relation")
    quot = quot[:_poly_deg(quot) + 1]

    branches = []
    for piece in (fac, quot):
        d = _poly_deg(piece)
        base = FieldTower(tower.levels[:level])
        images = {}
        if d == 1:
            root = base.from_nested(_neg(tower, level, piece[0]))
            images = {name: root}
            new = base
            for idx in range(level + 1, tower.height()):
                nm, rl, dg = tower.levels[idx]
                src_sub = FieldTower(tower.levels[:idx])
                coeffs = [ring_map(src_sub.from_nested(c), new, images)
                          for c in rl]
                coeffs.append(new.one())
                new = new.extend(nm, coeffs)
            new = new.with_known_root(new._coerce(root))
        else:
            new = base.extend(name,
                              [base.from_nested(c) for c in piece[:d]]
                              + [base.one()])
            for idx in range(level + 1, tower.height()):
                nm, rl, dg = tower.levels[idx]
                src_sub = FieldTower(tower.levels[:idx])
                coeffs = [ring_map(src_sub.from_nested(c), new, images)
                          for c in rl]
                coeffs.append(new.one())
                new = new.extend(nm, coeffs)

        def mk_map(target, imgs):
            def f(x: AlgebraicElement):
                return ring_map(x, target, imgs)
            return f

        branches.append((new, mk_map(new, dict(images))))
    return branches


class BranchResult:
    __slots__ = ('tower', 'inputs', 'value')

    def __init__(self, tower, inputs, value):
        self.tower = tower
        self.inputs = inputs
        self.value = value


def dynamic_eval(tower: FieldTower, inputs: Sequence[AlgebraicElement],
                 fn: Callable, limit: int = 200) -> list:
    """Run fn(tower, inputs) with dynamic-evaluation splitting.

    On ZeroDivisor the offending tower (possibly an extension of `tower`
    built inside fn) is split and the computation retried per branch with
    migrated inputs.  Returns BranchResult list in deterministic order."""
    tasks = [(tower, list(inputs))]
    results = []
    steps = 0
    while tasks:
        steps += 1
        if steps > limit:
            raise RuntimeError("dynamic evaluation did not terminate")
        tw, ins = tasks.pop(0)
        try:
            results.append(BranchResult(tw, ins, fn(tw, ins)))
        except ZeroDivisor as e:
            for btw, bmap in split_tower(e.tower, e.level, e.factor):
                emb = [e.tower.embed(x) if x.tower.levels != e.tower.levels else x
                       for x in ins]
                tasks.append((btw, [bmap(x) for x in emb]))
    return results
