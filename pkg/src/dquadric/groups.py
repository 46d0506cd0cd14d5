"""Permutation groups, projective orbits, character tables and invariants.

Character tables are ingested from bundled data files and self-validate at
load time (class sizes, power-map labels, degree entries, row orthogonality,
and column orthogonality whenever the table is complete).
"""
from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
from functools import lru_cache

from .numeric import (QQ_TOWER, AlgebraicElement, FieldTower, apply_automorphism, qq)
from .poly import MultiPoly, monomials
from . import linalg


class ArityMismatch(ValueError):
    pass


class MissingPowerMap(KeyError):
    pass


class DimensionMismatch(ValueError):
    pass


class DataFileMissing(FileNotFoundError):
    pass


class ChecksumMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutation groups

def _perm_mul(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def _is_even(p):
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                inv += 1
    return inv % 2 == 0


class PermGroup:
    """A group of coordinate permutations with a cached element list."""

    __slots__ = ('name', 'degree', 'elements', 'generators')

    def __init__(self, name, degree, elements, generators):
        self.name = name
        self.degree = degree
        self.elements = tuple(elements)
        self.generators = tuple(generators)

    def order(self):
        return len(self.elements)

    @staticmethod
    @lru_cache(maxsize=None)
    def symmetric(n):
        elems = sorted(itertools.permutations(range(n)))
        gens = (tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0]))
        g = PermGroup(f's{n}', n, elems, gens)
        assert g.order() == math.factorial(n)
        return g

    @staticmethod
    @lru_cache(maxsize=None)
    def alternating(n):
        elems = sorted(p for p in itertools.permutations(range(n)) if _is_even(p))
        gens = tuple(e for e in elems if e != tuple(range(n)))[:2]
        g = PermGroup(f'a{n}', n, elems, gens)
        assert g.order() == math.factorial(n) // 2
        return g

    def __repr__(self):
        return f'{self.name} (order {self.order()})'


class ProjPoint:
    """A projective point over a tower, scaled so the first nonzero
    coordinate is 1."""

    __slots__ = ('tower', 'coords')

    def __init__(self, tower: FieldTower, coords):
        cs = [tower._coerce(c) for c in coords]
        lead = next((c for c in cs if not c.is_zero()), None)
        if lead is None:
            raise ValueError("all coordinates are zero")
        self.tower = tower
        if (lead - 1).is_zero():
            self.coords = tuple(cs)
        else:
            inv = lead.invert()
            self.coords = tuple(c * inv for c in cs)

    def arity(self):
        return len(self.coords)

    def permuted(self, perm) -> "ProjPoint":
        if len(perm) != len(self.coords):
            raise ArityMismatch("permutation degree does not match point arity")
        return ProjPoint(self.tower, [self.coords[perm[i]] for i in range(len(perm))])

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, ProjPoint)
                and self.tower.levels == other.tower.levels
                and all((a - b).is_zero() for a, b in zip(self.coords, other.coords)))

    def __hash__(self):
        return hash(tuple(c.rep for c in self.coords))

    def __repr__(self):
        return '(' + ' : '.join(repr(c) for c in self.coords) + ')'

    def map_to(self, target: FieldTower, images=None) -> "ProjPoint":
        from .numeric import ring_map
        return ProjPoint(target, [ring_map(c, target, images) for c in self.coords])


class Orbit:
    """Deduplicated, sorted orbit of a projective point under a PermGroup."""

    __slots__ = ('group', 'points')

    def __init__(self, group: PermGroup, points):
        self.group = group
        self.points = tuple(sorted(points, key=lambda p: p.sort_key()))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        return isinstance(other, Orbit) and self.points == other.points


def orbit(P: ProjPoint, G: PermGroup) -> Orbit:
    if P.arity() != G.degree:
        raise ArityMismatch(f"point arity {P.arity()} != group degree {G.degree}")
    # canonical coordinates make projective equality structural
    seen = {}
    for g in G.elements:
        Q = P.permuted(g)
        seen[tuple(c.rep for c in Q.coords)] = Q
    orb = Orbit(G, seen.values())
    if G.order() % len(orb) != 0:
        raise AssertionError("orbit length does not divide the group order")
    return orb


# ---------------------------------------------------------------------------
# cyclotomic fields

def _int_poly_div(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        shift = len(num) - len(den)
        c = num[-1] // den[-1]
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        assert num[-1] == 0
        num.pop()
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int):
    """Integer coefficients of Phi_m, constant first."""
    # x^m - 1 divided by Phi_d for proper divisors d
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _int_poly_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def cyclotomic_tower(m: int):
    """Q(zeta_m) as a FieldTower with generator name 'z<m>'.

    For m <= 2 the rational tower is returned (zeta is rational).
    """
    if m <= 2:
        return QQ_TOWER
    return QQ_TOWER.extend(f'z{m}', list(cyclotomic_polynomial(m)))


def zeta_power(tower: FieldTower, m: int, M: int, k: int) -> AlgebraicElement:
    """zeta_m^k inside Q(zeta_M) (m must divide M)."""
    assert M % m == 0
    e = (k * (M // m)) % M
    if M <= 2:
        return tower.from_rational(1 if e == 0 else -1)
    return tower.gen(f'z{M}') ** e


# ---------------------------------------------------------------------------
# character tables

class CharacterTable:
    """One group's character data: classes, power maps, character values."""

    __slots__ = ('name', 'order', 'class_labels', 'class_sizes', 'powmaps',
                 'chars', 'tower', 'complete', 'conductor')

    def __init__(self, name, order, class_labels, class_sizes, powmaps, chars,
                 tower, conductor):
        self.name = name
        self.order = order
        self.class_labels = class_labels
        self.class_sizes = class_sizes
        self.powmaps = powmaps  # {2: [idx], 3: [...], 4: [...]}
        self.chars = chars      # {name: (dim, [AlgebraicElement])}
        self.tower = tower
        self.conductor = conductor
        self.complete = sum(d * d for d, _ in chars.values()) == order

    def num_classes(self):
        return len(self.class_labels)

    def class_index(self, label):
        return self.class_labels.index(label)

    def conjugate_values(self, values):
        """Complex conjugation zeta -> zeta^{-1} applied to a value list."""
        if self.conductor <= 2:
            return list(values)
        name = f'z{self.conductor}'
        g = self.tower.gen(name)
        images = {name: g ** (self.conductor - 1)}
        return [apply_automorphism(v, images) for v in values]

    def validate(self):
        if sum(self.class_sizes) != self.order:
            raise ValueError(f"{self.name}: class sizes do not sum to the group order")
        k = self.num_classes()
        for p, mp in self.powmaps.items():
            if len(mp) != k or any(not 0 <= t < k for t in mp):
                raise ValueError(f"{self.name}: bad power map p{p}")
        names = list(self.chars)
        vals = {n: self.chars[n][1] for n in names}
        conj = {n: self.conjugate_values(vals[n]) for n in names}
        for n in names:
            dim, v = self.chars[n]
            if not (v[self.class_index('1a')] - dim).is_zero():
                raise ValueError(f"{self.name}/{n}: value at 1a is not the degree")
        for a in names:
            for b in names:
                acc = self.tower.zero()
                for j in range(k):
                    acc = acc + vals[a][j] * conj[b][j] * self.class_sizes[j]
                want = self.order if a == b else 0
                if not (acc - want).is_zero():
                    raise ValueError(f"{self.name}: row orthogonality fails for {a},{b}")
        if self.complete:
            for i in range(k):
                for j in range(k):
                    acc = self.tower.zero()
                    for n in names:
                        acc = acc + vals[n][i] * conj[n][j]
                    want = qq(self.order, self.class_sizes[i]) if i == j else qq(0)
                    if not (acc - want).is_zero():
                        raise ValueError(f"{self.name}: column orthogonality fails "
                                         f"at {self.class_labels[i]},{self.class_labels[j]}")

    # -- plethysm ------------------------------------------------------------

    def power_values(self, values, e):
        if e == 1:
            return list(values)
        if e not in self.powmaps:
            raise MissingPowerMap(f"power map p{e} not available")
        mp = self.powmaps[e]
        return [values[mp[j]] for j in range(self.num_classes())]

    def sym_power_values(self, values, kdeg):
        """Values of Sym^k of a character given by its value list (k <= 4)."""
        p1 = list(values)
        if kdeg == 1:
            return p1
        p2 = self.power_values(values, 2)
        if kdeg == 2:
            return [(p1[j] * p1[j] + p2[j]) / 2 for j in range(len(p1))]
        p3 = self.power_values(values, 3)
        if kdeg == 3:
            return [(p1[j] ** 3 + 3 * p1[j] * p2[j] + 2 * p3[j]) / 6
                    for j in range(len(p1))]
        p4 = self.power_values(values, 4)
        if kdeg == 4:
            return [(p1[j] ** 4 + 6 * p1[j] ** 2 * p2[j] + 3 * p2[j] ** 2
                     + 8 * p1[j] * p3[j] + 6 * p4[j]) / 24
                    for j in range(len(p1))]
        raise MissingPowerMap(f"symmetric power {kdeg} not supported")

    def inner_with_trivial(self, values):
        acc = self.tower.zero()
        for j in range(self.num_classes()):
            acc = acc + values[j] * self.class_sizes[j]
        acc = acc / self.order
        if not acc.is_rational():
            raise ValueError("inner product is not rational")
        q = acc.as_rational()
        if q.denominator != 1:
            raise ValueError("inner product is not an integer")
        return int(q.numerator)

    def invariant_dimension(self, char_name_or_values, kdeg, dual=True) -> int:
        """Multiplicity of the trivial character in Sym^k of the dual."""
        if isinstance(char_name_or_values, str):
            values = self.chars[char_name_or_values][1]
        else:
            values = list(char_name_or_values)
        if dual:
            values = self.conjugate_values(values)
        return self.inner_with_trivial(self.sym_power_values(values, kdeg))


def sym_power_character(table: CharacterTable, char_name: str, kdeg: int):
    return table.sym_power_values(table.chars[char_name][1], kdeg)


def invariant_dimension(table: CharacterTable, char_name_or_values, kdeg,
                        dual=True) -> int:
    return table.invariant_dimension(char_name_or_values, kdeg, dual=dual)


# -- parsing ----------------------------------------------------------------

def _parse_value(s: str, tower: FieldTower, conductor: int) -> AlgebraicElement:
    s = s.strip()
    if s.startswith('(') and s.endswith(')'):
        s = s[1:-1]
    s = s.replace('-', '+-')
    total = tower.zero()
    for term in s.split('+'):
        term = term.strip()
        if not term:
            continue
        neg = term.startswith('-')
        if neg:
            term = term[1:].strip()
        coeff = 1
        if '*' in term:
            c, term = term.split('*')
            coeff = int(c.strip())
            term = term.strip()
        if term.lstrip('-').isdigit():
            val = tower.from_rational(int(term) * coeff)
        else:
            if '^' in term:
                zpart, epart = term.split('^')
                e = int(epart)
            else:
                zpart, e = term, 1
            assert zpart.startswith('z'), term
            m = int(zpart[1:])
            assert conductor % m == 0, (m, conductor)
            if conductor <= 2:
                # zeta_m rational (m in {1,2})
                v = 1 if (e * (2 // m)) % 2 == 0 else -1
                val = tower.from_rational(v * coeff)
            else:
                z = tower.gen(f'z{conductor}')
                val = z ** ((e * (conductor // m)) % conductor) * coeff
        total = total + (-val if neg else val)
    return total


def _find_conductor(lines):
    ms = [1]
    for ln in lines:
        for tok in ln.replace('(', ' ').replace(')', ' ').split():
            t = tok.lstrip('-').split('^')[0]
            if '*' in t:
                t = t.split('*')[1]
            if t.startswith('z') and t[1:].isdigit():
                ms.append(int(t[1:]))
    return math.lcm(*ms)


def parse_table(text: str) -> CharacterTable:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    assert head[0] == 'group' and head[2] == 'order' and head[4] == 'classes'
    name, order, k = head[1], int(head[3]), int(head[5])
    labels, sizes = [], []
    pow2, pow3, pow4 = [], [], []
    i = 1
    while i < len(lines) and lines[i].startswith('class '):
        t = lines[i].split()
        labels.append(t[1])
        sizes.append(int(t[3]))
        pow2.append(t[5])
        pow3.append(t[7])
        pow4.append(t[9])
        i += 1
    assert len(labels) == k, f"{name}: expected {k} classes"
    li = {lab: j for j, lab in enumerate(labels)}
    powmaps = {2: [li[x] for x in pow2],
               3: [li[x] for x in pow3],
               4: [li[x] for x in pow4]}
    conductor = _find_conductor(lines[i:])
    tower = cyclotomic_tower(conductor)
    chars = {}
    while i < len(lines):
        t = lines[i].split()
        assert t[0] == 'char', lines[i]
        cname, dim = t[1], int(t[3])
        vals = []
        for j in range(k):
            i += 1
            vals.append(_parse_value(lines[i], tower, conductor))
        chars[cname] = (dim, vals)
        i += 1
    table = CharacterTable(name, order, labels, sizes, powmaps, chars,
                           tower, conductor)
    table.validate()
    return table


def default_data_dir():
    env = os.environ.get('DQUADRIC_DATA')
    if env:
        return env
    return os.path.join(os.path.dirname(__file__), 'data')


def load_tables(data_dir: str | None = None, verify_checksums: bool = True):
    """Load all bundled tables, verifying the checksum manifest."""
    data_dir = data_dir or default_data_dir()
    manifest_path = os.path.join(data_dir, 'manifest.json')
    if not os.path.exists(manifest_path):
        raise DataFileMissing(f"missing manifest: {manifest_path}")
    with open(manifest_path) as f:
        manifest = json.load(f)
    tables = {}
    for fname, digest in sorted(manifest.items()):
        path = os.path.join(data_dir, fname)
        if not os.path.exists(path):
            raise DataFileMissing(f"missing data file: {path}")
        blob = open(path, 'rb').read()
        if verify_checksums:
            actual = hashlib.sha256(blob).hexdigest()
            if actual != digest:
                raise ChecksumMismatch(f"{fname}: sha256 {actual} != {digest}")
        table = parse_table(blob.decode())
        tables[table.name] = table
    return tables


# ---------------------------------------------------------------------------
# explicit invariants by Reynolds averaging

def matrix_group_elements(gens, limit=400):
    """Close a list of square matrices (AlgebraicElement entries) under
    multiplication."""
    n = len(gens[0])
    tower = gens[0][0][0].tower
    ident = [[tower.one() if i == j else tower.zero() for j in range(n)]
             for i in range(n)]

    def key(M):
        return tuple(e.rep for row in M for e in row)

    def mul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(n)), tower.zero())
                 for j in range(n)] for i in range(n)]

    elems = {key(ident): ident}
    frontier = [ident]
    while frontier:
        new = []
        for M in frontier:
            for g in gens:
                P = mul(M, g)
                kk = key(P)
                if kk not in elems:
                    if len(elems) >= limit:
                        raise RuntimeError("matrix group too large")
                    elems[kk] = P
                    new.append(P)
        frontier = new
    return list(elems.values())


def icosahedral_generators(tower=None):
    """Generators of the 60-element rotation group acting on 3 coordinates,
    over Q(sqrt5); the 5-dim action on I+I+W3 is block diag(1,1,R)."""
    if tower is None:
        tower = QQ_TOWER.extend('r5', [-5, 0, 1])
    r5 = tower.gen('r5')
    half = tower.from_rational(1, 2)
    q = tower.from_rational
    c = (r5 - 1) * q(1, 4)          # cos 72
    d = (r5 + 1) * q(1, 4)
    R = [[c, -d, half],
         [d, half, c],
         [-half, c, d]]
    C = [[q(0), q(0), q(1)],
         [q(1), q(0), q(0)],
         [q(0), q(1), q(0)]]
    return tower, [R, C]


def block_5dim(tower, mats3):
    """diag(1,1,M) for a list of 3x3 matrices."""
    one, zero = tower.one(), tower.zero()
    out = []
    for M in mats3:
        B = [[one if i == j and i < 2 else zero for j in range(5)] for i in range(5)]
        for i in range(3):
            for j in range(3):
                B[2 + i][2 + j] = M[i][j]
        out.append(B)
    return out


def permutation_matrices(G: PermGroup, tower=None):
    tower = tower or QQ_TOWER
    one, zero = tower.one(), tower.zero()
    out = []
    for p in G.generators:
        M = [[one if p[j] == i else zero for j in range(G.degree)]
             for i in range(G.degree)]
        out.append(M)
    return tower, out


def invariant_basis(matrix_gens, kdeg: int, expected_count: int | None = None):
    """Spanning set of degree-k invariants of the matrix group generated by
    matrix_gens, via Reynolds averaging of all degree-k monomials."""
    elems = matrix_group_elements(matrix_gens)
    n = len(matrix_gens[0])
    tower = matrix_gens[0][0][0].tower
    monos = monomials(tower, n, kdeg)
    order_inv = qq(1, len(elems))

    averaged = []
    for e in monos:
        mono = MultiPoly(tower, n, {e: tower.one()})
        acc = MultiPoly.zero(tower, n)
        for M in elems:
            acc = acc + mono.substitute_linear(M)
        averaged.append(acc * tower.from_rational(order_inv))

    # extract a basis of the span via echelon on coefficient vectors
    basis = []
    rows = []
    for p in averaged:
        vec = [p.terms.get(e, tower.zero()) for e in monos]
        work = vec[:]
        for bvec, piv in rows:
            if not work[piv].is_zero():
                f = work[piv] * bvec[piv].invert()
                work = [w - f * b for w, b in zip(work, bvec)]
        piv = next((i for i, w in enumerate(work) if not w.is_zero()), None)
        if piv is not None:
            rows.append((work, piv))
            basis.append(p)
    if expected_count is not None and len(basis) != expected_count:
        raise DimensionMismatch(
            f"averaging produced {len(basis)} invariants, expected {expected_count}")
    return basis
