"""Singular loci of the two-parameter quadric-quartic surface family.

The surface S is cut out on the permutation-invariant quadric sigma2 = 0 by
the quartic sigma4 + 4*mu*sigma3*sigma1 + nu*sigma1^4.  This module computes
the full singular locus by shape classification, certifies ordinary double
points by the exact rank of a solved-chart Hessian, and computes defects via
exact ranks of cubic-monomial evaluation matrices.
"""
from __future__ import annotations

from . import linalg
from .groups import Orbit, PermGroup, ProjPoint, orbit
from .numeric import AlgebraicElement, FieldTower, adjoin_root, qq
from .poly import MultiPoly, monomials, power_sum


class NotOnSurface(ValueError):
    pass


class SigmaOneVanishes(ValueError):
    pass


class QuadricSingularAtPoint(ValueError):
    pass


class DuplicatePoints(ValueError):
    pass


class SurfaceParams:
    """The parameter pair (mu, nu) in a shared tower."""

    __slots__ = ('tower', 'mu', 'nu')

    def __init__(self, mu: AlgebraicElement, nu):
        self.tower = mu.tower
        self.mu = mu
        self.nu = self.tower._coerce(nu)

    def embed(self, tower: FieldTower) -> "SurfaceParams":
        return SurfaceParams(tower._coerce(self.mu), tower._coerce(self.nu))

    def __repr__(self):
        return f'(mu={self.mu!r}, nu={self.nu!r})'


class Shape:
    """A singular-point shape up to coordinate permutation.

    tags: 'S20_special' (1:0:0:0:i), 'S30_special' (1:1:i:i:0),
    'Type3' (1:1:1:a:b) with a^2+b^2+3 = 0,
    'Type4' (1:a:a:b:b) with 2a^2+2b^2+1 = 0.  (a,b) is unordered.
    """

    __slots__ = ('tag', 'a', 'b')

    def __init__(self, tag, a=None, b=None):
        assert tag in ('S20_special', 'S30_special', 'Type3', 'Type4')
        self.tag = tag
        self.a = a
        self.b = b
        if tag == 'Type3':
            assert (a * a + b * b + 3).is_zero(), "Type3 pair must satisfy a^2+b^2+3=0"
        if tag == 'Type4':
            assert (2 * a * a + 2 * b * b + 1).is_zero(), \
                "Type4 pair must satisfy 2a^2+2b^2+1=0"


class SingularityReport:
    __slots__ = ('point', 'label', 'hessian_rank', 'is_odp', 'pair')

    def __init__(self, point: ProjPoint, label: str, hessian_rank: int, pair=None):
        self.point = point
        self.label = label
        self.hessian_rank = hessian_rank
        self.is_odp = hessian_rank == 3
        self.pair = pair

    def __repr__(self):
        tag = 'ODP' if self.is_odp else f'rank {self.hessian_rank}'
        return f'<{self.label} {self.point!r}: {tag}>'


# ---------------------------------------------------------------------------

def surface_equations(params: SurfaceParams):
    """(quadric, quartic) as 5-variable polynomials over the params tower."""
    t = params.tower
    s1 = power_sum(1, 5, t)
    s2 = power_sum(2, 5, t)
    s3 = power_sum(3, 5, t)
    s4 = power_sum(4, 5, t)
    quartic = s4 + s3 * s1 * (4 * params.mu) + (s1 ** 2) * (s1 ** 2) * params.nu
    return s2, quartic


def _sigma_values(coords, k):
    acc = coords[0].tower.zero()
    for c in coords:
        acc = acc + c ** k
    return acc


def ensure_i(tower: FieldTower):
    """(tower', i) with i^2 = -1, adjoining a level named 'i' if needed."""
    t, root, _ = adjoin_root(tower, 0, 1, name='i')
    return t, root


def ensure_r6(tower: FieldTower):
    """(tower', sqrt6), adjoining a level named 'r6' if needed."""
    t, root, _ = adjoin_root(tower, 0, -6, name='r6')
    return t, root


def is_singular_point(P: ProjPoint, params: SurfaceParams) -> bool:
    """True iff P lies on the surface and the Jacobian of (quadric, quartic)
    at P has rank <= 1.  Runs both the 2x5-minor test and the shape-matrix
    determinant test and insists they agree.

    Raises NotOnSurface when P is off the fixed quadric (caller error);
    quadric points not on the quartic simply return False.
    """
    T = P.tower
    mu = T._coerce(params.mu)
    nu = T._coerce(params.nu)
    x = P.coords
    if not _sigma_values(x, 2).is_zero():
        raise NotOnSurface("point is not on the quadric")
    s1 = _sigma_values(x, 1)
    s3 = _sigma_values(x, 3)
    s4 = _sigma_values(x, 4)
    on_quartic = (s4 + 4 * mu * s3 * s1 + nu * s1 ** 4).is_zero()

    # gradient of the quartic (divided by 4) and of the quadric (divided by 2)
    gf = [c ** 3 + mu * (3 * c * c * s1 + s3) + nu * s1 ** 3 for c in x]
    gq = list(x)
    jac_rank_le1 = True
    for i in range(5):
        for j in range(i + 1, 5):
            if not (gf[i] * gq[j] - gf[j] * gq[i]).is_zero():
                jac_rank_le1 = False
                break
        if not jac_rank_le1:
            break

    # the 2x2 shape matrices: rows (m_i, m_j), (x_i, x_j) with
    # m_i = x_i^3 + mu*sigma3 + 3*mu*x_i^2*sigma1 + nu*sigma1^3
    m = [c ** 3 + mu * s3 + 3 * mu * c * c * s1 + nu * s1 ** 3 for c in x]
    det_test = True
    for i in range(5):
        for j in range(i + 1, 5):
            if not (m[i] * x[j] - m[j] * x[i]).is_zero():
                det_test = False
                break
        if not det_test:
            break
    if jac_rank_le1 != det_test:
        raise AssertionError("singularity tests disagree")
    return on_quartic and jac_rank_le1


def shape_to_params(shape: Shape) -> SurfaceParams:
    """The unique (mu, nu) making the shape's orbit singular."""
    if shape.tag == 'S20_special':
        from .numeric import QQ_TOWER
        t = QQ_TOWER
        return SurfaceParams(t.from_rational(-1, 3), t.from_rational(-1, 6))
    if shape.tag == 'S30_special':
        from .numeric import QQ_TOWER
        t = QQ_TOWER
        return SurfaceParams(t.from_rational(-1, 6), t.from_rational(-1, 48))
    a, b = shape.a, shape.b
    t = a.tower
    if shape.tag == 'Type3':
        s1 = 3 + a + b
        s3 = 3 + a ** 3 + b ** 3
    else:
        s1 = 1 + 2 * (a + b)
        s3 = 1 + 2 * (a ** 3 + b ** 3)
    if s1.is_zero():
        raise SigmaOneVanishes("sigma1 vanishes at the shape point")
    mu = -(a + b + 1) / (3 * s1)
    nu = (s3 * (a + b + 1) - 3 * a * b * s1) / (3 * s1 ** 4)
    return SurfaceParams(mu, nu)


SPECIAL_LABELS = ('Sigma5+', 'Sigma5-', 'Sigma10+', 'Sigma10-', 'Sigma20', 'Sigma30')


def _special_points(tower):
    """Representative points of the six special orbits over tower+(i,r6)."""
    T, i = ensure_i(tower)
    T, r6 = ensure_r6(T)
    i = T._coerce(i)
    c = r6 * i / 2   # c^2 = -3/2
    one = T.one()
    zero = T.zero()
    return T, {
        'Sigma20': [one, zero, zero, zero, i],
        'Sigma30': [one, one, i, i, zero],
        'Sigma5+': [one, one, one, one, 2 * i],
        'Sigma5-': [one, one, one, one, -2 * i],
        'Sigma10+': [one, one, one, c, c],
        'Sigma10-': [one, one, one, -c, -c],
    }


def _family_solutions(tower, mu, nu, tag):
    """Nondegenerate family pair (a, b) singular for (mu, nu), if any.

    Returns (tower', a, b) or None.  Solves the linear relation for
    s = a+b, derives p = ab from the conic, accepts iff the nu-identity
    holds, then adjoins roots of t^2 - s t + p.
    """
    if tag == 'Type3':
        # 3 mu (s+3) + (s+1) = 0
        den = 3 * mu + 1
        if den.is_zero():
            return None
        s = -(9 * mu + 1) / den
        p = (s * s + 3) / 2
        sig1 = 3 + s
        sig3 = 3 + s ** 3 - 3 * p * s
    else:
        den = 6 * mu + 1
        if den.is_zero():
            return None
        s = -(3 * mu + 1) / den
        p = (2 * s * s + 1) / 4
        sig1 = 1 + 2 * s
        sig3 = 1 + 2 * (s ** 3 - 3 * p * s)
    if sig1.is_zero():
        return None
    lhs = 3 * (sig1 ** 4) * nu
    rhs = sig3 * (s + 1) - 3 * p * sig1
    if not (lhs - rhs).is_zero():
        return None
    # degenerate pairs are covered by the special orbits
    disc = s * s - 4 * p
    if disc.is_zero():
        return None
    if (1 - s + p).is_zero():   # a = 1 or b = 1
        return None
    T2, a, b = adjoin_root(tower, -s, p, name='ab')
    return T2, a, b


def singular_locus(params: SurfaceParams, cross_check: bool = True):
    """The complete singular locus of S(mu, nu), grouped by orbit.

    Returns a list of (label, Orbit, [SingularityReport]) triples in a
    canonical label order.  ZeroDivisor exceptions from reducible towers
    propagate to the caller for per-branch retry.
    """
    S5 = PermGroup.symmetric(5)
    T, spec = _special_points(params.tower)
    pr = params.embed(T)

    found = []
    for label in SPECIAL_LABELS:
        P = ProjPoint(T, spec[label])
        if is_singular_point(P, pr):
            found.append((label, P, None))

    # families run over the smallest tower that keeps the orbit towers in a
    # chain: the special-extended tower when a special orbit is singular,
    # the bare parameter tower otherwise
    fam_base = T if found else params.tower
    for tag, label in (('Type3', 'Sigma20ab'), ('Type4', 'Sigma30ab')):
        fam_params = params.embed(fam_base)
        sol = _family_solutions(fam_base, fam_params.mu, fam_params.nu, tag)
        if sol is None:
            continue
        T2, a, b = sol
        fam_base = T2
        one = T2.one()
        if tag == 'Type3':
            P = ProjPoint(T2, [one, one, one, a, b])
        else:
            P = ProjPoint(T2, [one, a, a, b, b])
        found.append((label, P, (a, b)))

    results = []
    for label, P, pair in found:
        orb = orbit(P, S5)
        p2 = params.embed(P.tower)
        reports = []
        for Q in orb:
            if cross_check and not is_singular_point(Q, p2):
                raise AssertionError(f"cross-check failed: {label} point not singular")
            reports.append(odp_certify(Q, p2, label=label, pair=pair))
        results.append((label, orb, reports))
    return results


def locus_points(results):
    """Flatten singular_locus output into one point list over a common tower.

    Orbit towers form a chain (the family tower extends the specials tower),
    so everything embeds into the deepest one.
    """
    towers = []
    for _, orb, _ in results:
        t = orb.points[0].tower
        if all(t.levels != u.levels for u in towers):
            towers.append(t)
    if not towers:
        return []
    deepest = max(towers, key=lambda t: t.height())
    for t in towers:
        if deepest.levels[:t.height()] != t.levels:
            raise AssertionError("orbit towers do not form a chain")
    pts = []
    for _, _, reps in results:
        for rep in reps:
            if rep.point.tower.levels == deepest.levels:
                pts.append(ProjPoint(deepest, rep.point.coords))
            else:
                pts.append(ProjPoint(deepest,
                                     [deepest.embed(c) for c in rep.point.coords]))
    return pts


def restricted_hessian(P: ProjPoint, params: SurfaceParams):
    """The exact 3x3 symmetric second-order form of the quartic restricted to
    the quadric at P, in a deterministic solved chart.

    Returns (H, singular) where `singular` reports whether the restricted
    linear part vanishes (i.e. P is a singular point of the surface).
    """
    T = P.tower
    pr = params.embed(T)

    # chart coordinate: nonzero entry of smallest (tower level, index)
    cands = [(P.coords[k].level_used(), k) for k in range(5)
             if not P.coords[k].is_zero()]
    _, c = min(cands)
    scale = P.coords[c].invert()
    pt = [x * scale for x in P.coords]

    others = [k for k in range(5) if k != c]
    zc = next((k for k in others if not pt[k].is_zero()), None)
    if zc is None:
        raise QuadricSingularAtPoint("point off the smooth quadric locus")
    ws = [k for k in others if k != zc]

    # affine chart polynomial ring in variables [zc, ws...] (4 vars)
    chart = [zc] + ws
    pos = {k: idx for idx, k in enumerate(chart)}
    quadric, quartic = surface_equations(pr)

    def chart_poly(p5):
        imgs = []
        for k in range(5):
            if k == c:
                imgs.append(MultiPoly.const(T, 4, 1))
            else:
                imgs.append(MultiPoly.variable(T, 4, pos[k]))
        return p5.substitute(imgs)

    q4 = chart_poly(quadric)
    f4 = chart_poly(quartic)
    apt = [pt[k] for k in chart]

    qc, qlin, qquad = q4.jet2(apt)
    if not qc.is_zero():
        raise NotOnSurface("point is not on the quadric")
    g = qlin.get(0)
    if g is None or g.is_zero():
        raise QuadricSingularAtPoint("solved coordinate has zero gradient")
    ginv = g.invert()
    zero = T.zero()
    # x_zc = p_zc + L(e) + Q(e): L from order-1, Q from order-2 matching
    L = {w: -(qlin.get(w, zero)) * ginv for w in (1, 2, 3)}

    def sub_quad(quad):
        """Substitute e_0 -> L(e) in a 4-variable quadratic dict, producing a
        3-variable quadratic dict keyed by (i,j), 1<=i<=j<=3."""
        out = {}

        def addq(i, j, v):
            if v.is_zero():
                return
            key = (i, j) if i <= j else (j, i)
            out[key] = out.get(key, zero) + v

        for (i, j), v in quad.items():
            if i == 0 and j == 0:
                # (sum_w L_w e_w)^2: the ordered double loop counts each
                # off-diagonal pair twice, as the expansion requires
                for w1 in (1, 2, 3):
                    for w2 in (1, 2, 3):
                        addq(w1, w2, v * L[w1] * L[w2])
            elif i == 0 or j == 0:
                w = j if i == 0 else i
                for w1 in (1, 2, 3):
                    addq(w1, w, v * L[w1])
            else:
                addq(i, j, v)
        return {k: v for k, v in out.items() if not v.is_zero()}

    Q2 = {k: -(v * ginv) for k, v in sub_quad(qquad).items()}

    fc, flin, fquad = f4.jet2(apt)
    if not fc.is_zero():
        raise NotOnSurface("point is not on the quartic")
    fz = flin.get(0, zero)
    singular = all((flin.get(w, zero) + fz * L[w]).is_zero() for w in (1, 2, 3))

    total = sub_quad(fquad)
    for k, v in Q2.items():
        total[k] = total.get(k, zero) + fz * v

    half = T.from_rational(1, 2)
    H = [[zero for _ in range(3)] for _ in range(3)]
    for (i, j), v in total.items():
        if v.is_zero():
            continue
        if i == j:
            H[i - 1][i - 1] = v
        else:
            H[i - 1][j - 1] = H[i - 1][j - 1] + v * half
            H[j - 1][i - 1] = H[j - 1][i - 1] + v * half
    return H, singular


def odp_certify(P: ProjPoint, params: SurfaceParams, label: str = '',
                pair=None) -> SingularityReport:
    """Certify the singular point P: solve the quadric to second order in a
    deterministic chart, restrict the quartic, and compute the exact rank of
    the resulting 3x3 symmetric form.  is_odp iff the rank is 3."""
    H, singular = restricted_hessian(P, params)
    if not singular:
        raise ValueError("point is not singular on the surface")
    rank = linalg.symmetric_rank(H)
    return SingularityReport(P, label, rank, pair=pair)


def defect(points) -> int:
    """|points| minus the rank of the cubic-monomial evaluation matrix."""
    if not points:
        return 0
    T = points[0].tower
    keys = set()
    for P in points:
        key = tuple(c.rep for c in P.coords)
        if key in keys:
            raise DuplicatePoints("defect requires pairwise distinct points")
        keys.add(key)
    monos = monomials(T, 5, 3)
    assert len(monos) == 35
    rows = []
    for P in points:
        pw = [[P.coords[i] ** k for k in range(4)] for i in range(5)]
        row = []
        for e in monos:
            v = T.one()
            for i, k in enumerate(e):
                if k:
                    v = v * pw[i][k]
            row.append(v)
        rows.append(row)
    return len(points) - linalg.rank_checked(rows)
