"""Nets of quadrics through seven points of P3 and Cayley octads.

Seven points in sufficiently general position impose independent
conditions on quadric surfaces, leaving a net x F0 + y F1 + z F2 encoded
by three symmetric 4x4 rational matrices.  The determinant of the matrix
pencil is a plane quartic (the Hessian quartic of the net), the base
locus of the net is a regular Cayley octad when the heptad is Aronhold,
and the pairs of octad points mark the 28 bitangents of the Hessian
quartic.  Everything here is exact rational linear algebra plus the
elimination toolkit from polycore.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import covariants as cov
from .polycore import (
    Poly,
    PolyError,
    PolyMatrix,
    clear_denominators,
    coefficients_multi,
    det_fraction,
    exact_divide,
    is_perfect_square,
    macaulay_quotient,
    macaulay_resultant_ternary,
    matrix_rank,
    nullspace,
    rational_roots,
    resultant_bivariate,
    to_dense,
    univariate_gcd,
)
from .polyio import PointSource

# Monomial order for quadric coefficient vectors on P3.
QUADRIC_MONOMIALS = ((0, 0), (1, 1), (2, 2), (3, 3),
                     (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class OctadError(PolyError):
    pass


class DimensionError(OctadError):
    """The heptad imposes dependent conditions; kernel dimension attached."""

    def __init__(self, dimension: int):
        super().__init__(f"quadrics through the points form a system of "
                         f"dimension {dimension}, not 3")
        self.dimension = dimension


class EliminationDegenerate(OctadError):
    """Every attempted coordinate change left the elimination degenerate."""


class NonSquarefree(OctadError):
    """The restricted determinant has a repeated root: singular fiber."""


class CorankTooHigh(OctadError):
    """The net matrix drops rank by two or more at the given point."""


def _point4(p) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    if isinstance(p, PointSource):
        if p.ambient != "P3":
            raise OctadError("expected a point of P3")
        return p.coordinates
    coords = tuple(Fraction(c) for c in p)
    if len(coords) != 4 or all(c == 0 for c in coords):
        raise OctadError("expected a nonzero rational 4-vector")
    return coords


def normalize_point(p) -> Tuple[Fraction, ...]:
    """Primitive integer coordinates with positive first nonzero entry."""
    return tuple(clear_denominators(_point4(p)))


def points_equal(p, q) -> bool:
    return normalize_point(p) == normalize_point(q)


def quadric_eval(matrix, p) -> Fraction:
    coords = _point4(p)
    return sum(coords[i] * matrix[i][j] * coords[j]
               for i in range(4) for j in range(4))


def quadric_polar(matrix, p, q) -> Fraction:
    cp, cq = _point4(p), _point4(q)
    return sum(cp[i] * matrix[i][j] * cq[j] for i in range(4) for j in range(4))


class QuadricNet:
    """Three symmetric 4x4 rational matrices spanning a net of quadrics."""

    def __init__(self, matrices: Sequence[Sequence[Sequence[Fraction]]],
                 basepoints: Sequence = ()):
        mats = []
        for m in matrices:
            rows = tuple(tuple(Fraction(v) for v in row) for row in m)
            if len(rows) != 4 or any(len(r) != 4 for r in rows):
                raise OctadError("net generators must be 4x4")
            for i in range(4):
                for j in range(4):
                    if rows[i][j] != rows[j][i]:
                        raise OctadError("net generators must be symmetric")
            mats.append(rows)
        if len(mats) != 3:
            raise OctadError("a net needs exactly three generators")
        flat = [[m[i][j] for i in range(4) for j in range(i, 4)] for m in mats]
        if matrix_rank(flat) != 3:
            raise OctadError("net generators are linearly dependent")
        self.matrices = tuple(mats)
        self.basepoints = tuple(normalize_point(p) for p in basepoints)
        for p in self.basepoints:
            for m in self.matrices:
                if quadric_eval(m, p) != 0:
                    raise OctadError(f"stored base point {p} is not on every generator")

    def matrix_at(self, xyz) -> List[List[Fraction]]:
        x, y, z = (Fraction(c) for c in xyz)
        a0, a1, a2 = self.matrices
        return [[x * a0[i][j] + y * a1[i][j] + z * a2[i][j] for j in range(4)]
                for i in range(4)]

    def symbol_matrix(self) -> PolyMatrix:
        x, y, z = (Poly.var(n) for n in "xyz")
        a0, a1, a2 = self.matrices
        entries = [[x * a0[i][j] + y * a1[i][j] + z * a2[i][j] for j in range(4)]
                   for i in range(4)]
        return PolyMatrix(entries, symmetric=True)


class Octad:
    """Eight labeled points of P3, the base locus of a net of quadrics."""

    def __init__(self, points: Sequence, net: Optional[QuadricNet] = None,
                 validate: bool = True):
        pts = tuple(normalize_point(p) for p in points)
        if len(pts) != 8:
            raise OctadError("an octad has eight points")
        if validate:
            for a, b in itertools.combinations(range(8), 2):
                if pts[a] == pts[b]:
                    raise OctadError(f"octad points {a + 1} and {b + 1} coincide")
            if net is not None:
                for p in pts:
                    for m in net.matrices:
                        if quadric_eval(m, p) != 0:
                            raise OctadError(f"point {p} is off the net")
        self.points = pts
        self.net = net

    def point(self, label: int) -> Tuple[Fraction, ...]:
        if not 1 <= label <= 8:
            raise OctadError("octad labels run from 1 to 8")
        return self.points[label - 1]


@dataclass(frozen=True)
class HessianQuartic:
    quartic: Poly
    smooth: bool
    resultant: Fraction


@dataclass(frozen=True)
class AronholdReport:
    coplanarity: Dict[Tuple[int, int, int, int], Fraction]
    coplanar_quadruples: Tuple[Tuple[int, int, int, int], ...]
    net_dimension: int
    hessian_smooth: Optional[bool]
    hessian_resultant: Optional[Fraction]
    verdict: bool


@dataclass(frozen=True)
class PencilFiber:
    netpoints: Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]
    binary_quartic: Tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
    squarefree: bool
    singular_parameters: Optional[Tuple[Fraction, ...]]
    cross_ratio: Optional[Fraction]
    j: Fraction


@dataclass(frozen=True)
class BitangentCertificate:
    pair: Tuple[int, int]
    line: Tuple[Fraction, Fraction, Fraction]
    restriction: Poly
    square_root: Poly


@dataclass(frozen=True)
class GaleReport:
    points: Tuple[Tuple[Fraction, Fraction, Fraction], ...]
    collinear_triples: Tuple[Tuple[int, int, int], ...]
    conic_six_tuples: Tuple[Tuple[int, ...], ...]
    ok: bool


@dataclass(frozen=True)
class CremonaResult:
    octad: Octad
    net: QuadricNet
    normalized_source_net: QuadricNet
    det_preserved: bool


def _quadric_row(p) -> List[Fraction]:
    c = _point4(p)
    return [c[i] * c[j] for i, j in QUADRIC_MONOMIALS]


def _vector_to_matrix(vec: Sequence[Fraction]) -> List[List[Fraction]]:
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for value, (i, j) in zip(vec, QUADRIC_MONOMIALS):
        if i == j:
            m[i][i] = Fraction(value)
        else:
            m[i][j] = m[j][i] = Fraction(value) / 2
    return m


def net_from_heptad(points: Sequence) -> QuadricNet:
    """Solve the 7x10 interpolation problem for quadrics through 7 points.

    The kernel must be exactly 3-dimensional; its canonical (rref) basis
    is symmetrized into integer matrices.
    """
    pts = [normalize_point(p) for p in points]
    if len(pts) != 7:
        raise OctadError("a heptad has seven points")
    for a, b in itertools.combinations(range(7), 2):
        if pts[a] == pts[b]:
            raise OctadError(f"points {a + 1} and {b + 1} coincide")
    rows = [_quadric_row(p) for p in pts]
    kernel = nullspace(rows)
    if len(kernel) != 3:
        raise DimensionError(len(kernel))
    matrices = []
    for vec in kernel:
        m = _vector_to_matrix(vec)
        flat = clear_denominators([m[i][j] for i in range(4) for j in range(4)])
        matrices.append([[flat[4 * i + j] for j in range(4)] for i in range(4)])
    return QuadricNet(matrices, basepoints=pts)


def hessian_quartic(net: QuadricNet, rng=None) -> HessianQuartic:
    """det(x A0 + y A1 + z A2) with its Macaulay smoothness certificate."""
    quartic = net.symbol_matrix().det()
    if quartic.is_zero() or quartic.weighted_degrees({"x": 1, "y": 1, "z": 1}) != {4}:
        return HessianQuartic(quartic, False, Fraction(0))
    res = macaulay_resultant_ternary(quartic.partial("x"), quartic.partial("y"),
                                     quartic.partial("z"), rng=rng)
    return HessianQuartic(quartic, res != 0, res)


def aronhold_check(points: Sequence, rng=None) -> AronholdReport:
    """Full report: coplanarity determinants, net dimension, Hessian smoothness.

    The verdict (net of dimension 3 and smooth Hessian quartic) is
    equivalent to the heptad being Aronhold.
    """
    pts = [normalize_point(p) for p in points]
    if len(pts) != 7:
        raise OctadError("a heptad has seven points")
    coplanarity = {}
    coplanar = []
    for quad in itertools.combinations(range(7), 4):
        d = det_fraction([list(pts[i]) for i in quad])
        labels = tuple(i + 1 for i in quad)
        coplanarity[labels] = d
        if d == 0:
            coplanar.append(labels)
    try:
        net = net_from_heptad(pts)
        dimension = 3
    except DimensionError as err:
        return AronholdReport(coplanarity, tuple(coplanar), err.dimension,
                              None, None, False)
    hess = hessian_quartic(net, rng=rng)
    verdict = dimension == 3 and hess.smooth
    return AronholdReport(coplanarity, tuple(coplanar), dimension,
                          hess.smooth, hess.resultant, verdict)


# ---------------------------------------------------------------------------
# Eighth base point


def _random_change(rng) -> List[List[Fraction]]:
    while True:
        m = [[Fraction(rng.randint(-4, 4)) for _ in range(4)] for _ in range(4)]
        if det_fraction(m) != 0:
            return m


def _mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def _mat_vec(a, v):
    return [sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def _mat_transpose(a):
    return [list(row) for row in zip(*a)]


def _mat_inverse(a):
    n = len(a)
    aug = [list(map(Fraction, a[i])) + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    from .polycore import rref

    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise OctadError("matrix not invertible")
    return [row[n:] for row in reduced]


def _hide_first_variable(affine: Poly) -> Poly:
    """Homogenize the (x1, x2) part with h, leaving x0 as a coefficient."""
    terms = {}
    for mono, coeff in affine.terms.items():
        exps = dict(mono)
        d = exps.get("x1", 0) + exps.get("x2", 0)
        if d > 2:
            raise OctadError("affine quadric has degree > 2")  # pragma: no cover
        if d < 2:
            exps["h"] = 2 - d
        key = tuple(sorted(exps.items()))
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Poly(terms, affine.variables | {"x1", "x2", "h"})


def eighth_point(net: QuadricNet, rng=None, max_attempts: int = 24,
                 check: Optional[AronholdReport] = None) -> Octad:
    """The eighth base point of the net of an Aronhold heptad.

    Strategy: random rational coordinate change, then eliminate down to a
    degree-8 polynomial in one coordinate by a hidden-variable Macaulay
    resultant of the three quadrics, divide out the seven known roots,
    and back-substitute through univariate gcds.  The result is verified
    on all three generators and against the known seven points.
    """
    if len(net.basepoints) < 7:
        raise OctadError("eighth_point needs the net's seven defining points")
    if check is None:
        check = aronhold_check(net.basepoints[:7])
    if not check.verdict:
        raise OctadError("heptad is not Aronhold (net dimension "
                         f"{check.net_dimension}, smooth={check.hessian_smooth})")
    rng = rng or random.Random(0)
    known = [list(p) for p in net.basepoints[:7]]

    for attempt in range(max_attempts):
        S = [[Fraction(1) if i == j else Fraction(0) for j in range(4)] for i in range(4)] \
            if attempt == 0 else _random_change(rng)
        if det_fraction(S) == 0:
            continue
        Sinv = _mat_inverse(S)
        moved = [_mat_vec(Sinv, p) for p in known]
        if any(p[3] == 0 for p in moved):
            continue
        moved = [[c / p[3] for c in p] for p in moved]
        a_known = [p[0] for p in moved]
        if len(set(a_known)) != 7:
            continue
        B = [_mat_mul(_mat_transpose(S), _mat_mul(m, S)) for m in net.matrices]

        x0, x1, x2 = Poly.var("x0"), Poly.var("x1"), Poly.var("x2")
        coords = [x0, x1, x2, Poly.const(1)]
        quadrics = []
        for m in B:
            q = Poly.zero()
            for i in range(4):
                for j in range(4):
                    if m[i][j]:
                        q = q + coords[i] * coords[j] * m[i][j]
            quadrics.append(q)
        hidden = [_hide_first_variable(q) for q in quadrics]
        quotient, _ = macaulay_quotient(hidden, ("x1", "x2", "h"), (2, 2, 2))
        if quotient is None or quotient.degree_in("x0") != 8:
            continue
        eliminant = quotient
        known_product = Poly.const(1)
        for a in a_known:
            known_product = known_product * (x0 - a)
        try:
            linear = exact_divide(eliminant, known_product)
        except PolyError:
            continue
        dense = to_dense(linear, "x0")
        if len(dense) != 2:
            continue
        a8 = -dense[0] / dense[1]

        specialized = [q.subs({"x0": Poly.const(a8)}) for q in quadrics]
        solution = _solve_two_conics(specialized)
        if solution is None:
            continue
        b8, c8 = solution
        if any(q.eval_at({"x1": b8, "x2": c8}) != 0 for q in specialized):
            continue
        candidate = _mat_vec(S, [a8, b8, c8, Fraction(1)])
        candidate = normalize_point(candidate)
        if any(quadric_eval(m, candidate) != 0 for m in net.matrices):
            continue  # pragma: no cover - the verification above implies this
        if any(candidate == tuple(p) for p in net.basepoints[:7]):
            continue
        return Octad(list(net.basepoints[:7]) + [candidate], net=net)
    raise EliminationDegenerate(
        f"no coordinate change out of {max_attempts} produced a clean elimination")


def _solve_two_conics(conics: Sequence[Poly]):
    """Unique common rational zero of the specialized conics, if clean."""
    pairs = [(0, 1), (0, 2), (1, 2)]
    for i, j in pairs:
        ci, cj = conics[i], conics[j]
        if ci.degree_in("x2") < 1 or cj.degree_in("x2") < 1:
            continue
        ri = resultant_bivariate(ci, cj, "x2")
        others = [k for k in range(3) if k not in (i, j)]
        ck = conics[others[0]]
        if ci.degree_in("x2") < 1 or ck.degree_in("x2") < 1:
            continue
        rk = resultant_bivariate(ci, ck, "x2")
        if ri.is_zero() or rk.is_zero():
            continue
        g = univariate_gcd(ri, rk, "x1")
        if g.degree_in("x1") != 1:
            continue
        dense = to_dense(g, "x1")
        b = -dense[0] / dense[1]
        uni = [q.subs({"x1": Poly.const(b)}) for q in conics]
        gcd2 = None
        for a, bq in itertools.combinations(uni, 2):
            if a.degree_in("x2") >= 1 and bq.degree_in("x2") >= 1:
                g2 = univariate_gcd(a, bq, "x2")
                gcd2 = g2 if gcd2 is None else univariate_gcd(gcd2, g2, "x2")
        if gcd2 is None or gcd2.degree_in("x2") != 1:
            continue
        dense2 = to_dense(gcd2, "x2")
        c = -dense2[0] / dense2[1]
        return b, c
    return None


# ---------------------------------------------------------------------------
# Bitangents


def bitangent_line(octad: Octad, net: QuadricNet, i: int, j: int) -> BitangentCertificate:
    """The pencil of net quadrics through the line P_i P_j, as a dual line.

    A net quadric contains the line exactly when it vanishes at three of
    its points; the two octad points are automatic, so one linear
    condition in (x, y, z) remains.  The Hessian quartic restricted to
    that line must be a perfect square, which is the certificate.
    """
    if not (1 <= i < j <= 8):
        raise OctadError(f"need 1 <= i < j <= 8, got ({i}, {j})")
    pi, pj = octad.point(i), octad.point(j)
    third = [a + b for a, b in zip(pi, pj)]
    conditions = []
    for pt in (pi, pj, third):
        conditions.append([quadric_eval(m, pt) for m in net.matrices])
    rank = matrix_rank(conditions)
    if rank != 1:
        raise OctadError(f"pencil through line ({i},{j}) has condition rank {rank}, "
                         "expected 1 (net subfamily is not a pencil)")
    line = tuple(clear_denominators(
        [quadric_polar(m, pi, pj) for m in net.matrices]))
    if all(c == 0 for c in line):  # pragma: no cover - rank check above
        raise OctadError("degenerate bitangent condition")

    m1, m2 = _line_basis(line)
    quartic = net.symbol_matrix().det()
    a1, a2 = Poly.var("a1"), Poly.var("a2")
    restriction = quartic.subs({
        "x": a1 * m1[0] + a2 * m2[0],
        "y": a1 * m1[1] + a2 * m2[1],
        "z": a1 * m1[2] + a2 * m2[2],
    })
    root = is_perfect_square(restriction)
    if root is None:
        raise OctadError(f"restriction to bitangent ({i},{j}) is not a perfect square")
    return BitangentCertificate((i, j), line, restriction, root)


def _line_basis(line: Sequence[Fraction]):
    """Two independent points of the projective line l0 x + l1 y + l2 z = 0."""
    basis = nullspace([list(line)])
    if len(basis) != 2:
        raise OctadError("line coefficients are degenerate")
    return [tuple(clear_denominators(v)) for v in basis]


def all_bitangents(octad: Octad, net: QuadricNet, jobs: int = 1) -> List[BitangentCertificate]:
    pairs = list(itertools.combinations(range(1, 9), 2))
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.starmap(_bitangent_task,
                                   [(octad.points, net.matrices, i, j) for i, j in pairs])
        return results
    return [bitangent_line(octad, net, i, j) for i, j in pairs]


def _bitangent_task(points, matrices, i, j):
    net = QuadricNet(matrices)
    octad = Octad(points, validate=False)
    return bitangent_line(octad, net, i, j)


# ---------------------------------------------------------------------------
# Pencils and their elliptic fibers


def pencil_fiber(net: QuadricNet, netpoint1, netpoint2) -> PencilFiber:
    """Binary quartic det(alpha M(p1) + beta M(p2)) and the j of its fiber.

    The squarefree test follows the gcd-with-derivative route; j comes
    from the binary-quartic invariants, and additionally from the
    cross-ratio of the four singular parameters whenever those are found
    rational.  The two routes must agree.
    """
    p1 = tuple(Fraction(c) for c in (netpoint1.coordinates if isinstance(netpoint1, PointSource) else netpoint1))
    p2 = tuple(Fraction(c) for c in (netpoint2.coordinates if isinstance(netpoint2, PointSource) else netpoint2))
    if len(p1) != 3 or len(p2) != 3:
        raise OctadError("net points live in the net plane P2")
    if matrix_rank([list(p1), list(p2)]) != 2:
        raise OctadError("net points must be independent")
    M1 = net.matrix_at(p1)
    M2 = net.matrix_at(p2)
    alpha, beta = Poly.var("alpha"), Poly.var("beta")
    entries = [[alpha * M1[i][j] + beta * M2[i][j] for j in range(4)] for i in range(4)]
    d = PolyMatrix(entries, symmetric=True).det()
    by = coefficients_multi(d, ("alpha", "beta"))
    coeffs = tuple(by.get((4 - k, k), Poly.zero()).constant_value() for k in range(5))
    if all(c == 0 for c in coeffs):
        raise NonSquarefree("determinant vanishes identically on the pencil")

    if not _binary_quartic_squarefree(coeffs):
        raise NonSquarefree(f"restricted determinant {coeffs} has a repeated root")

    j_invariant = cov.j_of_binary_quartic(coeffs)

    lam = Poly.var("lam")
    affine = sum((Poly.const(coeffs[k]) * lam ** k for k in range(5)), Poly.zero())
    params = None
    ratio = None
    if coeffs[4] != 0:  # no root at infinity for det(M1 + lam M2)
        roots = rational_roots(affine, "lam")
        if roots is not None and len(roots) == 4:
            params = tuple(sorted(roots))
            ratio = cov.cross_ratio(*params)
            if cov.j_from_cross_ratio(ratio) != j_invariant:
                raise cov.InternalConsistencyError(
                    "cross-ratio route and invariant route disagree")
    return PencilFiber((p1, p2), coeffs, True, params, ratio, j_invariant)


def _binary_quartic_squarefree(coeffs: Sequence[Fraction]) -> bool:
    """Squarefree test for c0 a^4 + c1 a^3 b + ... + c4 b^4 via gcds.

    Dehomogenize at b = 1: the root [1:0] has multiplicity 4 - deg, and
    finite repeated roots are caught by gcd with the derivative.
    """
    lam = Poly.var("lam")
    g = sum((Poly.const(coeffs[k]) * lam ** (4 - k) for k in range(5)), Poly.zero())
    deg = g.degree_in("lam")
    if deg <= 2:
        return False  # [1:0] has multiplicity >= 2
    return univariate_gcd(g, g.partial("lam"), "lam").degree_in("lam") < 1


def dual_point_of_line(p1, p2) -> Tuple[Fraction, Fraction, Fraction]:
    """Cross product: the dual coordinates of the line through p1, p2."""
    a = tuple(Fraction(c) for c in p1)
    b = tuple(Fraction(c) for c in p2)
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


# ---------------------------------------------------------------------------
# Cremona and Gale transforms


def cremona_octad(octad: Octad, center: Sequence[int], net: Optional[QuadricNet] = None) -> CremonaResult:
    """Standard Cremona transformation centered at four octad points.

    The center is normalized to the coordinate simplex; there the net's
    quadrics have zero diagonal and the transformation swaps each
    coefficient a_{ab} x_a x_b with the complementary-index coefficient.
    The determinant of the net matrix is preserved exactly, the four
    center points stay put, and the other four points map through
    coordinate-wise inversion.
    """
    if net is None:
        net = octad.net
    if net is None:
        raise OctadError("cremona_octad needs the octad's net")
    labels = tuple(center)
    if len(set(labels)) != 4 or not all(1 <= c <= 8 for c in labels):
        raise OctadError("center must be four distinct labels in 1..8")
    cols = [octad.point(c) for c in labels]
    T = [[cols[j][i] for j in range(4)] for i in range(4)]
    if det_fraction(T) == 0:
        raise OctadError("center points are projectively dependent")
    Tinv = _mat_inverse(T)

    # One common scalar across the three generators: per-generator scaling
    # would reparametrize the net plane and spoil exact det preservation.
    transformed = [_mat_mul(_mat_transpose(T), _mat_mul(m, T)) for m in net.matrices]
    flat = [v for m in transformed for row in m for v in row]
    cleared = clear_denominators(flat)
    B = [[[cleared[16 * k + 4 * i + j] for j in range(4)] for i in range(4)]
         for k in range(3)]
    for m in B:
        for i in range(4):
            if m[i][i] != 0:
                raise OctadError("center points are not base points of the net")

    complement = {(0, 1): (2, 3), (0, 2): (1, 3), (0, 3): (1, 2),
                  (1, 2): (0, 3), (1, 3): (0, 2), (2, 3): (0, 1)}
    Bp = []
    for m in B:
        out = [[Fraction(0)] * 4 for _ in range(4)]
        for (a, b), (c, d) in complement.items():
            out[c][d] = out[d][c] = m[a][b]
        Bp.append(out)

    moved_points = []
    e_points = {labels[k]: tuple(Fraction(int(i == k)) for i in range(4))
                for k in range(4)}
    for label in range(1, 9):
        if label in labels:
            moved_points.append(e_points[label])
            continue
        q = _mat_vec(Tinv, list(octad.point(label)))
        zeros = sum(1 for c in q if c == 0)
        if zeros >= 2:
            raise OctadError(f"point {label} lies on a line through two center points; "
                             "its Cremona image is undefined")
        image = [q[1] * q[2] * q[3], q[0] * q[2] * q[3],
                 q[0] * q[1] * q[3], q[0] * q[1] * q[2]]
        moved_points.append(tuple(image))

    norm_net = QuadricNet(B, basepoints=[_mat_vec(Tinv, list(p)) for p in octad.points])
    new_net = QuadricNet(Bp, basepoints=moved_points)
    new_octad = Octad(moved_points, net=new_net)
    det_old = norm_net.symbol_matrix().det()
    det_new = new_net.symbol_matrix().det()
    return CremonaResult(new_octad, new_net, norm_net, det_old == det_new)


def gale_transform(octad: Octad, forms: Optional[Sequence[Sequence[Fraction]]] = None) -> GaleReport:
    """Project P1..P7 from P8 and run the plane-position checks.

    The three projecting linear forms are the canonical (rref) kernel
    basis of the single constraint <v, P8> = 0 unless supplied; different
    valid choices differ by a projective transformation of the image.
    """
    p8 = octad.point(8)
    if forms is None:
        basis = nullspace([list(p8)])
        forms = [clear_denominators(v) for v in basis]
    forms = [list(map(Fraction, f)) for f in forms]
    if len(forms) != 3 or matrix_rank(forms) != 3:
        raise OctadError("need three independent projecting forms")
    if any(sum(f[k] * p8[k] for k in range(4)) != 0 for f in forms):
        raise OctadError("projecting forms must vanish at the eighth point")
    images = []
    for label in range(1, 8):
        p = octad.point(label)
        q = tuple(sum(f[k] * p[k] for k in range(4)) for f in forms)
        if all(c == 0 for c in q):
            raise OctadError(f"point {label} coincides with the projection center")
        images.append(tuple(clear_denominators(q)))
    collinear = []
    for triple in itertools.combinations(range(7), 3):
        if det_fraction([list(images[i]) for i in triple]) == 0:
            collinear.append(tuple(i + 1 for i in triple))
    conic_bad = []
    for six in itertools.combinations(range(7), 6):
        rows = []
        for i in six:
            x, y, z = images[i]
            rows.append([x * x, y * y, z * z, x * y, x * z, y * z])
        if det_fraction(rows) == 0:
            conic_bad.append(tuple(i + 1 for i in six))
    ok = not collinear and not conic_bad
    return GaleReport(tuple(images), tuple(collinear), tuple(conic_bad), ok)


def steinerian_point(net: QuadricNet, q) -> Tuple[Fraction, ...]:
    """Kernel generator of M(q) for q on the Hessian quartic, rank 3."""
    if isinstance(q, PointSource):
        if q.ambient != "P2":
            raise OctadError("expected a point of the net plane P2")
        coords = q.coordinates
    else:
        coords = tuple(Fraction(c) for c in q)
    m = net.matrix_at(coords)
    if det_fraction(m) != 0:
        raise OctadError(f"{tuple(map(str, coords))} is not on the Hessian quartic")
    rank = matrix_rank(m)
    if rank <= 2:
        raise CorankTooHigh(f"net matrix has rank {rank} <= 2 at the point")
    kernel = nullspace(m)
    point = tuple(clear_denominators(kernel[0]))
    if any(sum(m[i][k] * point[k] for k in range(4)) != 0 for i in range(4)):
        raise OctadError("kernel verification failed")  # pragma: no cover
    return point


# ---------------------------------------------------------------------------
# Projective equivalence of labeled configurations


def _frame_map(points: Sequence[Sequence[Fraction]], labels: Sequence[int]):
    """Matrix sending the standard frame to the chosen labeled points."""
    n = len(points[0])
    basis = [list(points[i]) for i in labels[:n]]
    M = _mat_transpose(basis)
    if det_fraction(M) == 0:
        return None
    unit = list(points[labels[n]])
    coeffs = _mat_vec(_mat_inverse(M), unit)
    if any(c == 0 for c in coeffs):
        return None
    return [[M[i][j] * coeffs[j] for j in range(n)] for i in range(n)]


def configs_projectively_equivalent(config1: Sequence, config2: Sequence) -> bool:
    """Label-respecting projective equivalence of two point configurations."""
    pts1 = [list(map(Fraction, p)) for p in config1]
    pts2 = [list(map(Fraction, p)) for p in config2]
    if len(pts1) != len(pts2) or not pts1:
        return False
    n = len(pts1[0])
    for labels in itertools.combinations(range(len(pts1)), n + 1):
        F1 = _frame_map(pts1, labels)
        F2 = _frame_map(pts2, labels)
        if F1 is None or F2 is None:
            if (F1 is None) != (F2 is None):
                return False
            continue
        inv1 = _mat_inverse(F1)
        inv2 = _mat_inverse(F2)
        for p, q in zip(pts1, pts2):
            a = clear_denominators(_mat_vec(inv1, p))
            b = clear_denominators(_mat_vec(inv2, q))
            if a != b:
                return False
        return True
    return False
