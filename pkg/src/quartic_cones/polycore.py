"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a dictionary mapping monomials to nonzero Fraction
coefficients.  A monomial is a sorted tuple of (variable, exponent) pairs
with all exponents positive, so equal polynomials always have identical
term dictionaries.  Term order, where one is needed (leading terms,
printing, division), is graded lexicographic with variables compared
alphabetically.

All values are immutable after construction and safe to share between
threads.  There is no floating point anywhere in this module.

Besides the polynomial ring the module provides the elimination toolkit
used by the rest of the package: cofactor and fraction-free (Bareiss)
determinants of polynomial matrices, Sylvester resultants, the Macaulay
resultant of three ternary forms, perfect-square detection, and exact
linear algebra over the rationals (rref, rank, nullspace).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import isqrt
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Mono = Tuple[Tuple[str, int], ...]

Scalar = (int, Fraction)


class PolyError(Exception):
    """Base class for errors raised by the polynomial kernel."""


class ScopeError(PolyError):
    """A variable is not in scope for the requested operation."""


class NotDivisibleError(PolyError):
    """Exact division failed; carries the nonzero remainder witness."""

    def __init__(self, remainder: "Poly"):
        super().__init__(f"not divisible, remainder {remainder}")
        self.remainder = remainder


class DegreeError(PolyError):
    """An input does not have the degree required by the operation."""


class HomogeneityError(PolyError):
    """An input is not (weighted) homogeneous as required."""


class MacaulayDegenerateError(PolyError):
    """The Macaulay minor stayed singular through all coordinate changes."""


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    exps: Dict[str, int] = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_div(a: Mono, b: Mono) -> Optional[Mono]:
    """a / b, or None when b does not divide a."""
    exps = dict(a)
    for name, e in b:
        r = exps.get(name, 0) - e
        if r < 0:
            return None
        if r == 0:
            exps.pop(name, None)
        else:
            exps[name] = r
    return tuple(sorted(exps.items()))


def _mono_key(m: Mono, varlist: Sequence[str]) -> Tuple:
    exps = dict(m)
    return (_mono_degree(m),) + tuple(exps.get(v, 0) for v in varlist)


class Poly:
    """Sparse exact-rational multivariate polynomial.

    ``terms`` maps monomials to nonzero coefficients; the zero polynomial
    has an empty term map.  ``variables`` is the scope: every variable
    appearing in a term plus any explicitly declared ones (a parser may
    declare variables that end up unused).  Scope participates in scope
    checks only; equality and hashing are purely semantic.
    """

    __slots__ = ("terms", "variables")

    def __init__(self, terms: Mapping[Mono, Fraction] | None = None,
                 variables: Iterable[str] = ()):
        clean: Dict[Mono, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = Fraction(coeff)
                if c != 0:
                    clean[mono] = c
        scope = set(variables)
        for mono in clean:
            for name, _ in mono:
                scope.add(name)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "variables", frozenset(scope))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        # the setattr guard breaks pickle's default slot restore
        return (Poly, (self.terms, tuple(self.variables)))

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly({})

    @staticmethod
    def const(c) -> "Poly":
        return Poly({(): Fraction(c)})

    @staticmethod
    def var(name: str) -> "Poly":
        return Poly({((name, 1),): Fraction(1)})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise PolyError(f"not a constant polynomial: {self}")
        return self.terms[()]

    def total_degree(self) -> int:
        """Total degree; the zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def degree_in(self, var: str) -> int:
        if not self.terms:
            return -1
        return max((dict(m).get(var, 0) for m in self.terms), default=0)

    def weighted_degrees(self, weights: Mapping[str, int]) -> set:
        degs = set()
        for m in self.terms:
            degs.add(sum(weights.get(name, 0) * e for name, e in m))
        return degs

    def is_homogeneous(self, weights: Mapping[str, int] | None = None) -> bool:
        if not self.terms:
            return True
        if weights is None:
            weights = {v: 1 for v in self.variables}
        return len(self.weighted_degrees(weights)) == 1

    def homogeneous_degree(self, weights: Mapping[str, int] | None = None) -> int:
        if weights is None:
            weights = {v: 1 for v in self.variables}
        degs = self.weighted_degrees(weights)
        if len(degs) != 1:
            raise HomogeneityError(f"not homogeneous for weights {dict(weights)}")
        return degs.pop()

    def coefficient(self, mono: Mono) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def leading(self) -> Tuple[Mono, Fraction]:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        varlist = sorted(self.variables)
        mono = max(self.terms, key=lambda m: _mono_key(m, varlist))
        return mono, self.terms[mono]

    # -- ring operations -----------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, Scalar):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        q = Poly._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in q.terms.items():
            s = out.get(mono, Fraction(0)) + coeff
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Poly(out, self.variables | q.variables)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        q = Poly._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        q = Poly._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        if not self.terms or not q.terms:
            return Poly({}, self.variables | q.variables)
        out: Dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in q.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(out, self.variables | q.variables)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            c = Fraction(other)
            if c == 0:
                raise ZeroDivisionError("division of Poly by zero scalar")
            return Poly({m: v / c for m, v in self.terms.items()}, self.variables)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        q = Poly._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        return self.terms == q.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list:
        """Terms in canonical (graded-lex descending) order."""
        varlist = sorted(self.variables)
        return sorted(self.terms.items(),
                      key=lambda mc: _mono_key(mc[0], varlist), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    # -- calculus and substitution --------------------------------------

    def partial(self, var: str) -> "Poly":
        """Exact formal derivative with respect to ``var``."""
        if var not in self.variables:
            raise ScopeError(f"variable {var!r} not in scope {sorted(self.variables)}")
        out: Dict[Mono, Fraction] = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            e = exps.get(var, 0)
            if e == 0:
                continue
            if e == 1:
                exps.pop(var)
            else:
                exps[var] = e - 1
            m = tuple(sorted(exps.items()))
            s = out.get(m, Fraction(0)) + coeff * e
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out, self.variables)

    def subs(self, bindings: Mapping[str, "Poly | Fraction | int"]) -> "Poly":
        """Substitute polynomials (or scalars) for variables, exactly."""
        for var in bindings:
            if var not in self.variables:
                raise ScopeError(f"variable {var!r} not in scope {sorted(self.variables)}")
        coerced = {v: (p if isinstance(p, Poly) else Poly.const(p))
                   for v, p in bindings.items()}
        result = Poly.zero()
        power_cache: Dict[Tuple[str, int], Poly] = {}
        for mono, coeff in self.terms.items():
            term = Poly.const(coeff)
            for name, e in mono:
                if name in coerced:
                    key = (name, e)
                    if key not in power_cache:
                        power_cache[key] = coerced[name] ** e
                    term = term * power_cache[key]
                else:
                    term = term * Poly({((name, e),): Fraction(1)})
            result = result + term
        keep = self.variables - set(bindings)
        return Poly(result.terms, result.variables | keep)

    def eval_at(self, bindings: Mapping[str, Fraction | int]) -> Fraction:
        """Full evaluation; every variable appearing in a term must be bound."""
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for name, e in mono:
                if name not in bindings:
                    raise ScopeError(f"no value supplied for variable {name!r}")
                value *= Fraction(bindings[name]) ** e
            total += value
        return total


def format_poly(p: Poly) -> str:
    """Canonical text form: graded-lex descending terms, normalized signs.

    The output obeys the expression grammar in polyio, so parsing it back
    recovers the polynomial exactly.
    """
    if p.is_zero():
        return "0"
    pieces = []
    for mono, coeff in p.sorted_terms():
        factors = [name if e == 1 else f"{name}^{e}" for name, e in mono]
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not pieces:
            pieces.append(body if coeff > 0 else "-" + body)
        else:
            pieces.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(pieces)


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def sub(p: Poly, q: Poly) -> Poly:
    return p - q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def exact_divide(p: Poly, d: Poly) -> Poly:
    """Return q with q*d == p exactly, or raise NotDivisibleError.

    Long division against the single divisor d under graded-lex order.
    Because leading monomials are multiplicative, the first failed
    leading-term division already proves non-divisibility, and the
    offending remainder is the witness.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    varlist = sorted(p.variables | d.variables)
    lead_d = max(d.terms, key=lambda m: _mono_key(m, varlist)) if d.terms else ()
    cd = d.terms[lead_d]
    quotient: Dict[Mono, Fraction] = {}
    rem = p
    while rem.terms:
        lead_r = max(rem.terms, key=lambda m: _mono_key(m, varlist))
        m = _mono_div(lead_r, lead_d)
        if m is None:
            raise NotDivisibleError(rem)
        c = rem.terms[lead_r] / cd
        quotient[m] = c
        rem = rem - Poly({m: c}) * d
    return Poly(quotient, p.variables | d.variables)


def divides(d: Poly, p: Poly) -> bool:
    try:
        exact_divide(p, d)
        return True
    except NotDivisibleError:
        return False


# ---------------------------------------------------------------------------
# Polynomial matrices and determinants


class PolyMatrix:
    """Square grid of Poly entries, optionally flagged symmetric."""

    def __init__(self, entries: Sequence[Sequence[Poly]], symmetric: bool = False):
        rows = tuple(tuple(e if isinstance(e, Poly) else Poly.const(e) for e in row)
                     for row in entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise PolyError("PolyMatrix must be square")
        if symmetric:
            for i in range(n):
                for j in range(i + 1, n):
                    if rows[i][j] != rows[j][i]:
                        raise PolyError(f"symmetric flag set but entry ({i},{j}) != ({j},{i})")
        self.entries = rows
        self.n = n
        self.symmetric = symmetric

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def det(self) -> Poly:
        """Exact determinant.

        Cofactor expansion and fraction-free elimination are both
        implemented; they are cross-checked here for small matrices
        (cofactor cost explodes beyond that) and in the randomized
        test suite.
        """
        d = self.det_bareiss()
        if self.n <= 4:
            if d != self.det_cofactor():
                raise PolyError("determinant cross-check failed")
        return d

    def det_cofactor(self) -> Poly:
        return _det_cofactor(self.entries)

    def det_bareiss(self) -> Poly:
        return _det_bareiss([list(row) for row in self.entries])


def _det_cofactor(rows) -> Poly:
    n = len(rows)
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return rows[0][0]
    total = Poly.zero()
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        piece = a * _det_cofactor(minor)
        total = total + (piece if j % 2 == 0 else -piece)
    return total


def _det_bareiss(m) -> Poly:
    """Bareiss fraction-free elimination; divisions are exact in Q[x...]."""
    n = len(m)
    if n == 0:
        return Poly.const(1)
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return Poly.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev)
            m[i][k] = Poly.zero()
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def det(matrix: PolyMatrix) -> Poly:
    return matrix.det()


# ---------------------------------------------------------------------------
# Resultants


def resultant_bivariate(p: Poly, q: Poly, var: str) -> Poly:
    """Sylvester resultant of p and q with respect to ``var``.

    Both inputs must have positive degree in ``var``; the result is a
    polynomial in the remaining variables.
    """
    m = p.degree_in(var)
    n = q.degree_in(var)
    if m <= 0 or n <= 0:
        raise DegreeError(f"both inputs need positive degree in {var!r} (got {m}, {n})")
    pc = coefficients_in(p, var)
    qc = coefficients_in(q, var)
    size = m + n
    zero = Poly.zero()
    rows = []
    for shift in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[shift + k] = pc[m - k]
        rows.append(row)
    for shift in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[shift + k] = qc[n - k]
        rows.append(row)
    return PolyMatrix(rows).det_bareiss()


def coefficients_in(p: Poly, var: str) -> list:
    """Dense coefficient list [c0, c1, ...] of p as a polynomial in ``var``."""
    deg = max(p.degree_in(var), 0)
    coeffs = [Poly.zero()] * (deg + 1)
    for mono, coeff in p.terms.items():
        exps = dict(mono)
        e = exps.pop(var, 0)
        rest = tuple(sorted(exps.items()))
        coeffs[e] = coeffs[e] + Poly({rest: coeff})
    return coeffs


def coefficients_multi(p: Poly, variables: Sequence[str]) -> Dict[Tuple[int, ...], Poly]:
    """Group terms by their exponents on ``variables``; values collect the rest."""
    out: Dict[Tuple[int, ...], Dict[Mono, Fraction]] = {}
    vs = tuple(variables)
    for mono, coeff in p.terms.items():
        exps = dict(mono)
        key = tuple(exps.pop(v, 0) for v in vs)
        rest = tuple(sorted(exps.items()))
        bucket = out.setdefault(key, {})
        bucket[rest] = bucket.get(rest, Fraction(0)) + coeff
    return {k: Poly(v) for k, v in out.items() if any(c != 0 for c in v.values())}


def _monomials_of_degree(variables: Sequence[str], degree: int) -> list:
    """All exponent tuples over ``variables`` summing to ``degree``, grlex-descending."""
    n = len(variables)
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, n)
    return out


def macaulay_quotient(forms: Sequence[Poly], variables: Sequence[str],
                      degrees: Sequence[int]):
    """Classical Macaulay construction for n forms in n variables.

    Returns (quotient, det_minor): the resultant candidate det(M)/det(M')
    and the minor that was divided out.  When det(M') is zero the pair
    (None, zero) is returned and the caller decides how to recover
    (typically by a random linear change of coordinates).

    Coefficients of the forms may be polynomials in other variables; the
    construction then happens over that coefficient ring, which is how
    the hidden-variable eliminations elsewhere in the package reuse it.
    """
    vs = tuple(variables)
    n = len(vs)
    if len(forms) != n or len(degrees) != n:
        raise PolyError("need as many forms and degrees as variables")
    crit = sum(degrees) - n + 1
    monos = _monomials_of_degree(vs, crit)
    index = {m: i for i, m in enumerate(monos)}

    def divisor_class(expt):
        for i in range(n):
            if expt[i] >= degrees[i]:
                return i
        raise PolyError("monomial below critical degree")  # pragma: no cover

    def reduced(expt):
        return sum(1 for i in range(n) if expt[i] >= degrees[i]) == 1

    zero = Poly.zero()
    size = len(monos)
    matrix = [[zero] * size for _ in range(size)]
    for r, expt in enumerate(monos):
        i = divisor_class(expt)
        shift = list(expt)
        shift[i] -= degrees[i]
        mult = Poly({tuple((vs[k], e) for k, e in enumerate(shift) if e): Fraction(1)})
        prod = mult * forms[i]
        for key, coeff_poly in coefficients_multi(prod, vs).items():
            col = index.get(key)
            if col is None:
                raise HomogeneityError(
                    f"form {i} is not homogeneous of degree {degrees[i]} in {vs}")
            matrix[r][col] = coeff_poly
    big = PolyMatrix(matrix).det_bareiss()
    keep = [r for r, expt in enumerate(monos) if not reduced(expt)]
    minor_rows = [[matrix[r][c] for c in keep] for r in keep]
    minor = PolyMatrix(minor_rows).det_bareiss()
    if minor.is_zero():
        return None, minor
    return exact_divide(big, minor), minor


def ideal_spans_critical_degree(forms: Sequence[Poly], variables: Sequence[str],
                                degrees: Sequence[int]) -> bool:
    """Exact decision: do the forms have NO common projective zero?

    By the Macaulay bound, n homogeneous forms in n variables without a
    common zero generate everything in the critical degree
    sum(d_i) - n + 1, while a common zero forces the multiplication map
    into a proper subspace.  The rank test is field-stable, so rational
    linear algebra decides the question over the complex numbers.
    """
    vs = tuple(variables)
    crit = sum(degrees) - len(vs) + 1
    target = _monomials_of_degree(vs, crit)
    index = {m: i for i, m in enumerate(target)}
    rows = []
    for f, d in zip(forms, degrees):
        for expt in _monomials_of_degree(vs, crit - d):
            mult = Poly({tuple((vs[k], e) for k, e in enumerate(expt) if e): Fraction(1)})
            prod = mult * f
            row = [Fraction(0)] * len(target)
            for key, coeff in coefficients_multi(prod, vs).items():
                row[index[key]] = coeff.constant_value()
            rows.append(row)
    return matrix_rank(rows) == len(target)


def macaulay_resultant_ternary(f1: Poly, f2: Poly, f3: Poly,
                               variables: Sequence[str] = ("x", "y", "z"),
                               rng=None, max_retries: int = 8) -> Fraction:
    """Macaulay resultant of three ternary forms of one common degree.

    Zero exactly when the forms share a projective zero over the complex
    numbers.  When the Macaulay minor degenerates, a random invertible
    rational change of coordinates is applied and the computation retried;
    the change rescales the resultant by a nonzero factor, so vanishing is
    preserved.  Systems with positive-dimensional zero loci can keep the
    minor singular in every frame; those are decided (exactly) by the
    critical-degree rank test and reported as resultant zero.
    """
    forms = [f1, f2, f3]
    vs = tuple(variables)
    degs = []
    for f in forms:
        extra = f.variables - set(vs)
        if any(f.degree_in(v) > 0 for v in extra):
            raise PolyError(f"coefficients must be rational; stray variables {sorted(extra)}")
        if f.is_zero():
            continue
        degs.append(f.homogeneous_degree({v: 1 for v in vs}))
    if any(f.is_zero() for f in forms):
        # A zero form shares a projective zero with the other two always
        # (two ternary forms of positive degree meet in P2).
        return Fraction(0)
    if len(set(degs)) != 1:
        raise HomogeneityError(f"forms must share one degree, got {degs}")
    d = degs[0]
    if d < 1:
        raise DegreeError("forms must have positive degree")

    current = forms
    for attempt in range(max_retries + 1):
        quotient, _ = macaulay_quotient(current, vs, (d, d, d))
        if quotient is not None:
            return quotient.constant_value()
        if attempt == 1 and not ideal_spans_critical_degree(forms, vs, (d, d, d)):
            return Fraction(0)
        if rng is None:
            import random

            rng = random.Random(20230901)
        current = _random_linear_change(forms, vs, rng)
    raise MacaulayDegenerateError("Macaulay minor vanished for every coordinate change")


def _random_linear_change(forms: Sequence[Poly], vs: Sequence[str], rng):
    n = len(vs)
    while True:
        mat = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
        if det_fraction(mat) != 0:
            break
    images = {vs[i]: sum((Poly.var(vs[j]) * mat[i][j] for j in range(n)), Poly.zero())
              for i in range(n)}
    return [f.subs(images) for f in forms]


# ---------------------------------------------------------------------------
# Perfect squares and rational roots of rationals


def rational_sqrt(c: Fraction) -> Optional[Fraction]:
    """Exact nonnegative square root of c, or None when c is not a square."""
    c = Fraction(c)
    if c < 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rational_cbrt(c: Fraction) -> Optional[Fraction]:
    c = Fraction(c)
    sign = -1 if c < 0 else 1
    n, d = abs(c.numerator), c.denominator
    rn = round(n ** (1 / 3)) if n < 1 << 50 else _icbrt(n)
    rd = round(d ** (1 / 3)) if d < 1 << 50 else _icbrt(d)
    for a in (rn - 1, rn, rn + 1):
        for b in (rd - 1, rd, rd + 1):
            if a >= 0 and b >= 1 and a ** 3 == n and b ** 3 == d:
                return Fraction(sign * a, b)
    return None


def _icbrt(n: int) -> int:
    lo, hi = 0, 1 << ((n.bit_length() + 2) // 3 + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** 3 <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def is_perfect_square(p: Poly) -> Optional[Poly]:
    """Return q with q*q == p when p is a square of a polynomial, else None.

    Leading-term square-root extraction under graded-lex; the final
    verification is by squaring, so a returned witness is always exact.
    """
    if p.is_zero():
        return Poly.zero()
    varlist = sorted(p.variables)
    lead_m, lead_c = max(((m, c) for m, c in p.terms.items()),
                         key=lambda mc: _mono_key(mc[0], varlist))
    if any(e % 2 for _, e in lead_m):
        return None
    root_c = rational_sqrt(lead_c)
    if root_c is None:
        return None
    half = tuple((name, e // 2) for name, e in lead_m)
    q = Poly({half: root_c})
    rem = p - q * q
    prev_key = _mono_key(lead_m, varlist)
    while rem.terms:
        m = max(rem.terms, key=lambda mm: _mono_key(mm, varlist))
        key = _mono_key(m, varlist)
        if key >= prev_key:
            return None
        prev_key = key
        t_mono = _mono_div(m, half)
        if t_mono is None:
            return None
        t = Poly({t_mono: rem.terms[m] / (2 * root_c)})
        q = q + t
        rem = p - q * q
    if q * q != p:  # pragma: no cover - construction guarantees this
        return None
    return q


# ---------------------------------------------------------------------------
# Univariate helpers (dense, over Fraction coefficients)


def to_dense(p: Poly, var: str) -> list:
    """Coefficient list [c0, c1, ...] as Fractions; p must involve only var."""
    extra = {v for v in p.variables if p.degree_in(v) > 0} - {var}
    if extra:
        raise ScopeError(f"polynomial is not univariate in {var!r}: {sorted(extra)}")
    return [c.constant_value() for c in coefficients_in(p, var)]


def from_dense(coeffs: Sequence[Fraction], var: str) -> Poly:
    terms = {}
    for e, c in enumerate(coeffs):
        if c:
            terms[((var, e),) if e else ()] = Fraction(c)
    return Poly(terms, {var})


def _dense_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _dense_mod(a: list, b: list) -> list:
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b):
        factor = a[-1] / lb
        shift = len(a) - len(b)
        for i, cb in enumerate(b):
            a[shift + i] -= factor * cb
        _dense_trim(a)
        if not a:
            break
    return a


def univariate_gcd(p: Poly, q: Poly, var: str) -> Poly:
    """Monic gcd of two univariate polynomials over the rationals."""
    a = _dense_trim(to_dense(p, var))
    b = _dense_trim(to_dense(q, var))
    while b:
        a, b = b, _dense_mod(a, b)
    if not a:
        return Poly.zero()
    lead = a[-1]
    return from_dense([c / lead for c in a], var)


def _int_divisors(n: int, trial_bound: int = 1_000_000) -> Optional[list]:
    """All positive divisors of |n|, or None when factoring exceeds the bound."""
    n = abs(n)
    if n == 0:
        return None
    factors = {}
    m = n
    f = 2
    while f * f <= m:
        if f > trial_bound:
            return None
        while m % f == 0:
            factors[f] = factors.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    divisors = [1]
    for prime, mult in factors.items():
        divisors = [d * prime ** k for d in divisors for k in range(mult + 1)]
    return sorted(divisors)


def rational_roots(p: Poly, var: str) -> Optional[list]:
    """All rational roots (with multiplicity) of a univariate polynomial.

    Uses the rational-root theorem after clearing denominators.  Returns
    None when the integer factorizations needed exceed the trial-division
    bound; callers treat that as "roots not determined".
    """
    coeffs = _dense_trim(to_dense(p, var))
    if not coeffs:
        raise PolyError("zero polynomial has every root")
    from math import lcm

    denlcm = lcm(*[c.denominator for c in coeffs]) if len(coeffs) > 1 else coeffs[0].denominator
    ints = [int(c * denlcm) for c in coeffs]
    roots = []
    while ints and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return roots
    num_divs = _int_divisors(ints[0])
    den_divs = _int_divisors(ints[-1])
    if num_divs is None or den_divs is None:
        return None
    candidates = set()
    for a in num_divs:
        for b in den_divs:
            candidates.add(Fraction(a, b))
            candidates.add(Fraction(-a, b))
    current = list(ints)
    for r in sorted(candidates):
        while len(current) > 1 and _dense_eval(current, r) == 0:
            roots.append(r)
            current = _dense_deflate(current, r)
    return roots


def _dense_eval(coeffs: Sequence, x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _dense_deflate(coeffs: Sequence, root: Fraction) -> list:
    out = [Fraction(0)] * (len(coeffs) - 1)
    carry = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        carry = Fraction(coeffs[i]) + carry * root
        out[i - 1] = carry
    return out


# ---------------------------------------------------------------------------
# Exact linear algebra over the rationals (dense, small matrices)


def det_fraction(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    sign = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    result = Fraction(sign)
    for k in range(n):
        result *= m[k][k]
    return result


def rref(rows: Sequence[Sequence[Fraction]]):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def matrix_rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]]) -> list:
    """Canonical basis of the right kernel, by back-substitution from rref."""
    if not rows:
        return []
    reduced, pivots = rref(rows)
    n_cols = len(rows[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n_cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis


def clear_denominators(vec: Sequence[Fraction]):
    """Scale to primitive integer entries, first nonzero entry positive."""
    from math import gcd, lcm

    fracs = [Fraction(v) for v in vec]
    denoms = [f.denominator for f in fracs]
    scale = lcm(*denoms) if denoms else 1
    ints = [int(f * scale) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v != 0), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return [Fraction(v) for v in ints]
