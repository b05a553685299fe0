"""Exact gcd, resultant, discriminant and squarefree structure for MultiPoly.

Strategy: univariate gcds over Q go through a verified modular algorithm
(candidates from big-prime images, certified by exact trial division);
everything else uses primitive/subresultant pseudo-remainder sequences with
content extraction, recursing on the coefficient ring.  All paths are exact
and propagate :class:`~folgal.numberfield.FieldSplit`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .multipoly import MultiPoly
from .numberfield import FieldElement, RationalField, poly_divmod


class DegenerateResultant(Exception):
    pass


# -- univariate gcd over Q: verified modular ----------------------------------------

_PRIMES: list[int] = []


def _more_primes(count: int):
    from sympy import nextprime

    start = _PRIMES[-1] if _PRIMES else (1 << 62)
    p = start
    for _ in range(count):
        p = nextprime(p)
        _PRIMES.append(p)


def _prime(i: int) -> int:
    while i >= len(_PRIMES):
        _more_primes(16)
    return _PRIMES[i]


def _int_primitive(coeffs: list[int]) -> list[int]:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
        if g == 1:
            break
    if g == 0:
        return coeffs
    sign = -1 if coeffs[-1] < 0 else 1
    g *= sign
    return [c // g for c in coeffs]


def _gf_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    g = [c % p for c in g]

    def trim(a):
        while a and a[-1] == 0:
            a.pop()
        return a

    trim(f)
    trim(g)
    while g:
        inv = pow(g[-1], -1, p)
        while len(f) >= len(g):
            c = f[-1] * inv % p
            k = len(f) - len(g)
            for i, gc in enumerate(g):
                f[i + k] = (f[i + k] - c * gc) % p
            trim(f)
        f, g = g, f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def _int_poly_divides(d: list[int], f: list[int]) -> bool:
    f = list(f)
    while len(f) >= len(d):
        if f[-1] % d[-1]:
            return False
        c = f[-1] // d[-1]
        k = len(f) - len(d)
        for i, dc in enumerate(d):
            f[i + k] -= c * dc
        while f and f[-1] == 0:
            f.pop()
        if not f:
            return True
    return not f


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _gcd_univariate_int(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd in Z[x] via big primes with exact divide verification."""
    f = _int_primitive(list(f))
    g = _int_primitive(list(g))
    if len(f) < len(g):
        f, g = g, f
    lc_g = math.gcd(f[-1], g[-1])
    best: list[int] | None = None
    modulus = 1
    for pi in range(200):
        p = _prime(pi)
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue
        gp = _gf_gcd(f, g, p)
        if len(gp) == 1:
            return [1]
        img = [_symmetric(c * lc_g, p) for c in gp]
        if best is None or len(img) < len(best):
            best, modulus = img, p
            continue
        if len(img) > len(best):
            continue  # unlucky prime
        m_inv = pow(modulus, -1, p)
        new_mod = modulus * p
        combined = [
            _symmetric(a + modulus * ((b - a) * m_inv % p), new_mod)
            for a, b in zip(best, img)
        ]
        if combined == best:
            cand = _int_primitive(list(best))
            if _int_poly_divides(cand, f) and _int_poly_divides(cand, g):
                return cand
        best, modulus = combined, new_mod
    raise RuntimeError("modular gcd failed to stabilize")


def _gcd_univariate_rational(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    """Monic gcd of rational coefficient lists (low-to-high)."""

    def clear(coeffs):
        denom = 1
        for c in coeffs:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
        return [int(c * denom) for c in coeffs]

    if not f:
        return _monic_rational(g)
    if not g:
        return _monic_rational(f)
    res = _gcd_univariate_int(clear(f), clear(g))
    return _monic_rational([Fraction(c) for c in res])


def _monic_rational(coeffs):
    if not coeffs:
        return []
    lc = coeffs[-1]
    return [c / lc for c in coeffs]


# -- univariate gcd over a number field ------------------------------------------------


def _gcd_univariate_field(f: list, g: list, field) -> list:
    """Monic Euclidean gcd; inversions may raise FieldSplit."""

    def trim(a):
        while a and not a[-1]:
            a.pop()
        return a

    f = trim(list(f))
    g = trim(list(g))
    while g:
        _, r = poly_divmod(f, g, field)
        f, g = g, r
    if not f:
        return []
    inv = f[-1].inverse() if isinstance(f[-1], FieldElement) else 1 / f[-1]
    return [c * inv for c in f]


# -- multivariate gcd ---------------------------------------------------------------------


def _active_vars(p: MultiPoly, q: MultiPoly):
    out = []
    for v in p.vars:
        dp, dq = p.degree_in(v), q.degree_in(v)
        if dp > 0 or dq > 0:
            out.append((v, dp, dq))
    return out


def _univariate_constant_coeffs(p: MultiPoly, var: str):
    """Coefficient list in ``var`` when no other variable occurs."""
    coeffs = p.univariate_coeffs(var)
    return [c.constant_value() for c in coeffs]


def mpoly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, graded-lex leading coefficient normalized to 1."""
    if p.is_zero() and q.is_zero():
        return p.zero_like()
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.is_constant() or q.is_constant():
        return p.one_like()

    active = _active_vars(p, q)
    # variables occurring in only one argument: strip via content
    for v, dp, dq in active:
        if dp == 0:
            return mpoly_gcd(p, content_in(q, v))
        if dq == 0:
            return mpoly_gcd(content_in(p, v), q)

    shared = [t for t in active if t[1] > 0 and t[2] > 0]
    var = min(shared, key=lambda t: min(t[1], t[2]))[0]

    if len(active) == 1:
        fld = p.field
        fc = _univariate_constant_coeffs(p, var)
        gc = _univariate_constant_coeffs(q, var)
        if isinstance(fld, RationalField):
            res = _gcd_univariate_rational(fc, gc)
        else:
            res = _gcd_univariate_field(fc, gc, fld)
        terms = {}
        idx = p.vars.index(var)
        for k, c in enumerate(res):
            if c:
                exp = tuple(k if i == idx else 0 for i in range(len(p.vars)))
                terms[exp] = c
        return MultiPoly(p.field, p.vars, terms).monic()

    cont_p = content_in(p, var)
    cont_q = content_in(q, var)
    pp = p.exact_div(cont_p)
    qq = q.exact_div(cont_q)
    cont_gcd = mpoly_gcd(cont_p, cont_q)
    part = _gcd_prs(pp, qq, var)
    return (cont_gcd * part).monic()


def content_in(p: MultiPoly, var: str) -> MultiPoly:
    """Gcd of the coefficients of ``p`` viewed in ``var``."""
    coeffs = [c.with_vars(p.vars) for c in p.univariate_coeffs(var)]
    acc = None
    for c in coeffs:
        if c.is_zero():
            continue
        acc = c if acc is None else mpoly_gcd(acc, c)
        if acc.is_constant():
            break
    return acc.monic() if acc is not None else p.zero_like()


def primitive_part(p: MultiPoly, var: str) -> MultiPoly:
    cont = content_in(p, var)
    return p.exact_div(cont)


def _uv(p: MultiPoly, var: str):
    return [c.with_vars(p.vars) for c in p.univariate_coeffs(var)]


def _uv_trim(f):
    while f and f[-1].is_zero():
        f.pop()
    return f


def _uv_prem(f, g):
    """Pseudo remainder of coefficient lists (entries MultiPoly)."""
    f = list(f)
    g = list(g)
    lc = g[-1]
    steps = len(f) - len(g) + 1
    while len(f) >= len(g):
        c = f[-1]
        k = len(f) - len(g)
        f = [ci * lc for ci in f]
        for i, gi in enumerate(g):
            f[i + k] = f[i + k] - c * gi
        _uv_trim(f)
        steps -= 1
        if not f:
            break
    for _ in range(max(0, steps)):
        f = [ci * lc for ci in f]
    return f


def _gcd_prs(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Subresultant PRS gcd of primitive inputs in ``var``."""
    f = _uv_trim(_uv(p, var))
    g = _uv_trim(_uv(q, var))
    if len(f) < len(g):
        f, g = g, f
    one = p.one_like()
    h = one
    s = one
    while True:
        if not g:
            result = MultiPoly.from_univariate(
                [c.drop_vars([var]) for c in f], var
            ).with_vars(p.vars)
            return primitive_part(result, var)
        if len(g) == 1:
            return p.one_like()
        d = len(f) - len(g)
        rem = _uv_prem(f, g)
        if not rem:
            result = MultiPoly.from_univariate(
                [c.drop_vars([var]) for c in g], var
            ).with_vars(p.vars)
            return primitive_part(result, var)
        divisor = s * (h**d)
        rem = [c.exact_div(divisor) for c in rem]
        f, g = g, rem
        s = f[-1]
        h = (s**d).exact_div(h ** (d - 1)) if d > 0 else h


# -- resultants and discriminants -----------------------------------------------------


def _bareiss_det(matrix: list[list[MultiPoly]]):
    """Fraction-free determinant; entries are MultiPoly over the same ring."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    m = [row[:] for row in matrix]
    one = m[0][0].one_like()
    zero = m[0][0].zero_like()
    sign = 1
    prev = one
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = None
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                return zero
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str):
    """Sylvester matrix of ``p`` and ``q`` in ``var``; entries keep the full ring."""
    fc = [c.with_vars(p.vars) for c in p.univariate_coeffs(var)]
    gc = [c.with_vars(p.vars) for c in q.univariate_coeffs(var)]
    m = len(fc) - 1
    n = len(gc) - 1
    size = m + n
    zero = p.zero_like()
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant with respect to ``var``."""
    dp = p.degree_in(var)
    dq = q.degree_in(var)
    if dp <= 0 and dq <= 0:
        raise DegenerateResultant(f"neither input has positive degree in {var}")
    if dp <= 0:
        return p**dq
    if dq <= 0:
        return q**dp
    det = _bareiss_det(sylvester_matrix(p, q, var))
    return det


def discriminant(p: MultiPoly, var: str) -> MultiPoly:
    """Discriminant in ``var``: (-1)^(n(n-1)/2) Res(p, dp/dvar) / lc."""
    n = p.degree_in(var)
    if n < 2:
        raise ValueError("discriminant needs degree at least 2")
    res = resultant(p, p.derivative(var), var)
    lc = p.univariate_coeffs(var)[-1].with_vars(p.vars)
    quo = res.exact_div(lc)
    if (n * (n - 1) // 2) % 2:
        quo = -quo
    return quo


# -- squarefree structure ----------------------------------------------------------------


class SquarefreeDecomposition:
    """``input = unit * prod(factor^multiplicity)`` with pairwise-coprime
    squarefree monic factors; the unit is a field constant."""

    def __init__(self, unit, factors):
        self.unit = unit
        self.factors = list(factors)

    def reconstruct(self, like: MultiPoly) -> MultiPoly:
        acc = MultiPoly.constant(like.field, like.vars, self.unit)
        for f, m in self.factors:
            acc = acc * f**m
        return acc

    def __iter__(self):
        return iter(self.factors)

    def __repr__(self):
        inner = ", ".join(f"({f}, {m})" for f, m in self.factors)
        return f"SquarefreeDecomposition(unit={self.unit}, [{inner}])"


def squarefree_decompose(p: MultiPoly) -> SquarefreeDecomposition:
    """Yun/Musser-style squarefree decomposition (characteristic zero)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.is_constant():
        return SquarefreeDecomposition(p.constant_value(), [])

    def derivative_gcd(poly):
        acc = poly
        for v in poly.vars:
            if poly.degree_in(v) > 0:
                acc = mpoly_gcd(acc, poly.derivative(v))
                if acc.is_constant():
                    break
        return acc

    factors: dict[int, MultiPoly] = {}

    def recurse(poly, shift):
        g = derivative_gcd(poly)
        if g.is_constant():
            factors[1 + shift] = poly.monic()
            return
        w = poly.exact_div(g).monic()  # product of the distinct prime factors
        recurse(g, shift + 1)
        # factors present in g have multiplicity >= 2 here; peel them off w
        for m in sorted(factors):
            if m <= shift + 1:
                continue
            f = factors[m]
            d = mpoly_gcd(w, f)
            if not d.is_constant():
                w = w.exact_div(d).monic()
        if not w.is_constant():
            factors[1 + shift] = w.monic()

    recurse(p, 0)
    items = sorted(factors.items())
    result = [(f, m) for m, f in items]
    prod = p.one_like()
    for f, m in result:
        prod = prod * f**m
    unit_poly = p.exact_div(prod)
    if not unit_poly.is_constant():
        raise AssertionError("squarefree reconstruction left a non-constant unit")
    return SquarefreeDecomposition(unit_poly.constant_value(), result)


def squarefree_part(p: MultiPoly) -> MultiPoly:
    acc = p.one_like()
    for f, _ in squarefree_decompose(p):
        acc = acc * f
    return acc.monic()


def is_square_over_closure(p: MultiPoly):
    """Whether ``p`` is a square up to a constant over the complex numbers.

    Returns ``(True, root, unit)`` with ``p = unit * root**2`` (unit a field
    constant, always a complex square) or ``(False, witness, None)`` where the
    witness is a factor of odd multiplicity.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    dec = squarefree_decompose(p)
    for f, m in dec:
        if m % 2:
            return False, f, None
    root = p.one_like()
    for f, m in dec:
        root = root * f ** (m // 2)
    unit = p.exact_div(root * root).constant_value()
    return True, root, unit


def perfect_power_part(p: MultiPoly, rho: int):
    """``h`` with ``p = unit * h**rho`` when it exists, else ``None``."""
    if rho < 1:
        raise ValueError("power must be positive")
    if p.is_zero():
        raise ValueError("zero polynomial")
    if rho == 1:
        return p.monic()
    dec = squarefree_decompose(p)
    for _, m in dec:
        if m % rho:
            return None
    h = p.one_like()
    for f, m in dec:
        h = h * f ** (m // rho)
    return h.monic()


def mpoly_gcd_list(polys: Sequence[MultiPoly]) -> MultiPoly:
    acc = None
    for p in polys:
        if p.is_zero():
            continue
        acc = p.monic() if acc is None else mpoly_gcd(acc, p)
        if acc.is_constant():
            break
    if acc is None:
        raise ValueError("all inputs are zero")
    return acc.monic()
