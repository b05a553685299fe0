"""Certified irreducible factorization, delegated to sympy.

Only two coefficient domains are supported: Q, and a simple certified
extension Q(a) sitting directly over Q.  Anything deeper reports
:class:`FactorUnavailable`; callers fall back to squarefree data plus
dynamic splitting.
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly
from .numberfield import NumberField, RationalField


class FactorUnavailable(Exception):
    pass


_DOMAIN_CACHE: dict[int, tuple] = {}


def _sympy_tools():
    import sympy as sp
    from sympy.polys.domains import QQ as SQQ

    return sp, SQQ


def _algebraic_domain(field: NumberField):
    """sympy algebraic field for a depth-1 extension, with checks."""
    cached = _DOMAIN_CACHE.get(id(field))
    if cached is not None:
        return cached
    sp, SQQ = _sympy_tools()
    if not isinstance(field.base, RationalField):
        raise FactorUnavailable("tower deeper than one extension layer")
    gen = sp.Symbol(field.name)
    mp_expr = sum(
        (sp.Rational(c) * gen**i for i, c in enumerate(field.min_poly)),
        gen ** field.degree,
    )
    poly = sp.Poly(mp_expr, gen)
    roots = [sp.CRootOf(poly, i) for i in range(field.degree)]
    numeric = [complex(r.evalf(30)) for r in roots]
    idx = min(range(len(roots)), key=lambda i: abs(numeric[i] - field.embedding))
    alpha = roots[idx]
    dom = SQQ.algebraic_field(alpha)
    mod = [Fraction(int(c.numerator), int(c.denominator)) for c in dom.mod.to_list()]
    mine = [Fraction(1)] + [Fraction(c) for c in reversed(field.min_poly)]
    if mod != mine:
        raise FactorUnavailable(
            "declared modulus is not the minimal polynomial of its root"
        )
    result = (dom, alpha)
    _DOMAIN_CACHE[id(field)] = result
    return result


def _to_sympy_poly(p: MultiPoly):
    sp, SQQ = _sympy_tools()
    syms = [sp.Symbol(v) for v in p.vars]
    field = p.field
    if isinstance(field, RationalField):
        dom = SQQ
        coeff_map = {e: sp.Rational(c) for e, c in p.terms.items()}
    else:
        dom, _ = _algebraic_domain(field)
        coeff_map = {}
        for e, c in p.terms.items():
            rep = [sp.Rational(v) for v in reversed(c.rep)]
            coeff_map[e] = dom(rep)
    return sp.Poly.from_dict(coeff_map, *syms, domain=dom), dom


def _rational_of(coeff) -> Fraction:
    if hasattr(coeff, "numerator") and hasattr(coeff, "denominator"):
        return Fraction(int(coeff.numerator), int(coeff.denominator))
    if hasattr(coeff, "p") and hasattr(coeff, "q"):
        return Fraction(int(coeff.p), int(coeff.q))
    raise TypeError(f"unexpected sympy coefficient {coeff!r}")


def _from_sympy_poly(poly, like: MultiPoly) -> MultiPoly:
    field = like.field
    terms = {}
    for exp, coeff in poly.as_dict(native=True).items():
        if isinstance(field, RationalField):
            val = _rational_of(coeff)
        elif hasattr(coeff, "to_list"):
            lst = [_rational_of(c) for c in coeff.to_list()]
            rep = list(reversed(lst))
            rep += [Fraction(0)] * (field.degree - len(rep))
            val = field.element(rep)
        else:
            val = field.coerce(_rational_of(coeff))
        terms[exp] = val
    return MultiPoly.from_dict(field, like.vars, terms)


def factor_irreducible(p: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Monic irreducible factors with multiplicities over the working field.

    The constant content is dropped (recoverable by exact division).
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.is_constant():
        return []
    spoly, _ = _to_sympy_poly(p)
    _, factors = spoly.factor_list()
    out = []
    for f, mult in factors:
        q = _from_sympy_poly(f, p)
        if q.is_constant():
            continue
        out.append((q.monic(), int(mult)))
    out.sort(key=lambda fm: (fm[0].total_degree(), sorted(fm[0].terms)))
    return out


def is_irreducible(p: MultiPoly) -> bool:
    facs = factor_irreducible(p)
    return len(facs) == 1 and facs[0][1] == 1
