from fractions import Fraction

import pytest

from folgal.numberfield import (
    QQ,
    FieldSplit,
    extend,
    run_with_splitting,
    split_field,
)


@pytest.fixture
def K_zeta():
    # zeta^2 - zeta + 1 = 0, zeta = (1 + i sqrt 3)/2
    return extend(QQ, "g", [Fraction(1), Fraction(-1)], certified=True)


def test_generator_satisfies_min_poly(K_zeta):
    z = K_zeta.gen()
    assert z * z - z + 1 == K_zeta.zero()


def test_embedding_picks_positive_imaginary_root(K_zeta):
    assert complex(K_zeta.gen()).imag > 0


def test_inverse_roundtrip(K_zeta):
    z = K_zeta.gen()
    for elem in [z, z - 1, 2 * z + 3, z * z + z]:
        assert elem * elem.inverse() == K_zeta.one()


def test_zero_inverse_raises(K_zeta):
    with pytest.raises(ZeroDivisionError):
        K_zeta.zero().inverse()


def test_tower_arithmetic(K_zeta):
    # adjoin a square root of zeta on top
    M = extend(K_zeta, "s", [-K_zeta.gen(), K_zeta.coerce(0)], certified=True)
    s = M.gen()
    assert s * s == M.coerce(K_zeta.gen())
    inv = (s + 1).inverse()
    assert (s + 1) * inv == M.one()
    approx = complex(s) ** 2 - complex(K_zeta.gen())
    assert abs(approx) < 1e-9


def test_zero_divisor_triggers_split():
    L = extend(QQ, "u", [Fraction(-1), Fraction(0)])  # u^2 - 1, reducible
    u = L.gen()
    with pytest.raises(FieldSplit):
        (u - 1).inverse()


def test_run_with_splitting_covers_both_branches():
    L = extend(QQ, "u", [Fraction(-1), Fraction(0)])
    u = L.gen()

    def compute(fld, proj):
        uu = proj(u)
        if uu - 1:
            return ("inv", (uu - 1).inverse().rational_value())
        return ("root", 1)

    results = run_with_splitting(L, compute)
    tags = sorted(r for _, r in results)
    assert ("inv", Fraction(-1, 2)) in tags
    assert ("root", 1) in tags


def test_split_field_projects_tower():
    L = extend(QQ, "u", [Fraction(-4), Fraction(0)])  # u^2 = 4
    M = extend(L, "v", [L.gen(), L.coerce(0)])  # v^2 = -u
    v = M.gen()
    new_top, project = split_field(M, L, [Fraction(-2), Fraction(1)])  # u -> 2
    pv = project(v)
    assert pv * pv == new_top.coerce(-2)


def test_rational_value_detection(K_zeta):
    assert K_zeta.coerce(Fraction(3, 7)).rational_value() == Fraction(3, 7)
    assert K_zeta.gen().rational_value() is None


def test_non_squarefree_modulus_rejected():
    with pytest.raises(ValueError):
        extend(QQ, "u", [Fraction(1), Fraction(0), Fraction(-2), Fraction(0)])


def test_gcd_split_event_is_structured():
    from folgal.parsing import parse_poly
    from folgal.polyops import mpoly_gcd

    # reducible modulus: u^2 - 1; inverting u - 1 inside the gcd splits
    L = extend(QQ, "u", [Fraction(-1), Fraction(0)])
    u = L.gen()
    p = parse_poly("x^2 - 1", L, ("x",))
    q = parse_poly("x - u", L, ("x",))
    # gcd computation must surface FieldSplit (structured outcome, no crash)
    with pytest.raises(FieldSplit):
        mpoly_gcd(p, q)

    def compute(fld, proj):
        pp = p.map_coefficients(proj, fld)
        qq = q.map_coefficients(proj, fld)
        return str(mpoly_gcd(pp, qq))

    branches = run_with_splitting(L, compute)
    results = sorted(r for _, r in branches)
    assert results == ["x + 1", "x - 1"]
