from fractions import Fraction

import pytest

from folgal.numberfield import QQ, extend
from folgal.parsing import parse_min_poly, parse_poly
from folgal.solve2d import common_zeros


def poly(text, field=QQ):
    return parse_poly(text, field, ("x", "y"))


def total(points):
    return sum(p.multiplicity * p.class_size for p in points)


def test_single_fat_point():
    pts = common_zeros(poly("x^3"), poly("y^3"))
    assert len(pts) == 1
    assert pts[0].multiplicity == 9
    assert pts[0].xy == (Fraction(0), Fraction(0))


def test_transverse_conic_line():
    pts = common_zeros(poly("x^2 + y^2 - 1"), poly("y - x"))
    assert total(pts) == 2
    for p in pts:
        # both coordinates satisfy 2 t^2 = 1
        x0, y0 = p.xy
        assert x0 == y0


def test_conjugate_points_share_abscissa():
    # x = 0, y^2 + 1 = 0 forces a shear before points separate
    pts = common_zeros(poly("x"), poly("y^2 + 1"))
    assert total(pts) == 2
    assert len(pts) == 1 and pts[0].class_size == 2
    x0, y0 = pts[0].xy
    assert not x0  # back in original coordinates x = 0
    assert y0 * y0 == pts[0].point_field.coerce(-1)


def test_tangency_multiplicity():
    pts = common_zeros(poly("y"), poly("y - x^2"))
    assert len(pts) == 1
    assert pts[0].multiplicity == 2


def test_over_extension_field():
    K = extend(QQ, "g", parse_min_poly("g^2-g+1", "g"), certified=True)
    pts = common_zeros(poly("x*y", K), poly("g*y^2 + x^3", K))
    assert len(pts) == 1 and pts[0].multiplicity == 5


def test_rejects_shared_factor():
    with pytest.raises(ValueError):
        common_zeros(poly("x*y"), poly("x*(y-1)"))


def test_bezout_totals():
    # two generic conics meet in four points
    pts = common_zeros(
        poly("x^2 + y^2 - 5"), poly("x^2 - y + 1")
    )
    assert total(pts) == 4
