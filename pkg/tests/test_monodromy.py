import pytest

from folgal import corpus
from folgal import monodromy as mon


def test_power_map_cyclic():
    r = mon.monodromy_of_map(corpus.line_map("power_3"), seed=5)
    assert r.group_order == 3
    assert r.galois_flag
    assert sorted(r.cycle_types) == [(3,), (3,)]


def test_cusp_cubic_full_symmetric_group():
    r = mon.monodromy_of_map(corpus.line_map("cusp_cubic"), seed=5)
    assert r.group_order == 6
    assert sorted(r.cycle_types) == [(2, 1), (2, 1), (3,)]
    assert not r.galois_flag


def test_generators_compose_to_identity():
    r = mon.monodromy_of_map(corpus.line_map("cusp_cubic"), seed=9)
    d = r.degree
    prod = tuple(range(d))
    for g in r.generators:
        prod = tuple(g[prod[i]] for i in range(d))
    assert prod == tuple(range(d))


def test_power_cubic_foliation():
    r = mon.monodromy_of_foliation(corpus.foliation("fermat_3"), seed=3)
    assert r.group_order == 3 and r.galois_flag
    assert r.numeric_genus == 0


def test_cyclic_cubic_genus_one():
    r = mon.monodromy_of_foliation(corpus.foliation("cyclic_cubic_qh23"), seed=3)
    assert r.group_order == 3
    assert r.numeric_genus == 1


def test_halfchi_quartic_order():
    r = mon.monodromy_of_foliation(corpus.foliation("halfchi_quartic"), seed=3)
    assert r.group_order > 4
    assert r.group_order % 4 == 0
    assert not r.galois_flag


def test_cross_check_two_pencils_agree():
    r = mon.cross_check(corpus.foliation("parabola_cubic_qh12"), seed=3)
    assert r.group_order == 3
    assert r.numeric_genus == 1


def test_order_divisible_by_degree():
    for name in ("fermat_3", "halfchi_quartic", "parabola_cubic_qh12"):
        F = corpus.foliation(name)
        r = mon.monodromy_of_foliation(F, seed=13)
        assert r.group_order % F.degree == 0


def test_path_dump_csv(tmp_path):
    target = tmp_path / "paths.csv"
    mon.monodromy_of_map(corpus.line_map("power_3"), seed=5, dump_csv=str(target))
    lines = target.read_text().splitlines()
    assert lines[0] == "loop_index,step,root_index,re,im"
    assert len(lines) > 10
