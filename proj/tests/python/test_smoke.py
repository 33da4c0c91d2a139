from fractions import Fraction

import pytest

import tautring


def test_psi_integrals():
    assert tautring.psi_integral(1, [1]) == Fraction(1, 24)
    assert tautring.psi_integral(0, [0, 0, 0]) == 1
    assert tautring.psi_integral(0, [1, 1, 0, 0, 0]) == 2
    with pytest.raises(ValueError):
        tautring.psi_integral(1, [2])


def test_dr_genus_zero_is_fundamental():
    terms = tautring.dr_cycle(0, [2, -1, -1])
    assert len(terms) == 1
    assert terms[0][1] == 1


def test_lambda_integral():
    assert tautring.lambda_integral(1, 1, 1) == Fraction(1, 24)


def test_star_trees():
    assert len(tautring.star_trees(0, 3, 1)) == 5
    assert tautring.star_tree_count(0, 3) == 5
    assert len(tautring.star_trees(1, 1, 1)) == 2


def test_xi_vanishes_for_one_point_at_zero():
    assert tautring.xi_total(0, 2, 1, [3, 4]) == {}


def test_verify_and_audit():
    report = tautring.verify(1, 1, 1)
    assert report["schema"] == "xi-report/1"
    assert report["verdict"] == "pass"
    assert tautring.audit(1, 2, 1)
    assert tautring.mumford_check(1, 2)


def test_cache_roundtrip(tmp_path):
    p = tmp_path / "psi.cache"
    n = tautring.save_cache(str(p))
    assert n > 0
    assert tautring.load_cache(str(p)) == n
    p.write_text(p.read_text().replace("1/24;", "1/25;"))
    with pytest.raises(tautring.CacheError):
        tautring.load_cache(str(p))
