"""Smoke tests for the compiled python module."""

import math

import pytest

import psl2genus as pg


def test_group_order():
    assert pg.group_order(7) == 168
    assert pg.group_order(19) == 3420
    with pytest.raises(pg.Error):
        pg.group_order(9)


def test_d_value_and_periods():
    assert pg.d_value(19) == 9
    assert pg.d_value(11) is None
    assert pg.periods_for(23) == [2, 3, 4, 6, 11, 12, 23]
    assert pg.periods_for(23, pg.PeriodModel.LEMMA3) == [2, 3, 4, 11, 12, 23]


def test_instance_and_rh_genus():
    inst = pg.load_instance(7)
    assert inst.order == 168
    assert inst.mu == 3
    assert len(inst.exceptions) == 1
    sig = pg.Signature(0, {2: 1, 3: 1, 7: 1})
    assert pg.rh_genus(inst, sig) == 3
    assert pg.is_admissible(inst, sig)
    assert not pg.is_admissible(inst, pg.Signature(1, {2: 1}))
    assert pg.Signature.from_wire("0;2^1,3^1,7^1") == sig


def test_spectrum_engine():
    engine = pg.SpectrumEngine(pg.load_instance(7))
    stable = engine.stable_upper_genus()
    assert stable.sigma == 399
    assert stable.frobenius == 565
    assert engine.min_genus() == 3
    assert engine.witness(3).wire() == "0;2^1,3^1,7^1"
    assert not engine.genus_member(398)
    window = engine.window(0, 50)
    assert [entry.genus for entry in window.members][:3] == [3, 8, 10]


def test_apery():
    table = pg.apery_set([6, 9, 20])
    assert table.least_member == [0, 49, 20, 9, 40, 29]
    assert pg.frobenius_number([6, 9, 20]) == 43
    assert pg.is_member(table, 44)
    parts = pg.decompose(table, 44)
    assert sum(g * a for g, a in parts.items()) == 44
    assert pg.decompose(table, 43) is None
    with pytest.raises(pg.Error):
        pg.apery_set([6, 9])


def test_brute_oracle():
    inst = pg.load_instance(7)
    assert pg.verify_absent(inst, 398)
    assert not pg.verify_absent(inst, 399)
    bounds = pg.derive_bounds(inst, 3)
    assert pg.enumerate_genera(inst, bounds, 3, 3) == {3}


def test_fit():
    model = pg.preset_model("paper-low")
    assert math.isclose(pg.evaluate(model, 7), 394, rel_tol=1e-3)
    points = [pg.DataPoint(19, 33112), pg.DataPoint(23, 297084),
              pg.DataPoint(31, 20275804)]
    fitted = pg.fit_loglinear(points)
    for pt in points:
        assert abs(math.log(pg.evaluate(fitted, pt.p)) - math.log(pt.g)) < 1e-9
    rows = pg.residual_table(pg.preset_model("paper-high"), [], [59])
    assert rows[0].fitted_rounded == 44907302712962
