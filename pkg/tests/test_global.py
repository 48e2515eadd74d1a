import json

import pytest
from hypothesis import assume, given
from sympy import nextprime

from c2d4 import DegenerateInvariants, check_conjecture, parity_prediction
from c2d4.arith import Place
from c2d4.globalreport import COMPLETE, PARTIAL, bad_places
from c2d4.localdata import local_data
from c2d4.model import C2D4Curve
from strategies import generic, rational_curves


def test_family_f_places(family_f):
    keys = [str(v) for v in bad_places(family_f)]
    assert keys == ["real", "2", "3", "5", "7", "11", "17", "2549"]


def test_family_f_report(family_f):
    rep = check_conjecture(family_f)
    assert rep.status == PARTIAL
    assert rep.E_product == 1
    assert rep.all_verdicts_true
    assert {k for k, v in rep.verdicts.items() if v is None} == {"3", "7"}
    assert rep.parity is None and rep.root_number is None
    assert len(rep.gaps) == 2


def test_parity_prediction_partial(family_f):
    parity, gaps = parity_prediction(family_f)
    assert parity is None and all(g.split(":")[0] in ("3", "7") for g in gaps)


def test_report_json_is_stable(family_f):
    a = check_conjecture(family_f).to_json()
    b = check_conjecture(family_f).to_json()
    assert a == b
    assert json.loads(a)["places"][0] == "real"


def test_explicit_places(family_f):
    rep = check_conjecture(family_f, places=[Place.real(), Place(2), Place(5)])
    assert rep.status == COMPLETE
    lam = [rep.local[k].lam for k in ("real", "2", "5")]
    assert lam == [-1, 1, -1]
    assert rep.parity == 1 and rep.root_number == -1


def test_degenerate_has_no_places():
    C = C2D4Curve.from_roots(1, [(-1, 1), (-3, 3), (-2, 2)])
    with pytest.raises(DegenerateInvariants):
        bad_places(C)


@given(rational_curves())
def test_omitted_primes_are_trivial(C):
    assume(generic(C))
    bad = {v.p for v in bad_places(C)}
    p = max(bad | {3})
    for _ in range(5):
        p = nextprime(p)
        while p in bad:
            p = nextprime(p)
        d = local_data(C, Place(p))
        assert (d.lam, d.w, d.E) == (1, 1, 1)


@given(rational_curves())
def test_E_product_over_bad_places(C):
    assume(generic(C))
    rep = check_conjecture(C)
    assert rep.E_product == 1
    assert rep.all_verdicts_true
