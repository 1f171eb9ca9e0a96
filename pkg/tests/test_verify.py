import pytest

from padic_euler.padic import make
from padic_euler.verify import CHECKS, RUNNERS, agree, corpus, egf9_sides


def test_agree_requires_known_precision():
    a, b = make(5, 3, 7), make(5, 6, 7)
    assert agree(a, b, 3)
    assert not agree(a, b, 4)
    assert not agree(make(5, 6, 7), make(5, 6, 12), 2)


def test_corpus_is_seeded():
    assert [str(f) for f in corpus(5, 4, 6, 1)] == [str(f) for f in corpus(5, 4, 6, 1)]
    assert [str(f) for f in corpus(5, 4, 6, 1)] != [str(f) for f in corpus(5, 4, 6, 2)]


def test_every_check_has_a_runner():
    assert set(CHECKS) == set(RUNNERS)


SMALL = {
    "theorem1": dict(trials=3),
    "theorem2": dict(trials=2, n_max=3),
    "witt": dict(max_n=3, lambdas=[1, 8]),
    "distribution": dict(max_n=2, Fs=(1, 3)),
    "egf9": dict(order=4, Fs=(1, 3)),
    "theorem4": dict(max_n=2, chis=("quad:3",)),
    "qlimit": dict(trials=2),
    "bernoulli": dict(order=4),
}


@pytest.mark.parametrize("check", sorted(SMALL))
def test_small_grids_pass(check):
    report = RUNNERS[check](7, 4, **SMALL[check])
    assert report.passed and report.cases
    js = report.to_json()
    assert js["n_cases"] == len(report.cases) and "wall_time" not in js
    assert "result:" in report.render_text()


def test_higher_order_small():
    assert RUNNERS["higher_order"](p=3, N=3, r=2, max_n=2).passed


def test_witt_failure_records_both_sides():
    report = RUNNERS["witt"](5, 4, lambdas=[2], max_n=1)
    assert not report.passed and len(report.failures) == 2
    case = report.failures[0]
    assert case.lhs is not None and case.rhs is not None and "rejected" in case.detail
    assert "FAIL" in report.render_text()


def test_egf9_sides_agree_at_lambda_one():
    lhs, rhs = egf9_sides(make(5, 5, 1), make(5, 5, 2), 3, 5)
    assert lhs == rhs
