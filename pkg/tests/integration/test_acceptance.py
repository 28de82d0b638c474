"""整体验收：oracle 与闭式常数一致、经典情形约化、语料零违例、从属等价、
Jack 引理、卷绕数、极值原理与严格模式反例搜索。

耗时较长（数分钟），在项目根目录运行:
  pytest tests/integration/test_acceptance.py -v
"""

import itertools
import math

import pytest

from gftv.schemas.params import GridSpec
from gftv.schemas.reports import Status
from gftv.services import criteria
from gftv.services.corpus_service import generate_corpus, random_test_function
from gftv.services.disk_eval import inf_re_on_circle, winding_number
from gftv.services.subordination import (
    containment_subordination_check,
    disk_inequality_margin,
    starlike_quotient,
)
from gftv.services.verifier import jack_check, run_corpus, search_counterexample, verify_implication
from tests.conftest import make_params

ALPHAS = [0.0, 0.25, 0.5, 0.75]
BETA_GAMMA = [(1, 0), (0, 1), (1, 1), (2, 1)]
PN = list(itertools.product([1, 2, 3], [1, 2, 3]))
LAMBDA_SAMPLES = 5
CONTAINMENT_RESOLUTION = 1e-4


def _t24_params() -> list:
    out = []
    for p, n in itertools.product([1, 2], range(1, 13)):
        rng = criteria.lambda_range(p, n)
        if rng.valid:
            out.extend(make_params("t24", p=p, n=n, **{"lambda": lam}) for lam in rng.interior(LAMBDA_SAMPLES))
    return out


ORACLE_PARAMS = (
    [make_params("t21", p=p, n=n, alpha=a) for (p, n), a in itertools.product(PN, ALPHAS)]
    + [make_params("t22", p=p, n=n, alpha=a) for (p, n), a in itertools.product(PN, ALPHAS)]
    + [
        make_params("t23a", p=p, n=n, alpha=a, beta=b, gamma=g)
        for (p, n), a, (b, g) in itertools.product(PN, ALPHAS, BETA_GAMMA)
    ]
    + _t24_params()
)


class TestOracleEquivalence:
    def test_t24_sweep_is_non_empty(self):
        # p = 1 的全部 n 以及 p = 2 的部分 n 有有效 λ 区间
        assert len(_t24_params()) >= 12 * LAMBDA_SAMPLES

    @pytest.mark.parametrize("params", ORACLE_PARAMS, ids=lambda p: p.label())
    def test_grid_extremum_matches_closed_form(self, params):
        result = criteria.oracle_check(params, M_theta=200_000, tol=1e-6)
        assert result.difference <= 1e-6, result


class TestReductionIdentities:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_t21_t22(self, alpha):
        assert criteria.bound_t21(1, 1, alpha) == pytest.approx((1 + 3 * alpha) / (2 * (1 + alpha)), abs=1e-12)
        assert criteria.bound_t22(1, 1, alpha) == pytest.approx((3 + 2 * alpha) / (2 + alpha), abs=1e-12)

    @pytest.mark.parametrize(("alpha", "bg"), list(itertools.product(ALPHAS, BETA_GAMMA)))
    def test_t23(self, alpha, bg):
        beta, gamma = bg
        expected = (1 - alpha) ** (beta + gamma) / 2 ** (beta + 2 * gamma)
        assert criteria.bound_t23("A", 1, 1, alpha, beta, gamma) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("lam", criteria.lambda_range(1, 1).interior(LAMBDA_SAMPLES))
    def test_t24(self, lam):
        expected = (5 * lam - 1) / (2 * (lam + 1)) if lam <= 2 else (lam + 1) / (2 * (lam - 1))
        assert criteria.bound_t24(1, 1, lam) == pytest.approx(expected, abs=1e-12)

    def test_classical_lambda_range(self):
        rng = criteria.lambda_range(1, 1)
        assert rng.lambda1 == pytest.approx(1.0, abs=1e-12)
        assert rng.lambda2 == pytest.approx(3.0, abs=1e-12)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_p1_lower_endpoint(self, n):
        assert criteria.lambda_range(1, n).lambda1 == pytest.approx(1.0, abs=1e-12)


CORPUS_PARAMS = [
    make_params("t21", alpha=0.0),
    make_params("t21", alpha=0.5),
    make_params("t21", p=2, alpha=0.0),
    make_params("t22", alpha=0.0),
    make_params("t22", alpha=1.0),
    make_params("t23a", alpha=0.0, beta=1, gamma=1),
    make_params("t23a", alpha=0.5, beta=2, gamma=0),
    make_params("t23b", alpha=0.0, beta=1, gamma=1),
    make_params("t23b", alpha=0.5, beta=2, gamma=0),
    make_params("t24", **{"lambda": 1.5}),
    make_params("t24", **{"lambda": 2.5}),
]


class TestZeroViolationCorpus:
    @pytest.mark.parametrize("params", CORPUS_PARAMS, ids=lambda p: p.label())
    def test_no_violation(self, params):
        corpus = generate_corpus(1000, params.p, params.n, params.p + params.n + 2, 0.2, 2024)
        result = run_corpus(corpus, params, GridSpec())
        assert result.violations == 0
        assert result.counts[Status.BOTH_HOLD.value] >= 100


class TestSubordinationEquivalence:
    @pytest.mark.parametrize("lam", [1.2, 1.5, 2.0, 2.5])
    def test_containment_agrees_with_margin(self, lam):
        grid = GridSpec(angular_count=1024)
        r = grid.outer_radius
        for entry in generate_corpus(200, 1, 1, 4, 0.2, 11):
            f = entry.function
            margin = disk_inequality_margin(f, lam, grid)
            # 包含检查只看采样点，边距落在网格分辨率内时两者可以不同
            if abs(margin) > CONTAINMENT_RESOLUTION:
                assert containment_subordination_check(f, lam, grid) == (margin > 0), entry.id
            if margin > 0:
                inf = inf_re_on_circle(lambda z, f=f: starlike_quotient(f, z), r, grid.angular_count)
                assert inf > -grid.tol, entry.id


class TestJackLemma:
    @pytest.mark.parametrize(("order", "r0"), list(itertools.product([1, 2, 3], [0.5, 0.9])))
    def test_random_functions(self, order, r0):
        for i in range(100):
            w = random_test_function(order, order + 4, 0.3, (order, i))
            report = jack_check(w, r0, 4096)
            assert report.m_estimate.real >= order - 1e-4, (i, report)
            assert abs(report.m_estimate.imag) <= 1e-4, (i, report)
            assert report.second_value >= report.m_estimate.real - 1e-3, (i, report)


class TestValence:
    @pytest.mark.parametrize(("p", "n"), list(itertools.product([1, 2], [1, 2])))
    def test_winding_is_p_and_stable(self, p, n):
        for entry in generate_corpus(100, p, n, p + n + 2, 0.2, 5):
            first = winding_number(entry.function, 0.99, 4096)
            assert first == p, entry.id
            assert winding_number(entry.function, 0.99, 8192) == first


class TestPrincipleChecks:
    def test_t21_monotone_and_stable_under_doubling(self):
        params = make_params("t21")
        coarse = GridSpec(radii=(0.5, 0.9, 0.999))
        tol = coarse.tol
        fine = coarse.refined(2)
        for entry in generate_corpus(100, 1, 1, 4, 0.2, 17):
            a = verify_implication(entry.function, params, coarse, function_id=entry.id)
            b = verify_implication(entry.function, params, fine, function_id=entry.id)
            assert a.principle_ok, entry.id
            for x, y in ((a.hyp_margin, b.hyp_margin), (a.concl_margin, b.concl_margin)):
                if x is not None and math.isfinite(x):
                    assert abs(x - y) < 10 * tol, entry.id


class TestStrictSearch:
    @pytest.mark.parametrize(
        "params",
        [
            make_params("t21", alpha=0.0),
            make_params("t22", alpha=0.0),
            make_params("t23a", alpha=0.0, beta=1, gamma=1),
            make_params("t23b", alpha=0.5, beta=2, gamma=0),
            make_params("t24", **{"lambda": 1.5}),
        ],
        ids=lambda p: p.label(),
    )
    def test_no_witness(self, params):
        grid = GridSpec(radii=(0.999,), angular_count=512)
        assert search_counterexample(params, 0.0, 2024, 10_000, grid) is None
