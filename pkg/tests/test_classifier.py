"""Classifier: thresholds, branch counting, region scans."""

import numpy as np
import pytest

from horoperiod import (
    BoundaryDivergence,
    ProblemParams,
    ScanConfig,
    UnsupportedRegion,
    count_solutions,
    critical_point,
    limit_energy_to_min,
    period_energy,
    region_scan,
    threshold_gamma,
    threshold_gamma_weighted,
)

FAST_SCAN = ScanConfig(points_per_decade=16)


class TestThresholds:
    def test_exact_rational_values(self):
        assert threshold_gamma(-17, 1) == pytest.approx(402653184 / 31250000, rel=1e-14)
        assert threshold_gamma(-9, 1) == pytest.approx(384.0, rel=1e-14)
        assert threshold_gamma(-33, 2) == pytest.approx(32768.0, rel=1e-14)

    def test_boundary_divergence(self):
        with pytest.raises(BoundaryDivergence):
            threshold_gamma(-7, 1)
        with pytest.raises(BoundaryDivergence):
            threshold_gamma(-6.5, 1)

    def test_weighted_reduces_at_q_one(self, rng):
        for _ in range(20):
            l = int(rng.integers(1, 4))
            p = 1.0 - 2.0 * (l + 1) ** 2 - rng.uniform(0.5, 40.0)
            assert threshold_gamma_weighted(p, 1.0, l) == pytest.approx(
                threshold_gamma(p, l), rel=1e-12
            )

    def test_weighted_instance(self):
        assert threshold_gamma_weighted(-9, 1, 1) == pytest.approx(384.0, rel=1e-12)
        # quadratic-in-w instance: w = (13 - sqrt(129))/10
        assert threshold_gamma_weighted(-1, 11, 1) == pytest.approx(95.18695163901727, rel=1e-10)

    def test_weighted_region_check(self):
        with pytest.raises(UnsupportedRegion):
            threshold_gamma_weighted(-1, 5, 1)  # q - p = 6 <= 8
        with pytest.raises(UnsupportedRegion):
            threshold_gamma_weighted(-0.5, 11, 1)

    @pytest.mark.parametrize("p,q,l", [(-17.0, 1.0, 1), (-9.0, 2.0, 1), (-33.0, 1.0, 2)])
    def test_threshold_is_the_limit_crossing(self, p, q, l):
        # the near-minimum period limit crosses pi/(2(l+1)) exactly at the threshold
        thr = threshold_gamma_weighted(p, q, l)
        target = np.pi / (2.0 * (l + 1))
        above = limit_energy_to_min(ProblemParams(p=p, gamma=thr * 1.001, q=q))
        below = limit_energy_to_min(ProblemParams(p=p, gamma=thr * 0.999, q=q))
        assert above < target < below


class TestCountSolutions:
    def test_uniqueness_region(self):
        report = count_solutions(ProblemParams(p=-5, gamma=2.0), m_max=6, scan=FAST_SCAN)
        assert len(report.constant_roots) == 1
        assert report.branches == []
        assert report.lower_bound_count == 1
        assert not report.infinite_family
        assert report.status == "ok"

    def test_nonuniqueness_above_threshold(self):
        report = count_solutions(ProblemParams(p=-17, gamma=13.0), m_max=2, scan=FAST_SCAN)
        assert len(report.constant_roots) == 1
        ms = [b.m for b in report.branches]
        assert 2 in ms
        assert report.lower_bound_count >= 2

    def test_infinite_family(self):
        report = count_solutions(ProblemParams(p=-1, gamma=1.5), m_max=4, scan=FAST_SCAN)
        assert report.infinite_family
        assert report.branches == []
        assert report.constant_roots == [pytest.approx(2.0, rel=1e-13)]

    def test_constants_only_for_p_above_minus_one(self):
        report = count_solutions(ProblemParams(p=3.0, gamma=0.1), m_max=4, scan=FAST_SCAN)
        assert not report.infinite_family
        assert report.branches == []
        assert len(report.constant_roots) == 2

    def test_branch_matches_period_target(self):
        report = count_solutions(ProblemParams(p=-17, gamma=13.0), m_max=2, scan=FAST_SCAN)
        branch = report.branches[0]
        params = ProblemParams(p=-17, gamma=13.0)
        theta = period_energy(params, branch.E).value
        assert abs(theta - np.pi / 4.0) < 1e-9
        assert abs(branch.theta_check - np.pi / 4.0) < 1e-9

    def test_weighted_scan_boundary_p(self):
        # p = -1 with q > 1 goes through the generic scan without error
        report = count_solutions(ProblemParams(p=-1.0, gamma=2.0, q=2.0), m_max=3, scan=FAST_SCAN)
        assert not report.infinite_family
        assert len(report.constant_roots) == 1

    def test_report_dict_schema(self):
        report = count_solutions(ProblemParams(p=-5, gamma=2.0), m_max=2, scan=FAST_SCAN)
        d = report.to_dict()
        assert d["schema_version"] == "1"
        assert d["kind"] == "classification"
        assert d["lower_bound_count"] == 1


class TestRegionScan:
    def test_uniqueness_band_points(self):
        records = list(
            region_scan([-5.0], [1.0], [1.0, 2.0, 3.0], m_max=3, scan=FAST_SCAN)
        )
        assert len(records) == 3
        assert all(r.branch_count == 0 for r in records)
        assert all(r.constant_count == 1 for r in records)
        assert all(r.status == "ok" for r in records)

    def test_nonuniqueness_point(self):
        records = list(region_scan([-17.0], [1.0], [13.0], m_max=2, scan=FAST_SCAN))
        assert records[0].branch_count >= 1
        assert records[0].thresholds_crossed == (1,)

    def test_empty_grid(self):
        assert list(region_scan([], [1.0], [1.0], m_max=2)) == []

    def test_per_point_error_is_embedded(self):
        records = list(region_scan([-5.0], [1.0], [-1.0, 2.0], m_max=2, scan=FAST_SCAN))
        assert records[0].status == "error:NonpositiveArgument"
        assert records[1].status == "ok"

    def test_deterministic_across_workers(self):
        grid = dict(m_max=2, scan=FAST_SCAN)
        serial = list(region_scan([-5.0, -3.0], [1.0], [0.5, 2.0], workers=1, **grid))
        parallel = list(region_scan([-5.0, -3.0], [1.0], [0.5, 2.0], workers=2, **grid))
        assert serial == parallel

    def test_infinite_family_point(self):
        records = list(region_scan([-1.0], [1.0], [1.5], m_max=2, scan=FAST_SCAN))
        assert records[0].infinite_family
        assert records[0].branch_count == 0
