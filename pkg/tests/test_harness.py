"""Campaign harness: determinism, generators, verdicts, accounting."""

import json
from fractions import Fraction as F

import pytest

import bmtl.rewrite as rewrite_module
from bmtl.harness import (
    GenConfig,
    _sample_points,
    _stream,
    check_equivalence,
    gen_formula,
    gen_trace,
    run_campaign,
)
from bmtl.intervals import Interval
from bmtl.rewrite import Punctual, SingletonFree
from bmtl.syntax import (
    Bound,
    BoxMinus,
    BoxPlus,
    DiaMinus,
    Pred,
    Top,
    all_bounds,
    census,
    is_negation_free,
)
from bmtl.traces import Fact, Trace


def _json_without_time(report) -> str:
    payload = report.to_json()
    payload.pop("wall_time_s")
    return json.dumps(payload, sort_keys=False)


class TestGenerators:
    def test_formula_generation_is_deterministic(self):
        cfg = GenConfig(seed=7)
        assert gen_formula(cfg, 3) == gen_formula(cfg, 3)
        assert gen_trace(cfg, 3) == gen_trace(cfg, 3)

    def test_stream_indices_decorrelate(self):
        cfg = GenConfig(seed=7)
        formulas = {gen_formula(cfg, i) for i in range(12)}
        assert len(formulas) > 1

    def test_seeds_decorrelate(self):
        a = [gen_formula(GenConfig(seed=1), i) for i in range(8)]
        b = [gen_formula(GenConfig(seed=2), i) for i in range(8)]
        assert a != b

    def test_generated_formulas_are_negation_free(self):
        cfg = GenConfig(seed=11)
        for i in range(40):
            assert is_negation_free(gen_formula(cfg, i))

    def test_singleton_free_generation(self):
        cfg = GenConfig(seed=11)
        for i in range(40):
            f = gen_formula(cfg, i, singleton_free=True)
            assert not census(f).has_singleton_bound

    def test_mitl_box_bounds(self):
        cfg = GenConfig(seed=11)
        for i in range(60):
            f = gen_formula(cfg, i, box_bounds="mitl")

            def walk(node):
                if isinstance(node, (BoxPlus, BoxMinus)):
                    b = node.bound
                    assert 0 < b.lo < b.hi <= 3 * b.lo
                from bmtl.syntax import children

                for c in children(node):
                    walk(c)

            walk(f)

    def test_traces_fit_horizon(self):
        cfg = GenConfig(seed=11)
        for i in range(20):
            tr = gen_trace(cfg, i)
            assert tr.horizon.width == cfg.horizon_length
            for fact in tr.facts:
                assert tr.horizon.contains_interval(fact.span)


class TestCheckEquivalence:
    def test_identical_formulas_are_equal(self):
        tr = Trace(Interval(F(0), F(10)), (Fact("p", Interval(F(1), F(3))),))
        f = DiaMinus(Bound(F(0), F(1)), Pred("p"))
        verdict = check_equivalence(f, f, tr)
        assert verdict.status == "equal"
        assert verdict.region == Interval(F(1), F(10))

    def test_differing_formulas_yield_witness(self):
        tr = Trace(Interval(F(0), F(10)), (Fact("p", Interval(F(1), F(3))),))
        verdict = check_equivalence(Pred("p"), Top(), tr)
        assert verdict.status == "not_equal"
        assert verdict.witness is not None
        assert verdict.region.contains(verdict.witness)
        # the witness separates the two truth sets
        from bmtl.evaluate import eval_truth_set

        in_p = eval_truth_set(Pred("p"), tr).contains_point(verdict.witness)
        in_top = eval_truth_set(Top(), tr).contains_point(verdict.witness)
        assert in_p != in_top

    def test_empty_region_reported(self):
        tr = Trace(Interval(F(0), F(2)), ())
        f = DiaMinus(Bound(F(0), F(3)), Pred("p"))
        assert check_equivalence(f, f, tr).status == "empty_region"


class TestSamplePoints:
    def test_points_stay_inside_region(self):
        rng = _stream(5, 3, 0)
        region = Interval(F(-7, 3), F(11, 2))
        pts = _sample_points(rng, region, 10)
        assert len(pts) == 10
        assert all(region.contains(p) for p in pts)

    def test_narrow_region_falls_back_to_midpoint(self):
        rng = _stream(5, 3, 0)
        region = Interval(F(1, 100), F(2, 100))
        pts = _sample_points(rng, region, 4)
        assert pts == [F(3, 200)] * 4


class TestCampaigns:
    def test_report_is_deterministic(self):
        cfg = GenConfig(seed=9, trials=15)
        a = run_campaign(cfg, Punctual())
        b = run_campaign(cfg, Punctual())
        assert _json_without_time(a) == _json_without_time(b)

    def test_small_punctual_campaign_green(self):
        report = run_campaign(GenConfig(seed=3, trials=20), Punctual())
        assert report.failures == []
        assert report.trials == report.passes
        assert report.trials + report.empty_regions == 20

    def test_small_singleton_free_campaign_green(self):
        report = run_campaign(GenConfig(seed=3, trials=20), SingletonFree())
        assert report.failures == []
        assert report.trials == report.passes

    def test_fixed_slack_campaign_green(self):
        report = run_campaign(GenConfig(seed=3, trials=15), SingletonFree(F(2), F(1, 2)))
        assert report.failures == []

    def test_empty_regions_counted_separately(self):
        cfg = GenConfig(seed=5, trials=30, horizon_length=F(6), bound_max=F(4))
        report = run_campaign(cfg, Punctual())
        assert report.empty_regions > 0
        assert report.trials == report.passes + len(report.failures)
        assert report.trials + report.empty_regions == 30

    def test_report_json_keys_are_stable(self):
        report = run_campaign(GenConfig(seed=3, trials=2), Punctual())
        payload = report.to_json()
        assert list(payload) == [
            "mode",
            "config",
            "trials",
            "passes",
            "failures",
            "empty_regions",
            "wall_time_s",
        ]
        assert list(payload["config"]) == [
            "seed",
            "max_depth",
            "predicate_pool",
            "bound_denominator_max",
            "bound_max",
            "facts_per_trace",
            "horizon_length",
            "trials",
        ]

    def test_corrupted_rewrite_is_detected(self):
        rewrite_module._corrupt_punctual_box = True
        try:
            report = run_campaign(GenConfig(seed=42, trials=100), Punctual())
        finally:
            rewrite_module._corrupt_punctual_box = False
        assert len(report.failures) >= 1
        assert all(f.kind in ("mismatch", "oracle_mismatch") for f in report.failures)

    def test_clean_after_sentinel_reset(self):
        assert rewrite_module._corrupt_punctual_box is False
        report = run_campaign(GenConfig(seed=42, trials=25), Punctual())
        assert report.failures == []
