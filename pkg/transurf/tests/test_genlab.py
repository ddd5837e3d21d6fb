#!/usr/bin/env python

import numpy as np
import pytest

from transurf.errors import NotASurface, SpecError
from transurf.expr_io import parse_param_triple, parse_poly
from transurf.genlab import (
    FAMILIES,
    REPORT_COLUMNS,
    InstanceSpec,
    coprime_pieces,
    implicitize,
    random_instance,
    roundtrip_check,
    sample_surface,
    sample_surface_points,
)
from transurf.polycore import is_squarefree
from transurf.tests import samples
from transurf.translational import SurfaceParam, cylinder_test, has_surface_rank, verify_surface_param


def pair(p1: str, p2: str) -> SurfaceParam:
    return SurfaceParam(parse_param_triple(p1, "t1"), parse_param_triple(p2, "t2"))


class TestInstanceSpec:
    def test_defaults_validate(self):
        assert InstanceSpec().validate() == InstanceSpec()

    @pytest.mark.parametrize(
        "changes",
        [
            {"family1": "spiral"},
            {"degree2": 1},
            {"height": 0},
            {"degree1": 5, "degree2": 5, "degree_budget": 20},
        ],
    )
    def test_invalid(self, changes):
        with pytest.raises(SpecError):
            InstanceSpec(**changes).validate()


class TestImplicitize:
    def test_quadric(self):
        sp = pair(samples.QUADRIC_P1, samples.QUADRIC_P2)
        assert implicitize(sp) == parse_poly(samples.QUADRIC).monic()

    def test_quartic(self):
        sp = pair(samples.QUARTIC_P1, samples.QUARTIC_P2)
        assert implicitize(sp) == parse_poly(samples.QUARTIC)

    def test_rank_deficient(self):
        with pytest.raises(NotASurface):
            implicitize(pair("t1,0,0", "t2,0,0"))

    def test_coprime_pieces(self):
        pieces = coprime_pieces([parse_poly("x1*(x1+1)"), parse_poly("x1*x2"), parse_poly("7")])
        assert len(pieces) == 3
        for p in ("x1", "x1+1", "x2"):
            assert parse_poly(p) in pieces


class TestSampling:
    @pytest.mark.parametrize("family", FAMILIES)
    def test_sampled_pairs(self, family):
        spec = InstanceSpec(family1=family, family2=family)
        sp = sample_surface(spec, np.random.default_rng(11))
        assert has_surface_rank(sp)
        assert sp.p2.evaluate(0) == (0, 0, 0)

    def test_points_on_surface(self):
        sp = pair(samples.QUARTIC_P1, samples.QUARTIC_P2)
        f = parse_poly(samples.QUARTIC)
        points = sample_surface_points(sp, 8, seed=3)
        assert len(points) == 8
        assert all(f.evaluate(pt) == 0 for pt in points)
        assert points == sample_surface_points(sp, 8, seed=3)

    def test_random_instance(self):
        spec = InstanceSpec(seed=4)
        f, sp = random_instance(spec)
        assert verify_surface_param(f, sp)
        assert random_instance(spec) == (f, sp)


class TestRoundtrip:
    def test_report(self):
        report = roundtrip_check(InstanceSpec(seed=1), 2)
        assert list(report.frame.columns) == REPORT_COLUMNS
        assert report.count == 2
        assert report.passed + report.failed == 2
        assert set(report.summary()) == {"count", "passed", "failed", "failing_seeds"}
        assert len(report.failures()) == report.failed

    @pytest.mark.slow
    @pytest.mark.parametrize("family", FAMILIES)
    def test_fuzz(self, family):
        report = roundtrip_check(InstanceSpec(family1=family, family2="polynomial-graph", seed=100), 50)
        assert report.failed == 0, report.failures()

    @pytest.mark.slow
    def test_generated_surfaces(self):
        instances = samples.random_instances()
        assert instances
        for seed, f, sp in instances:
            assert is_squarefree(f), seed
            assert cylinder_test(f) is None, seed
            assert verify_surface_param(f, sp), seed
