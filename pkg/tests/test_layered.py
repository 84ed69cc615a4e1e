"""Coset models and the multi-level coloring pipeline."""

import pytest

from chromatile.errors import InfeasibleError
from chromatile.grid import Torus
from chromatile.lattice import GeneratorSet, decompose_with_constants, vscale
from chromatile.layered import (
    ZERO,
    build_model,
    level_color_name,
    run_pipeline,
    verify_layered,
)
from chromatile.tiling import brick_tiling, color_tiling

S_ONE_TWO = GeneratorSet.from_vectors([(1,), (2,)])
S_DIAG = GeneratorSet.from_vectors([(1, 0), (0, 1), (1, 1)])


class TestBuildModel:
    def test_one_two_on_twelve(self):
        dec = decompose_with_constants(S_ONE_TWO)
        models = build_model(S_ONE_TWO, dec, (12,), d_override=6)
        level0, level1 = models
        assert level0.chart_moduli == (12,) and len(level0.reps) == 1
        assert level1.chart_moduli == (6,) and len(level1.reps) == 2
        assert level1.basis == ((2,),)

    def test_standard_single_level(self):
        s = GeneratorSet.standard(2)
        dec = decompose_with_constants(s)
        models = build_model(s, dec, (12, 12), d_override=6)
        (m0,) = models
        assert m0.chart_moduli == (12, 12)
        assert m0.reps == ((0, 0),)

    def test_diagonal_orbits(self):
        dec = decompose_with_constants(S_DIAG)
        models = build_model(S_DIAG, dec, (12, 12), d_override=6)
        level1 = models[1]
        assert level1.chart_moduli == (12,)
        assert len(level1.reps) == 12

    def test_unrepresentable_circumference(self):
        dec = decompose_with_constants(S_ONE_TWO)
        with pytest.raises(InfeasibleError) as err:
            build_model(S_ONE_TWO, dec, (10,), d_override=6)
        assert "circumference" in str(err.value)

    def test_non_product_orbits_rejected(self):
        s = GeneratorSet.from_vectors([(1, -1), (1, 0), (1, 1)])
        dec = decompose_with_constants(s)
        with pytest.raises(InfeasibleError) as err:
            build_model(s, dec, (7, 13), d_override=6)
        assert "product tori" in str(err.value)

    def test_chart_covers_torus(self):
        dec = decompose_with_constants(S_DIAG)
        models = build_model(S_DIAG, dec, (13, 13), d_override=6)
        for model in models:
            seen = set()
            for rep in model.reps:
                for _, w in model.orbit_points(rep):
                    assert w not in seen
                    seen.add(w)
            assert len(seen) == 13 * 13


class TestRunLayered:
    def test_one_dimensional_multiple_of_d(self):
        run = run_pipeline(S_ONE_TWO, (6276,))
        assert run.report.ok, run.report.problems
        assert run.report.color_count <= len(S_ONE_TWO) + 1
        assert run.report.zero_edges == 0  # pure-d segments carry no cores

    def test_one_dimensional_with_cores(self):
        run = run_pipeline(S_ONE_TWO, (6277,))
        assert run.report.ok, run.report.problems
        assert run.report.color_count == 5
        assert run.report.zero_edges == 2
        assert [len(k) for k in run.result.k_sets] == [3, 3]

    def test_collision_forces_nonzero_shift(self):
        # the level-0 tiling offset drops the default core onto the
        # level-1 cores, so the search must move it by beta*s
        run = run_pipeline(S_ONE_TWO, (6277,), offsets_per_level={0: (4706,)})
        assert run.report.ok, run.report.problems
        assert max(run.result.shifts.values()) == 1

    def test_two_dimensional_override(self):
        run = run_pipeline(S_DIAG, (37, 37), d_override=18)
        assert run.report.ok, run.report.problems
        assert run.report.color_count <= len(S_DIAG) + 1 == 7
        assert run.report.zero_edges > 0
        assert max(run.result.shifts.values()) == 1  # avoidance exercised

    def test_three_dimensional_override(self):
        s = GeneratorSet.from_vectors([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
        run = run_pipeline(s, (37, 37, 37), d_override=18)
        assert run.report.ok, run.report.problems
        assert run.report.color_count <= len(s) + 1 == 9
        assert run.report.zero_edges > 0

    def test_shift_out_of_range_is_loud(self):
        with pytest.raises(InfeasibleError) as err:
            run_pipeline(S_DIAG, (13, 13), d_override=6)
        assert "admissible range" in str(err.value)

    def test_degenerate_single_level_matches_tiling(self):
        # with one level, the pipeline is exactly the core-mode tiling
        # colorer composed with the chart identification and the level-0
        # palette relabeling; the chart basis ((0,1),(1,0)) transposes
        # coordinates, so chart axis 1 walks ambient axis 2
        s = GeneratorSet.standard(2)
        run = run_pipeline(s, (13, 13), d_override=6)
        assert run.report.ok
        tiling = brick_tiling(Torus((13, 13)), 6)
        direct = color_tiling(tiling, mode="core")
        expected = {}
        for edge, color in direct.items():
            z = edge.base
            step = (0, 1) if edge.axis == 1 else (1, 0)
            expected[((z[1], z[0]), step)] = level_color_name(color, 0, 2)
        assert dict(run.result.coloring.items()) == expected

    def test_corruption_detected(self):
        run = run_pipeline(S_ONE_TWO, (6277,))
        good = dict(run.result.coloring.items())
        key = min(good)
        other = next(c for c in good.values() if c != good[key])
        bad = dict(good)
        bad[key] = other
        from chromatile.rectcolor import EdgeColoring
        from dataclasses import replace

        broken = replace(run.result, coloring=EdgeColoring(bad))
        report = verify_layered(broken, S_ONE_TWO, (6277,))
        assert not report.ok
        assert any("twice" in p or "palette" in p for p in report.problems)

        del bad[key]
        missing = replace(run.result, coloring=EdgeColoring(bad))
        report2 = verify_layered(missing, S_ONE_TWO, (6277,))
        assert not report2.ok
        assert any("totality" in p for p in report2.problems)

    def test_palette_partition(self):
        run = run_pipeline(S_ONE_TWO, (6277,))
        # every level-i edge carries a level-i color or the shared zero
        for (base, step), color in run.result.coloring.items():
            level = 0 if step == (1,) else 1
            if color == ZERO:
                continue
            assert color.endswith(f"@{level}")

    def test_pigeonhole_translates(self):
        # at most one translate x + a*beta*s of any core point lies in a
        # single higher core set
        for run in (
            run_pipeline(S_ONE_TWO, (6277,)),
            run_pipeline(S_DIAG, (37, 37), d_override=18),
        ):
            res, dec = run.result, run.dec
            torus = Torus(res.moduli)
            beta_s = vscale(dec.beta, dec.s)
            for i, ks in enumerate(res.k_sets):
                for x in ks:
                    for j in range(i + 1, len(res.k_sets)):
                        hits = sum(
                            1
                            for a in range(dec.alpha + 1)
                            if torus.add(x, vscale(a, beta_s)) in res.k_sets[j]
                        )
                        assert hits <= 1

    def test_zero_edges_inside_k_sets(self):
        run = run_pipeline(S_DIAG, (37, 37), d_override=18)
        torus = Torus(run.result.moduli)
        union = set()
        for ks in run.result.k_sets:
            assert not union & ks
            union |= ks
        for (base, step), color in run.result.coloring.items():
            if color == ZERO:
                level = next(
                    m.level for m in run.result.models if step in m.basis
                )
                ks = run.result.k_sets[level]
                assert base in ks and torus.add(base, step) in ks
