import math
import os
from pathlib import Path

import pytest

import biharm

SCENES = Path(os.environ.get("BIHARM_SCENE_DIR", Path(__file__).resolve().parents[2] / "scenes"))


def test_slice_geometry():
    report = biharm.analyze(biharm.sphere_slice(1.0), [0.3, -0.2])
    assert report["lambda"] == pytest.approx(1.0, abs=1e-9)
    assert report["normA2"] == pytest.approx(2.0, abs=1e-8)
    assert abs(report["normal_residual"]) < 1e-7


def test_slice_r2_normal_residual():
    report = biharm.analyze(biharm.sphere_slice(2.0), [0.0, 0.0])
    assert report["normal_residual"] == pytest.approx(24.0, abs=1e-6)


def test_cone_closed_form():
    report = biharm.analyze(biharm.cone(2.0), [1.0, 0.5])
    assert report["lambda"] == pytest.approx(1 / (4 * math.sqrt(5)), rel=1e-8)
    assert report["lapLambda"] == pytest.approx(1 / (4 * 5**1.5), rel=1e-8)


def test_classify_and_scan():
    rec = biharm.classify(biharm.sphere_slice(1.0), [[0, 0], [0.5, 0.5]])
    assert rec["biharmonic"]["value"] and not rec["harmonic"]["value"]
    scan = biharm.scan(biharm.cone(1.0), "r", 0.5, 2.0, [1.0, math.pi / 2])
    assert len(scan["roots"]) == 1
    assert scan["roots"][0] == pytest.approx(1.0, abs=1e-6)


def test_warped_pairing():
    scene = biharm.WarpedScene(biharm.sphere_slice(1.0), "exp(t)", t_lo=-1, t_hi=1)
    assert biharm.warped_report(scene, 0.0, [0, 0])["pairing"] == pytest.approx(16.0, abs=1e-6)
    assert biharm.warped_report(scene, 0.5, [0, 0])["pairing"] == pytest.approx(16 / math.e, abs=1e-6)


def test_custom_immersion():
    plane = biharm.Immersion(["u", "v"], ["u", "v", "k"], {"k": 0.0})
    assert plane.m == 2 and plane.n == 3 and plane.is_hypersurface
    assert biharm.classify(plane, [[0, 0]])["harmonic"]["value"]


def test_scene_files():
    scene = biharm.load_scene(SCENES / "sphere_slice.json")
    assert len(scene.points) == 5
    assert scene.warped is not None
    assert biharm.eval_expr("a*2^3", {"a": 0.5}) == 4.0


@pytest.mark.parametrize(
    "make, kind",
    [
        (lambda: biharm.Immersion(["u", "v"], ["u", "v"]), "scene_invalid"),
        (lambda: biharm.eval_expr("1+"), "parse"),
        (lambda: biharm.eval_expr("log(x)", {"x": -1.0}), "domain"),
        (lambda: biharm.WarpedScene(biharm.sphere_slice(1.0), "t", t_lo=-1, t_hi=1), "warp_domain"),
        (lambda: biharm.parse_scene("{"), "scene_format"),
    ],
)
def test_errors_carry_kind(make, kind):
    with pytest.raises(biharm.Error) as info:
        make()
    assert info.value.kind == kind


def test_verify_passes():
    results = biharm.verify()
    assert results and all(r["pass"] for r in results)
