"""Ruled discriminant sampling and the three export formats."""

import json

import numpy as np
import pytest

from osculant import count_roots, export, order_of_tangency, sample_discriminant
from osculant.errors import GeometryError


def test_samples_lie_on_the_discriminant(rational):
    c = rational[3]
    s = sample_discriminant(c, t_steps=12, ruling_steps=5)
    assert s.patches.shape == (12, 5, 4)
    assert s.rulings.shape == (12, 5, 1)
    for i, t in enumerate(s.ts):
        for j in range(5):
            p = s.patches[i, j]
            assert order_of_tangency(c, p, float(t)) >= 2


def test_samples_see_a_multiple_root(trig, rng):
    c = trig[4]
    s = sample_discriminant(c, t_steps=10, ruling_steps=4)
    checked = 0
    for i in rng.integers(0, 10, size=8):
        for j in rng.integers(0, 4, size=2):
            rc = count_roots(c, s.patches[i, j])
            assert any(m >= 2 for _, m in rc.tangencies)
            checked += 1
    assert checked == 16


def test_plane_curve_degenerates_to_polyline(trig):
    # the codim-2 subspace of a plane curve is the curve point itself,
    # so the ruling collapses to a single column
    c = trig[2]
    s = sample_discriminant(c, t_steps=16, ruling_steps=3)
    assert s.patches.shape == (16, 1, 3)
    for i, t in enumerate(s.ts):
        g = c.point(float(t))
        g = g / np.linalg.norm(g)
        p = s.patches[i, 0] / np.linalg.norm(s.patches[i, 0])
        assert min(np.linalg.norm(p - g), np.linalg.norm(p + g)) < 1e-9


def test_obj_export_counts(tmp_path, rational):
    s = sample_discriminant(rational[3], t_steps=9, ruling_steps=4)
    path = export(s, "obj", tmp_path / "mesh.obj")
    lines = path.read_text().splitlines()
    verts = [l for l in lines if l.startswith("v ")]
    faces = [l for l in lines if l.startswith("f ")]
    assert len(verts) == 9 * 4
    assert len(faces) == 8 * 3
    assert all(len(l.split()) == 4 for l in verts)       # 3 chart coordinates
    assert all(len(l.split()) == 5 for l in faces)       # quads


def test_obj_rejects_other_dimensions(tmp_path, trig):
    s = sample_discriminant(trig[4], t_steps=4, ruling_steps=3)
    with pytest.raises(GeometryError):
        export(s, "obj", tmp_path / "bad.obj")


def test_csv_layout(tmp_path, rational):
    s = sample_discriminant(rational[3], t_steps=5, ruling_steps=3)
    path = export(s, "csv", tmp_path / "cloud.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "t,s1,x0,x1,x2,x3"
    assert len(lines) == 1 + 5 * 3


def test_json_schema(tmp_path, trig):
    s = sample_discriminant(trig[4], t_steps=4, ruling_steps=4)
    path = export(s, "json", tmp_path / "cloud.json")
    doc = json.loads(path.read_text())
    assert set(doc) == {"n", "resolution", "columns", "rows"}
    assert doc["n"] == 4
    assert doc["resolution"] == [4, 4]
    assert len(doc["rows"]) == 16
    assert len(doc["rows"][0]) == len(doc["columns"])


def test_exports_are_byte_deterministic(tmp_path, rational):
    s1 = sample_discriminant(rational[3], t_steps=8, ruling_steps=4)
    s2 = sample_discriminant(rational[3], t_steps=8, ruling_steps=4)
    outs = []
    for k, s in enumerate((s1, s2)):
        for fmt in ("obj", "csv", "json"):
            p = export(s, fmt, tmp_path / f"{k}.{fmt}")
            outs.append(p.read_bytes())
    assert outs[0] == outs[3] and outs[1] == outs[4] and outs[2] == outs[5]


def test_grid_validation(trig):
    with pytest.raises(ValueError):
        sample_discriminant(trig[3], t_steps=1, ruling_steps=4)
    with pytest.raises(ValueError):
        sample_discriminant(trig[3], t_steps=4, ruling_steps=0)
