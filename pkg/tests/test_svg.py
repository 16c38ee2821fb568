from __future__ import annotations

from eulersphere.geodesy import projective_structure, trajectory
from eulersphere.svg import layout, render_trajectory


def test_layout_covers_every_vertex(octa):
    pos = layout(octa, seed=1)
    assert sorted(pos) == list(octa.vertices)
    assert layout(octa, seed=1) == pos


def test_trajectory_svg_is_reproducible(tmp_path, octa):
    traj = trajectory(projective_structure(octa), (0, 1), 8)
    a = render_trajectory(octa, traj, 5, tmp_path / "a.svg", size=320)
    b = render_trajectory(octa, traj, 5, tmp_path / "nested" / "b.svg", size=320)
    text = a.read_text(encoding="utf-8")
    assert "<svg" in text and text.rstrip().endswith("</svg>")
    assert "<dc:date>" not in text
    assert a.read_bytes() == b.read_bytes()
