from fractions import Fraction

from laakso import connect, geodesic_path
from laakso.render import path_svg


def test_solid_runs_and_dashed_jumps(s3):
    x = s3.parse_point("(0)@1/5")
    y = s3.parse_point("101(0)@1/10")
    svg = path_svg(s3, geodesic_path(s3, x, y))
    assert svg.startswith("<svg") and svg.endswith("</svg>")
    assert svg.count("dasharray") == 2  # one connector per jump
    assert "circle" in svg


def test_tail_marker_for_truncated_paths(s3):
    path = connect(s3, s3.parse_point("(0)@0"), s3.parse_point("(1)@1"), "increasing", depth=3)
    svg = path_svg(s3, path)
    assert svg.count("dasharray") == 3
    assert svg.count("circle") == 3  # endpoints plus the accumulation marker


def test_interval_tail_renders(q13):
    path = geodesic_path(q13, q13.parse_point("(0)@0"), q13.parse_point("(1)@1"), depth=4)
    svg = path_svg(q13, path)
    assert "<svg" in svg and "circle" in svg


def test_degenerate_path(s3):
    p = s3.parse_point("(0)@1/2")
    svg = path_svg(s3, connect(s3, p, p))
    assert svg.startswith("<svg")
