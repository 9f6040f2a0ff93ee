import re
from collections import Counter

import pytest

from groupcut.complex2d import (
    Face,
    GREEN,
    LOWER,
    Painting,
    corner_vertices,
)
from groupcut.grid_functions import gmic
from groupcut.svgplot import render_2d_diagram

_DARK_GREEN = "#1b5e20"


def _triangle_fills(svg):
    return Counter(fill for _, fill in re.findall(
        r'<polygon class="(lower|upper)"[^>]*fill="([^"]+)"', svg))


def test_function_diagram_layout():
    svg = render_2d_diagram(gmic(5, 3))
    assert svg.startswith("<svg")
    assert svg.count('class="cell"') == 25
    # the two dashed lines mark x + y = f on the unit square
    assert svg.count("stroke-dasharray") == 2


def test_output_is_deterministic(tmp_path):
    first = render_2d_diagram(gmic(7, 2))
    second = render_2d_diagram(gmic(7, 2))
    assert first == second
    path = tmp_path / "plot.svg"
    returned = render_2d_diagram(gmic(7, 2), output=str(path))
    assert path.read_text() == returned == first


def test_component_coloring_gmic():
    # gmic(5,3) has two covered components; its green triangles split
    # across the first two palette entries with white everywhere else
    fills = _triangle_fills(render_2d_diagram(gmic(5, 3)))
    assert fills == {"#ffffff": 37, _DARK_GREEN: 9, "#1565c0": 4}


def test_single_diagonal_green_triangle():
    painting = Painting(5)
    for corner in corner_vertices(Face(LOWER, 2, 2), 5):
        painting.set_color(corner, GREEN)
    painting.set_color(Face(LOWER, 2, 2), GREEN)
    svg = render_2d_diagram(painting)
    fills = _triangle_fills(svg)
    assert fills[_DARK_GREEN] == 1
    # undecided faces render grey, nothing else picks up a palette color
    assert set(fills) == {_DARK_GREEN, "#ececec"}


def test_painting_diagram_has_no_diagonals():
    svg = render_2d_diagram(Painting(4))
    assert "stroke-dasharray" not in svg
    assert svg.count('class="cell"') == 16


def test_green_edges_and_vertices_are_drawn():
    svg = render_2d_diagram(gmic(5, 3))
    assert len(re.findall(r'<line class="edge"', svg)) == 27
    assert len(re.findall(r'<circle class="dot"', svg)) == 13


def test_q_override_must_match():
    with pytest.raises(ValueError):
        render_2d_diagram(gmic(5, 3), q=7)
    assert render_2d_diagram(gmic(5, 3), q=5)


def test_rejects_unknown_source():
    with pytest.raises(TypeError):
        render_2d_diagram([0, 1, 0])
