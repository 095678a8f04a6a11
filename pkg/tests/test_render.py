import numpy as np
import pytest

from oracles import lint_svg, random_corpus, svg_paths
from render_laws import classification, crossing_count, curve_violations, outer_zone_sees_infinity, rendering_violations
from setmerge import SetSystem, euler_merge, initial_dual_graph, parse_set_system
from setmerge.curves import Curve, Diagram, SmoothConfig, route_curves, smooth_curves
from setmerge.dual import DualGraphError, concurrency
from setmerge.geometry import polyline_length
from setmerge.layout import RefineConfig, planar_layout, refine_layout
from setmerge.pipeline import draw, simplify
from setmerge.svg import emit_svg


@pytest.fixture(scope="module")
def movie_final(movies):
    return euler_merge(movies)[0]


def test_movie_layout_is_crossing_free_with_outer_zone_outside(movie_final):
    layout = planar_layout(movie_final)
    assert crossing_count(movie_final, layout) == 0
    assert outer_zone_sees_infinity(movie_final, layout)
    seen = []
    refined = refine_layout(movie_final, layout, RefineConfig(iterations=500),
                            on_iteration=lambda it, cur: seen.append(crossing_count(movie_final, cur)))
    assert len(seen) == 500 and not any(seen)
    assert outer_zone_sees_infinity(movie_final, refined)
    assert refined.min_vertex_distance() >= layout.min_vertex_distance()


def test_two_vertex_layout():
    g = initial_dual_graph(parse_set_system("a: x"))
    layout = planar_layout(g)
    p, q = (layout.positions[z] for z in g.sorted_zone_ids())
    assert np.linalg.norm(p - q) > 0


def test_nonplanar_layout_rejected(movies):
    with pytest.raises(DualGraphError):
        planar_layout(initial_dual_graph(movies))


def test_refinement_separates_near_coincident_vertices():
    g = initial_dual_graph(parse_set_system("a: x, y\nb: y"))
    layout = planar_layout(g)
    a, ab = g.zone_id("a"), g.zone_id("ab")
    direction = layout.positions[ab] - layout.positions[a]
    layout.positions[ab] = layout.positions[a] + 1e-3 * direction / np.linalg.norm(direction)
    assert crossing_count(g, layout) == 0
    config = RefineConfig(iterations=200, min_spacing=0.8)
    refined = refine_layout(g, layout, config)
    assert refined.min_vertex_distance() >= config.min_spacing
    assert crossing_count(g, refined) == 0


def test_route_requires_zero_concurrency(movies):
    planar = simplify(movies).planar
    assert concurrency(planar) > 0
    with pytest.raises(DualGraphError):
        route_curves(planar, planar_layout(planar))


def test_side_by_side_rendering_of_concurrent_stage(movies):
    planar = simplify(movies).planar
    diagram = route_curves(planar, planar_layout(planar), allow_concurrency=True)
    assert curve_violations(planar, diagram) == []


def test_single_set_curve():
    g = initial_dual_graph(parse_set_system("a: x"))
    diagram = route_curves(g, planar_layout(g))
    assert list(diagram.curves) == ["a"] and len(diagram.curves["a"].components) == 1
    assert curve_violations(g, diagram) == []


def test_movie_curves_and_smoothing(movie_final):
    diagram = route_curves(movie_final, refine_layout(movie_final, planar_layout(movie_final)))
    assert sorted(diagram.curves) == list("acefg")
    assert curve_violations(movie_final, diagram) == []
    smooth = smooth_curves(diagram)
    assert classification(movie_final, smooth) == classification(movie_final, diagram)
    assert curve_violations(movie_final, smooth) == []


def test_genus_set_drawn_with_a_hole(women):
    g = euler_merge(women)[0]
    diagram = draw(g, refine_iterations=50, smooth_iterations=0)
    assert len(diagram.curves["d"].components) == 2
    assert curve_violations(g, diagram) == []


def test_square_curve_shrinks_under_smoothing():
    g = initial_dual_graph(parse_set_system("a: x"))
    layout = planar_layout(g)
    side = np.linspace(0, 10, 11)[:-1]
    square = np.array([(x, 0) for x in side] + [(10, y) for y in side] + [(10 - x, 10) for x in side]
                      + [(0, 10 - y) for y in side], float) + 100.0
    diagram = Diagram(g, layout, {"a": Curve("a", [square], [np.zeros(len(square), bool)])})
    lengths = [polyline_length(square)]
    for _ in range(3):
        diagram = smooth_curves(diagram, SmoothConfig(iterations=20))
        lengths.append(polyline_length(diagram.curves["a"].components[0]))
    assert all(b < a for a, b in zip(lengths, lengths[1:]))


def test_long_smoothing_keeps_zones_on_random_diagrams():
    for i, sets in enumerate(random_corpus(8, seed=131)):
        g = euler_merge(SetSystem(sets))[0]
        assert rendering_violations(g, seed=i, refine_iterations=30, smooth_iterations=200) == []


def test_svg_for_movie_diagram(movie_final):
    titles = {"a": "Alpha", "b": "Beta", "c": "Gamma", "d": "Delta", "e": "Eps", "f": "Phi", "g": "Geo"}
    diagram = draw(movie_final, refine_iterations=50, smooth_iterations=10)
    svg = emit_svg(diagram, titles=titles)
    assert lint_svg(svg) == []
    assert len(svg_paths(svg)) == 5
    for name in titles.values():
        assert name in svg
    assert "a: Alpha; Beta; Delta" in svg
    assert emit_svg(diagram, titles=titles) == svg


def test_svg_single_set():
    g = initial_dual_graph(parse_set_system("a: x"))
    svg = emit_svg(draw(g, refine_iterations=10, smooth_iterations=10))
    assert lint_svg(svg) == [] and len(svg_paths(svg)) == 1


def test_distinct_palette_colours():
    g = euler_merge(parse_set_system("a: 1\nb: 2\nc: 3\nd: 4"))[0]
    svg = emit_svg(draw(g, refine_iterations=10, smooth_iterations=0))
    strokes = [p.get("stroke") for p in svg_paths(svg)]
    assert len(set(strokes)) == 4
