import pytest

from reeb_spectra.errors import NotStarShapedModel
from reeb_spectra.exactnum import sqrt
from reeb_spectra.toric import ToricPolygon, primitive_normal, toric_reeb_actions


def test_triangle_slant_edge():
    poly = ToricPolygon([(0, 0), (2, 0), (0, 1)])
    fams = toric_reeb_actions(poly, 10)
    edges = [f for f in fams if f.kind == "edge"]
    assert len(edges) == 1
    assert edges[0].normal == (1, 2)
    # x + 2y at both endpoints
    assert 2 + 2 * 0 == 0 + 2 * 1 == 2
    assert edges[0].action == 2


def test_corner_orbits():
    a = sqrt(2)
    fams = toric_reeb_actions(ToricPolygon.ellipsoid(a, 1), 5)
    corners = {f.normal: f.action for f in fams if f.kind == "corner"}
    assert corners == {(1, 0): a, (0, 1): 1}
    # irrational slant carries no integer normal
    assert not [f for f in fams if f.kind == "edge"]


def test_zero_bound_gives_nothing():
    poly = ToricPolygon([(0, 0), (3, 0), (2, 2), (0, 3)])
    assert toric_reeb_actions(poly, 0) == []


def test_polygon_edges_filtered_by_action():
    poly = ToricPolygon([(0, 3), (2, 2), (3, 0), (0, 0)])  # clockwise input
    assert poly.vertices[0] == (0, 0)
    assert poly.convex
    fams = toric_reeb_actions(poly, 10)
    got = sorted((f.normal, f.action) for f in fams if f.kind == "edge")
    # edges (3,0)->(2,2) normal (2,1), action 6; (2,2)->(0,3) normal (1,2), action 6
    assert got == [((1, 2), 6), ((2, 1), 6)]
    assert [f for f in toric_reeb_actions(poly, 5) if f.kind == "edge"] == []


def test_vertex_fans_optional():
    poly = ToricPolygon([(0, 0), (3, 0), (2, 2), (0, 3)])
    fans = [f for f in toric_reeb_actions(poly, 12, include_vertex_fans=True) if f.kind == "vertex"]
    # normals strictly between (1,2) and (2,1) at (2,2): (1,1) action 4, (3,2),(2,3) action 10
    assert sorted((f.normal, f.action) for f in fans) == [((1, 1), 4), ((2, 3), 10), ((3, 2), 10)]


def test_negative_normal_rejected():
    # upper edge climbing toward (a, 0)'s side: normal has a negative component
    poly = ToricPolygon([(0, 0), (2, 0), (3, 2), (0, 1)])
    with pytest.raises(NotStarShapedModel):
        toric_reeb_actions(poly, 10)


def test_missing_axis_corner_rejected():
    poly = ToricPolygon([(0, 0), (2, 0), (2, 2)])
    with pytest.raises(NotStarShapedModel):
        toric_reeb_actions(poly, 10)


def test_primitive_normal_reduces():
    assert primitive_normal((4, 0), (0, 2)) == (1, 2)
    assert primitive_normal((sqrt(2), 0), (0, 1)) is None
