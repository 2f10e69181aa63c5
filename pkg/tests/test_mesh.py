import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eigenbound.errors import DegenerateCell, EmptyInterior, NonManifold, ParseError, UnsupportedGeometry
from eigenbound.mesh import (
    ImmersedMesh,
    assemble_operators,
    curvature_summary_analytic,
    discrete_mean_curvature,
    disk_mesh,
    grid,
    hemisphere,
    icosphere,
    load_mesh,
    tetgrid,
    trace_identity,
    write_mesh,
)
from eigenbound.types import Box, EuclideanBall, MeshGeometry, SphericalCap

TRI = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


# --- validation ------------------------------------------------------------


def test_single_triangle():
    m = ImmersedMesh(TRI, [[0, 1, 2]], 2)
    assert m.boundary_vertices.tolist() == [0, 1, 2]
    assert len(m.interior_vertices) == 0


def test_repeated_vertex_and_zero_area():
    with pytest.raises(DegenerateCell):
        ImmersedMesh(TRI, [[0, 1, 1]], 2)
    with pytest.raises(DegenerateCell):
        ImmersedMesh(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]), [[0, 1, 2]], 2)


def test_inverted_planar_cell():
    with pytest.raises(DegenerateCell, match="inverted"):
        ImmersedMesh(TRI, [[0, 2, 1]], 2)


def test_inconsistent_orientation_in_3d():
    v = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]], float)
    ImmersedMesh(v, [[0, 1, 2], [0, 2, 3]], 2)
    with pytest.raises(DegenerateCell):
        ImmersedMesh(v, [[0, 1, 2], [0, 3, 2]], 2)


def test_non_manifold():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1]], float)
    with pytest.raises(NonManifold):
        ImmersedMesh(v, [[0, 1, 2], [1, 0, 3], [0, 1, 4]], 2)
    with pytest.raises(NonManifold):
        ImmersedMesh(np.vstack([TRI, [[5.0, 5.0]]]), [[0, 1, 2]], 2)


def test_shape_errors():
    with pytest.raises(ParseError):
        ImmersedMesh(TRI, [[0, 1, 2, 3]], 2)
    with pytest.raises(ParseError):
        ImmersedMesh(TRI, [[0, 1, 7]], 2)
    with pytest.raises(ParseError):
        ImmersedMesh(TRI, np.zeros((0, 3), int), 2)


# --- file formats ----------------------------------------------------------


@pytest.mark.parametrize("ext", [".obj", ".off"])
def test_surface_round_trip(tmp_path, ext):
    m = icosphere(1)
    p = str(tmp_path / ("m" + ext))
    write_mesh(m, p)
    back = load_mesh(p)
    assert np.array_equal(back.cells, m.cells)
    assert np.array_equal(back.vertices, m.vertices)


def test_tet_round_trip(tmp_path):
    m = tetgrid(2)
    p = str(tmp_path / "m.tet")
    write_mesh(m, p)
    back = load_mesh(p)
    assert back.intrinsic_dim == 3
    assert np.array_equal(back.cells, m.cells)


def test_obj_features(tmp_path):
    p = tmp_path / "m.obj"
    p.write_text("# comment\nv 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nf 1/1/1 2/2/1 -1\n")
    m = load_mesh(str(p))
    assert m.cells.tolist() == [[0, 1, 2]]


@pytest.mark.parametrize(
    "name,text",
    [
        ("a.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 3 4\n"),
        ("b.obj", "v 0 0\n"),
        ("c.obj", "v 0 0 0\nf 0 1 2\n"),
        ("d.off", "NOFF\n"),
        ("e.off", "OFF\n3 1 0\n0 0 0\n1 0 0\n"),
        ("f.tet", "v 0 0 0\n"),
        ("g.stl", "solid\n"),
    ],
)
def test_parse_errors(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    with pytest.raises(ParseError):
        load_mesh(str(p))


def test_missing_file():
    with pytest.raises(ParseError):
        load_mesh("/nonexistent/mesh.obj")


# --- generators ------------------------------------------------------------


def test_icosphere_counts_and_radius():
    for s in range(4):
        m = icosphere(s, radius=2.0)
        assert len(m.cells) == 20 * 4**s
        assert np.allclose(np.linalg.norm(m.vertices, axis=1), 2.0)
        assert len(m.boundary_vertices) == 0


def test_hemisphere_boundary_on_equator():
    m = hemisphere(3)
    z = m.vertices[m.boundary_vertices, 2]
    assert np.allclose(z, 0.0)
    assert (m.vertices[:, 2] >= -1e-15).all()


def test_grid_counts():
    m = grid(10, 10)
    assert m.num_vertices == 121
    assert len(m.boundary_vertices) == 40


def test_disk_mesh_radius():
    m = disk_mesh(6, radius=2.0)
    r = np.linalg.norm(m.vertices[m.boundary_vertices], axis=1)
    assert np.allclose(r, 2.0)


# --- operators -------------------------------------------------------------


def test_reference_triangle_stiffness():
    ops = assemble_operators(ImmersedMesh(TRI, [[0, 1, 2]], 2))
    K = ops.stiffness.toarray()
    ref = 0.5 * np.array([[2, -1, -1], [-1, 1, 0], [-1, 0, 1]], float)
    assert np.allclose(K, ref, atol=1e-15)
    assert ops.volume == pytest.approx(0.5)


@pytest.mark.parametrize("mesh", [grid(6, 4, 2.0, 1.0), icosphere(2), tetgrid(3), disk_mesh(5)], ids=str)
def test_operator_invariants(mesh):
    ops = assemble_operators(mesh)
    K = ops.stiffness.toarray()
    M = ops.mass.toarray()
    assert np.allclose(K, K.T)
    assert np.allclose(K.sum(axis=1), 0.0, atol=1e-12)
    assert np.linalg.eigvalsh(K).min() > -1e-10
    assert M.sum() == pytest.approx(ops.volume, rel=1e-12)
    assert ops.lumped.sum() == pytest.approx(ops.volume, rel=1e-12)
    assert (ops.lumped > 0).all()


def test_linear_functions_are_harmonic_inside():
    m = grid(8, 8)
    ops = assemble_operators(m)
    f = 3.0 * m.vertices[:, 0] - 2.0 * m.vertices[:, 1] + 1.0
    r = ops.stiffness @ f
    assert np.allclose(r[m.interior_vertices], 0.0, atol=1e-12)


def test_volumes():
    assert assemble_operators(tetgrid(3, lengths=(1.0, 2.0, 3.0))).volume == pytest.approx(6.0, rel=1e-12)
    assert assemble_operators(icosphere(4)).volume == pytest.approx(4 * math.pi, rel=2e-3)


# --- curvature -------------------------------------------------------------


def test_flat_mesh_has_zero_curvature():
    c = discrete_mean_curvature(grid(5, 5, ambient=3)).summary
    assert c.h_sup == pytest.approx(0.0, abs=1e-12)
    assert c.h_ln == pytest.approx(0.0, abs=1e-12)


def test_sphere_mean_curvature_converges():
    devs = [float(abs(discrete_mean_curvature(icosphere(s)).h_norms - 1.0).max()) for s in (2, 3, 4)]
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < 1e-4


def test_curvature_vector_points_inward():
    m = icosphere(3)
    mc = discrete_mean_curvature(m)
    dots = np.einsum("ij,ij->i", mc.h_vectors, m.vertices[mc.interior])
    assert (dots < 0).all()


def test_trace_identity_on_sphere():
    tr = trace_identity(icosphere(3))
    assert tr == pytest.approx(8 * math.pi, rel=0.01)


def test_no_interior_vertices():
    with pytest.raises(EmptyInterior):
        discrete_mean_curvature(ImmersedMesh(TRI, [[0, 1, 2]], 2))


@given(st.floats(min_value=0.1, max_value=20.0))
def test_curvature_scaling(s):
    m = icosphere(2)
    a = discrete_mean_curvature(m).summary
    b = discrete_mean_curvature(m.scaled(s)).summary
    assert b.h_sup == pytest.approx(a.h_sup / s, rel=1e-10)
    assert b.h_ln == pytest.approx(a.h_ln, rel=1e-10)
    assert b.volume == pytest.approx(a.volume * s * s, rel=1e-10)


def test_analytic_summaries():
    c = curvature_summary_analytic(Box((1.0, 2.0, 3.0)))
    assert (c.h_sup, c.h_ln, c.volume) == (0.0, 0.0, 6.0)
    c = curvature_summary_analytic(EuclideanBall(3, 2.0))
    assert c.volume == pytest.approx(4 / 3 * math.pi * 8, rel=1e-14)
    c = curvature_summary_analytic(SphericalCap(2, 1.0, math.pi / 2))
    assert c.volume == pytest.approx(2 * math.pi, rel=1e-14)
    assert c.h_ln == pytest.approx(math.sqrt(2 * math.pi), rel=1e-14)
    c = curvature_summary_analytic(SphericalCap(3, 2.0, math.pi / 2))
    assert c.h_sup == 0.5
    assert c.volume == pytest.approx(math.pi**2 * 8, rel=1e-14)
    assert c.h_ln == pytest.approx(math.pi ** (2 / 3), rel=1e-14)
    with pytest.raises(UnsupportedGeometry):
        curvature_summary_analytic(MeshGeometry("x.obj"))


def test_hemisphere_mesh_converges_to_analytic_norm():
    target = math.sqrt(2 * math.pi)
    errs = [abs(discrete_mean_curvature(hemisphere(s)).summary.h_ln / target - 1.0) for s in (2, 3, 4)]
    assert errs[0] > errs[1] > errs[2]
