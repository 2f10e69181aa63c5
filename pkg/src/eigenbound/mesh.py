"""Simplicial meshes of immersed submanifolds, P1 operators and mean curvature.

A mesh is a list of vertex positions in R^m and a list of n-simplices.  The
P1 stiffness matrix discretises the Laplace-Beltrami operator of the induced
metric; applying it to the coordinate functions gives the mean curvature
vector through Delta X = n H.

Tetrahedral element format (plain text, 0-based indices)::

    tet 3
    v 0.0 0.0 0.0
    v 1.0 0.0 0.0
    ...
    c 0 1 2 3
    ...

Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from .errors import (
    DegenerateCell,
    EmptyInterior,
    NonManifold,
    ParseError,
    UnsupportedGeometry,
)
from .special import gamma_fn, sphere_area
from .types import Box, CurvatureSummary, EuclideanBall, SphericalCap

#: Cells with volume below this fraction of (mean edge length)^n are degenerate.
DEGENERATE_RTOL = 1e-12


# ---------------------------------------------------------------------------
# Mesh container and validation


def _parity(perm: Iterable[int]) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


@dataclass
class ImmersedMesh:
    """Validated simplicial mesh.

    Attributes
    ----------
    vertices : ndarray, shape (N, m)
        Vertex positions in R^m.
    cells : ndarray, shape (C, n + 1)
        Vertex indices of each simplex.
    intrinsic_dim : int
        Simplex dimension n.
    boundary_vertices : ndarray
        Sorted indices of vertices lying on a facet owned by a single cell.
    """

    vertices: np.ndarray
    cells: np.ndarray
    intrinsic_dim: int
    boundary_vertices: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        self.vertices = np.ascontiguousarray(self.vertices, dtype=float)
        self.cells = np.ascontiguousarray(self.cells, dtype=np.int64)
        if self.vertices.ndim != 2:
            raise ParseError("vertices must be a 2-d array")
        n = int(self.intrinsic_dim)
        self.intrinsic_dim = n
        if self.cells.ndim != 2 or self.cells.shape[1] != n + 1:
            raise ParseError(f"cells must have {n + 1} vertices each")
        if self.vertices.shape[1] < n:
            raise ParseError(f"ambient dimension {self.vertices.shape[1]} below intrinsic dimension {n}")
        if len(self.cells) == 0:
            raise ParseError("mesh has no cells")
        if self.cells.min() < 0 or self.cells.max() >= len(self.vertices):
            raise ParseError("cell index out of range")
        self.boundary_vertices = _validate(self.vertices, self.cells, n)

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def interior_vertices(self) -> np.ndarray:
        mask = np.ones(self.num_vertices, dtype=bool)
        mask[self.boundary_vertices] = False
        return np.flatnonzero(mask)

    def scaled(self, s: float) -> "ImmersedMesh":
        return ImmersedMesh(self.vertices * s, self.cells.copy(), self.intrinsic_dim)


def _cell_geometry(vertices: np.ndarray, cells: np.ndarray):
    """Edge matrices, Gram matrices and unsigned volumes of all cells."""
    n = cells.shape[1] - 1
    p0 = vertices[cells[:, 0]]
    E = np.stack([vertices[cells[:, i]] - p0 for i in range(1, n + 1)], axis=2)  # (C, m, n)
    G = np.einsum("cmi,cmj->cij", E, E)
    det = np.linalg.det(G)
    vol = np.sqrt(np.clip(det, 0.0, None)) / math.factorial(n)
    return E, G, vol


def _validate(vertices: np.ndarray, cells: np.ndarray, n: int) -> np.ndarray:
    for c, cell in enumerate(cells):
        if len(set(cell.tolist())) != n + 1:
            raise DegenerateCell(f"cell {c} repeats a vertex")
    E, _, vol = _cell_geometry(vertices, cells)
    # scale-aware threshold from the mean edge length of each cell
    edge = np.sqrt(np.einsum("cmi,cmi->ci", E, E)).mean(axis=1)
    bad = np.flatnonzero(vol <= DEGENERATE_RTOL * edge**n)
    if len(bad):
        raise DegenerateCell(f"cell {int(bad[0])} has zero volume")
    m = vertices.shape[1]
    if m == n:
        signed = np.linalg.det(E)
        bad = np.flatnonzero(signed < 0)
        if len(bad):
            raise DegenerateCell(f"cell {int(bad[0])} is inverted (negative orientation)")

    # facet -> list of (cell, induced orientation)
    facets: Dict[Tuple[int, ...], List[Tuple[int, int]]] = {}
    for c, cell in enumerate(cells.tolist()):
        for i in range(n + 1):
            face = cell[:i] + cell[i + 1 :]
            order = sorted(range(n), key=lambda a: face[a])
            key = tuple(face[a] for a in order)
            sign = (-1) ** i * _parity(order)
            facets.setdefault(key, []).append((c, sign))
    boundary = set()
    for key, owners in facets.items():
        if len(owners) > 2:
            raise NonManifold(f"facet {key} is shared by {len(owners)} cells")
        if len(owners) == 1:
            boundary.update(key)
        elif owners[0][1] == owners[1][1]:
            raise DegenerateCell(
                f"cells {owners[0][0]} and {owners[1][0]} have inconsistent orientation "
                f"across facet {key} (inverted cell)"
            )
    used = np.zeros(len(vertices), dtype=bool)
    used[cells.ravel()] = True
    if not used.all():
        raise NonManifold(f"vertex {int(np.flatnonzero(~used)[0])} belongs to no cell")
    return np.array(sorted(boundary), dtype=np.int64)


# ---------------------------------------------------------------------------
# File formats


def _parse_index(tok: str, nverts: int, lineno: int) -> int:
    head = tok.split("/")[0]
    try:
        i = int(head)
    except ValueError:
        raise ParseError(f"line {lineno}: bad vertex index {tok!r}") from None
    if i < 0:
        return nverts + i
    if i == 0:
        raise ParseError(f"line {lineno}: OBJ indices are 1-based")
    return i - 1


def _read_obj(text: str):
    verts, faces = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split("#")[0].split()
        if not parts:
            continue
        if parts[0] == "v":
            try:
                verts.append([float(x) for x in parts[1:4]])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex {line!r}") from None
            if len(verts[-1]) != 3:
                raise ParseError(f"line {lineno}: vertex needs 3 coordinates")
        elif parts[0] == "f":
            idx = [_parse_index(t, len(verts), lineno) for t in parts[1:]]
            if len(idx) != 3:
                raise ParseError(f"line {lineno}: only triangular faces are supported")
            faces.append(idx)
    return verts, faces


def _read_off(text: str):
    tokens: List[str] = []
    for line in text.splitlines():
        tokens.extend(line.split("#")[0].split())
    if not tokens or tokens[0] != "OFF":
        raise ParseError("OFF file must start with 'OFF'")
    try:
        nv, nf = int(tokens[1]), int(tokens[2])
        pos = 4
        verts = []
        for _ in range(nv):
            verts.append([float(x) for x in tokens[pos : pos + 3]])
            pos += 3
        faces = []
        for _ in range(nf):
            k = int(tokens[pos])
            if k != 3:
                raise ParseError("only triangular faces are supported")
            faces.append([int(x) for x in tokens[pos + 1 : pos + 4]])
            pos += 1 + k
    except (IndexError, ValueError):
        raise ParseError("truncated or malformed OFF file") from None
    return verts, faces


def _read_tet(text: str):
    verts, cells = [], []
    m = None
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split("#")[0].split()
        if not parts:
            continue
        try:
            if m is None:
                if parts[0] != "tet" or len(parts) != 2:
                    raise ParseError(f"line {lineno}: expected header 'tet m'")
                m = int(parts[1])
            elif parts[0] == "v":
                row = [float(x) for x in parts[1:]]
                if len(row) != m:
                    raise ParseError(f"line {lineno}: vertex needs {m} coordinates")
                verts.append(row)
            elif parts[0] == "c":
                row = [int(x) for x in parts[1:]]
                if len(row) != 4:
                    raise ParseError(f"line {lineno}: cell needs 4 indices")
                cells.append(row)
            else:
                raise ParseError(f"line {lineno}: unknown record {parts[0]!r}")
        except ValueError:
            raise ParseError(f"line {lineno}: malformed numbers") from None
    if m is None:
        raise ParseError("empty tet file")
    return verts, cells


def load_mesh(path: str, intrinsic_dim: Optional[int] = None) -> ImmersedMesh:
    """Read an OBJ, OFF or tet file and validate it.

    The format is chosen from the extension (``.obj``, ``.off``, ``.tet``);
    ``intrinsic_dim`` defaults to 2 for OBJ/OFF and 3 for tet files.

    Raises
    ------
    ParseError, NonManifold, DegenerateCell
    """
    ext = os.path.splitext(path)[1].lower()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    if ext == ".obj":
        verts, cells = _read_obj(text)
        default = 2
    elif ext == ".off":
        verts, cells = _read_off(text)
        default = 2
    elif ext == ".tet":
        verts, cells = _read_tet(text)
        default = 3
    else:
        raise ParseError(f"unknown mesh extension {ext!r}")
    n = default if intrinsic_dim is None else int(intrinsic_dim)
    if n != default:
        raise ParseError(f"{ext} files hold {default}-simplices, not {n}-simplices")
    if not verts:
        raise ParseError("mesh has no vertices")
    return ImmersedMesh(np.array(verts, float), np.array(cells, np.int64).reshape(-1, n + 1), n)


def _pad3(v: np.ndarray) -> np.ndarray:
    if v.shape[1] > 3:
        raise ValueError("OBJ/OFF hold at most 3 coordinates")
    out = np.zeros((len(v), 3))
    out[:, : v.shape[1]] = v
    return out


def write_mesh(mesh: ImmersedMesh, path: str) -> None:
    """Write ``mesh`` in the format implied by the extension of ``path``."""
    ext = os.path.splitext(path)[1].lower()
    lines: List[str] = []
    if ext == ".obj":
        if mesh.intrinsic_dim != 2:
            raise ValueError("OBJ output supports triangle meshes only")
        lines += ["v " + " ".join(repr(float(x)) for x in p) for p in _pad3(mesh.vertices)]
        lines += ["f " + " ".join(str(i + 1) for i in c) for c in mesh.cells.tolist()]
    elif ext == ".off":
        if mesh.intrinsic_dim != 2:
            raise ValueError("OFF output supports triangle meshes only")
        lines.append("OFF")
        lines.append(f"{mesh.num_vertices} {len(mesh.cells)} 0")
        lines += [" ".join(repr(float(x)) for x in p) for p in _pad3(mesh.vertices)]
        lines += ["3 " + " ".join(str(i) for i in c) for c in mesh.cells.tolist()]
    elif ext == ".tet":
        if mesh.intrinsic_dim != 3:
            raise ValueError("tet output supports tetrahedral meshes only")
        lines.append(f"tet {mesh.ambient_dim}")
        lines += ["v " + " ".join(repr(float(x)) for x in p) for p in mesh.vertices]
        lines += ["c " + " ".join(str(i) for i in c) for c in mesh.cells.tolist()]
    else:
        raise ValueError(f"unknown mesh extension {ext!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Generators


def _subdivide_sphere(verts: List[np.ndarray], faces: List[Tuple[int, int, int]], levels: int):
    for _ in range(levels):
        cache: Dict[Tuple[int, int], int] = {}

        def mid(a: int, b: int) -> int:
            key = (a, b) if a < b else (b, a)
            if key not in cache:
                p = verts[a] + verts[b]
                verts.append(p / np.linalg.norm(p))
                cache[key] = len(verts) - 1
            return cache[key]

        new = []
        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            new += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = new
    return verts, faces


def icosphere(subdiv: int, radius: float = 1.0) -> ImmersedMesh:
    """Outward-oriented icosphere with 10 * 4**subdiv + 2 vertices."""
    t = (1.0 + math.sqrt(5.0)) / 2.0
    raw = [
        (-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
        (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
        (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1),
    ]  # fmt: skip
    verts = [np.array(p, float) / math.sqrt(1 + t * t) for p in raw]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]  # fmt: skip
    verts, faces = _subdivide_sphere(verts, faces, subdiv)
    return ImmersedMesh(np.array(verts) * radius, np.array(faces), 2)


def hemisphere(subdiv: int, radius: float = 1.0) -> ImmersedMesh:
    """Upper unit hemisphere from the subdivided octahedron.

    The boundary circle is made of mesh edges, so the equator is resolved
    exactly at every level.
    """
    verts = [np.array(p, float) for p in [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0), (0, 0, 1)]]
    faces = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]
    verts, faces = _subdivide_sphere(verts, faces, subdiv)
    v = np.array(verts)
    v[np.abs(v[:, 2]) < 1e-14, 2] = 0.0
    return ImmersedMesh(v * radius, np.array(faces), 2)


def grid(nx: int, ny: int, lx: float = 1.0, ly: float = 1.0, ambient: int = 2) -> ImmersedMesh:
    """Triangulated rectangle ``[0, lx] x [0, ly]`` with ``nx * ny`` squares."""
    if nx < 1 or ny < 1:
        raise ValueError("grid needs at least one cell per axis")
    xs = np.linspace(0.0, lx, nx + 1)
    ys = np.linspace(0.0, ly, ny + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    v = np.zeros(((nx + 1) * (ny + 1), ambient))
    v[:, 0] = X.ravel()
    v[:, 1] = Y.ravel()
    idx = lambda i, j: i * (ny + 1) + j  # noqa: E731
    cells = []
    for i in range(nx):
        for j in range(ny):
            a, b, c, d = idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)
            cells += [(a, b, c), (a, c, d)]
    return ImmersedMesh(v, np.array(cells), 2)


_KUHN = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]


def tetgrid(nx: int, ny: Optional[int] = None, nz: Optional[int] = None, lengths=(1.0, 1.0, 1.0)) -> ImmersedMesh:
    """Kuhn (6 tetrahedra per cube) subdivision of a box."""
    ny = nx if ny is None else ny
    nz = nx if nz is None else nz
    ns = (nx, ny, nz)
    axes = [np.linspace(0.0, L, k + 1) for L, k in zip(lengths, ns)]
    X, Y, Z = np.meshgrid(*axes, indexing="ij")
    v = np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=1)
    idx = lambda i, j, k: (i * (ny + 1) + j) * (nz + 1) + k  # noqa: E731
    cells = []
    for i in range(nx):
        for j in range(ny):
            for k in range(nz):
                for perm in _KUHN:
                    p = [i, j, k]
                    tet = [idx(*p)]
                    for ax in perm:
                        p[ax] += 1
                        tet.append(idx(*p))
                    cells.append(tet)
    cells = np.array(cells)
    # fix orientation to positive
    E = np.stack([v[cells[:, a]] - v[cells[:, 0]] for a in (1, 2, 3)], axis=2)
    neg = np.linalg.det(E) < 0
    cells[neg, 1], cells[neg, 2] = cells[neg, 2].copy(), cells[neg, 1].copy()
    return ImmersedMesh(v, cells, 3)


def disk_mesh(rings: int, radius: float = 1.0) -> ImmersedMesh:
    """Disk triangulation from concentric rings of 6*i points."""
    from scipy.spatial import Delaunay

    pts = [(0.0, 0.0)]
    for i in range(1, rings + 1):
        r = radius * i / rings
        for j in range(6 * i):
            a = 2.0 * math.pi * j / (6 * i)
            pts.append((r * math.cos(a), r * math.sin(a)))
    p = np.array(pts)
    tri = Delaunay(p).simplices.copy()
    E = np.stack([p[tri[:, a]] - p[tri[:, 0]] for a in (1, 2)], axis=2)
    neg = np.linalg.det(E) < 0
    tri[neg, 1], tri[neg, 2] = tri[neg, 2].copy(), tri[neg, 1].copy()
    # sort for a deterministic cell order independent of the triangulator
    tri = tri[np.lexsort(tri.T[::-1])]
    return ImmersedMesh(p, tri, 2)


# ---------------------------------------------------------------------------
# Operators


@dataclass
class DiscreteOperators:
    """P1 stiffness, Galerkin mass and lumped (diagonal) mass of a mesh."""

    stiffness: sp.csr_matrix
    mass: sp.csr_matrix
    lumped: np.ndarray
    cell_volumes: np.ndarray

    @property
    def volume(self) -> float:
        return float(self.cell_volumes.sum())


def _lumped_triangles(E: np.ndarray, vol: np.ndarray, cells: np.ndarray, nverts: int) -> np.ndarray:
    # mixed Voronoi areas: circumcentric where every angle is non-obtuse,
    # area/2 for the obtuse vertex and area/4 for the others otherwise
    out = np.zeros(nverts)
    for c in range(len(cells)):
        p = [np.zeros(E.shape[1]), E[c, :, 0], E[c, :, 1]]
        area = vol[c]
        dots = []
        for a in range(3):
            u = p[(a + 1) % 3] - p[a]
            w = p[(a + 2) % 3] - p[a]
            dots.append(float(u @ w))
        obtuse = [d < 0 for d in dots]
        if any(obtuse):
            for a in range(3):
                out[cells[c, a]] += area / 2.0 if obtuse[a] else area / 4.0
            continue
        for a in range(3):
            # vertex a shares the opposite-angle cotangent weights with its two edges
            b, d = (a + 1) % 3, (a + 2) % 3
            cot_b = dots[b] / (2.0 * area)
            cot_d = dots[d] / (2.0 * area)
            l_ab = float(np.sum((p[b] - p[a]) ** 2))
            l_ad = float(np.sum((p[d] - p[a]) ** 2))
            out[cells[c, a]] += (l_ab * cot_d + l_ad * cot_b) / 8.0
    return out


def assemble_operators(mesh: ImmersedMesh) -> DiscreteOperators:
    """Assemble the P1 stiffness and mass matrices.

    Local stiffness is ``vol * D G^{-1} D^T`` with ``G`` the Gram matrix of the
    cell edge vectors, which works for any intrinsic dimension and ambient
    space.  Cells are visited in index order.
    """
    n = mesh.intrinsic_dim
    cells = mesh.cells
    E, G, vol = _cell_geometry(mesh.vertices, cells)
    if np.any(vol <= 0):
        raise DegenerateCell(f"cell {int(np.flatnonzero(vol <= 0)[0])} has zero volume")
    D = np.vstack([-np.ones((1, n)), np.eye(n)])
    Ginv = np.linalg.inv(G)
    S = vol[:, None, None] * np.einsum("ai,cij,bj->cab", D, Ginv, D)
    Mloc = (np.ones((n + 1, n + 1)) + np.eye(n + 1)) / ((n + 1) * (n + 2))
    rows = np.repeat(cells, n + 1, axis=1).ravel()
    cols = np.tile(cells, (1, n + 1)).ravel()
    N = mesh.num_vertices
    K = sp.coo_matrix((S.ravel(), (rows, cols)), shape=(N, N)).tocsr()
    M = sp.coo_matrix(((vol[:, None, None] * Mloc).ravel(), (rows, cols)), shape=(N, N)).tocsr()
    K = 0.5 * (K + K.T)
    if n == 2:
        lumped = _lumped_triangles(E, vol, cells, N)
    else:
        lumped = np.zeros(N)
        np.add.at(lumped, cells.ravel(), np.repeat(vol / (n + 1), n + 1))
    return DiscreteOperators(K.tocsr(), M, lumped, vol)


# ---------------------------------------------------------------------------
# Curvature


@dataclass
class MeshCurvature:
    """Mean-curvature vectors at interior vertices and their summary."""

    interior: np.ndarray
    h_vectors: np.ndarray
    summary: CurvatureSummary

    @property
    def h_norms(self) -> np.ndarray:
        return np.linalg.norm(self.h_vectors, axis=1)


def discrete_mean_curvature(mesh: ImmersedMesh, ops: Optional[DiscreteOperators] = None) -> MeshCurvature:
    """Mean curvature from Delta X = n H with the lumped mass.

    Boundary vertices are skipped; the L^n norm integrates over interior
    lumped masses only.

    Raises
    ------
    EmptyInterior
        If every vertex lies on the boundary.
    """
    if ops is None:
        ops = assemble_operators(mesh)
    interior = mesh.interior_vertices
    if len(interior) == 0:
        raise EmptyInterior("mesh has no interior vertices")
    n = mesh.intrinsic_dim
    KX = ops.stiffness @ mesh.vertices
    H = -KX[interior] / (n * ops.lumped[interior, None])
    norms = np.linalg.norm(H, axis=1)
    mv = ops.lumped[interior]
    h_sup = float(norms.max())
    h_ln = float(math.fsum((norms**n * mv).tolist()) ** (1.0 / n))
    return MeshCurvature(interior, H, CurvatureSummary(h_sup, h_ln, ops.volume))


def trace_identity(mesh: ImmersedMesh, ops: Optional[DiscreteOperators] = None) -> float:
    """Sum over coordinates of X_a^T K X_a (the discrete total |grad X|^2)."""
    if ops is None:
        ops = assemble_operators(mesh)
    X = mesh.vertices
    return float(np.einsum("ia,ia->", X, ops.stiffness @ X))


def _sin_power_integral(m: int, theta: float) -> float:
    # I_m = int_0^theta sin^m; I_m = (-sin^{m-1} cos + (m-1) I_{m-2}) / m
    if m == 0:
        return theta
    if m == 1:
        return 1.0 - math.cos(theta)
    s, c = math.sin(theta), math.cos(theta)
    return (-(s ** (m - 1)) * c + (m - 1) * _sin_power_integral(m - 2, theta)) / m


def curvature_summary_analytic(geom) -> CurvatureSummary:
    """Exact curvature summary for flat boxes and balls and for spherical caps.

    Raises
    ------
    UnsupportedGeometry
        For mesh geometries; use :func:`discrete_mean_curvature`.
    """
    if isinstance(geom, Box):
        return CurvatureSummary(0.0, 0.0, math.prod(geom.lengths))
    if isinstance(geom, EuclideanBall):
        n = geom.n
        vol = math.pi ** (n / 2.0) / gamma_fn(n / 2.0 + 1.0) * geom.radius**n
        return CurvatureSummary(0.0, 0.0, vol)
    if isinstance(geom, SphericalCap):
        n, R = geom.sphere_dim, geom.sphere_radius
        vol = R**n * sphere_area(n - 1) * _sin_power_integral(n - 1, geom.cap_angle)
        return CurvatureSummary(1.0 / R, vol ** (1.0 / n) / R, vol)
    raise UnsupportedGeometry(
        f"no analytic curvature for {getattr(geom, 'variant', type(geom).__name__)}; use the mesh path"
    )
