"""Discrete eigenvalue oracles.

``fem_dirichlet_eigs`` solves the P1 finite-element Dirichlet problem on a
simplicial mesh by Cholesky reduction and a dense symmetric eigensolve.
``fd_plate_eigs`` solves the clamped plate on boxes (1-3 dimensions) and on
the disk with the 13-point biharmonic stencil, and extrapolates in h.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import (
    DomainError,
    EmptyInterior,
    ExtrapolationOrderWarning,
    GridTooCoarse,
    NotOrthonormal,
    SingularMass,
    TooManyDofs,
    UnsupportedGeometry,
)
from .mesh import ImmersedMesh, assemble_operators
from .types import Box, EuclideanBall, Operator, Spectrum, validate_spectrum

log = logging.getLogger(__name__)

#: Largest interior DOF count accepted by the dense FEM eigensolver.
MAX_DENSE_DOFS = 3000
#: Below this size the FD operators are solved densely.
DENSE_FD_LIMIT = 600
#: Extrapolation order assumed by Richardson, and the accepted measured range.
ASSUMED_ORDER = 2.0
ORDER_RANGE = (1.5, 2.5)


@dataclass
class FDLevel:
    """One grid of the finite-difference plate solve.

    ``vectors`` are normalised so that ``weight * v.T @ v = 1``; ``weight`` is
    the cell volume h^d.  ``laplacian`` is the Dirichlet 5/7-point Laplacian
    on the same unknowns (None where it is not assembled).
    """

    h: float
    values: np.ndarray
    vectors: np.ndarray
    operator: sp.spmatrix
    weight: float
    laplacian: Optional[sp.spmatrix] = None


@dataclass
class EigenSolveResult:
    """Eigenpairs from one of the discrete oracles.

    For the FD plate solver ``spectrum`` carries the extrapolated values and
    ``levels`` the raw per-grid results; ``eigenvectors`` are those of the
    finest grid.
    """

    spectrum: Spectrum
    eigenvectors: np.ndarray
    residual_norms: List[float]
    metadata: dict = field(default_factory=dict)
    levels: List[FDLevel] = field(default_factory=list)
    mass: Optional[np.ndarray] = None


# ---------------------------------------------------------------------------
# P1 finite elements


def fem_dirichlet_eigs(mesh: ImmersedMesh, count: int) -> EigenSolveResult:
    """Smallest Dirichlet Laplacian eigenpairs of a mesh.

    Boundary vertices are constrained to zero.  The interior blocks K_II,
    M_II are reduced with the Cholesky factor of M_II and the resulting
    symmetric matrix is diagonalised densely.  Eigenvectors are
    M_II-orthonormal.

    Raises
    ------
    EmptyInterior, TooManyDofs, SingularMass
    """
    interior = mesh.interior_vertices
    nint = len(interior)
    if nint == 0:
        raise EmptyInterior("mesh has no interior vertices")
    if nint > MAX_DENSE_DOFS:
        raise TooManyDofs(f"{nint} interior DOF exceed the dense limit {MAX_DENSE_DOFS}")
    if not 1 <= count <= nint:
        raise DomainError(f"count must be in [1, {nint}], got {count}")
    ops = assemble_operators(mesh)
    K = ops.stiffness[interior][:, interior].toarray()
    M = ops.mass[interior][:, interior].toarray()
    try:
        L = sla.cholesky(M, lower=True)
    except sla.LinAlgError:
        raise SingularMass("interior mass matrix is not positive definite") from None
    A = sla.solve_triangular(L, sla.solve_triangular(L, K, lower=True).T, lower=True)
    A = 0.5 * (A + A.T)
    lam, Y = sla.eigh(A, subset_by_index=[0, count - 1])
    V = sla.solve_triangular(L.T, Y, lower=False)
    res = []
    for i in range(count):
        v = V[:, i]
        r = K @ v - lam[i] * (M @ v)
        res.append(float(np.linalg.norm(r) / (abs(lam[i]) * np.linalg.norm(v))))
    spec = validate_spectrum(
        Spectrum(
            Operator.LAPLACIAN,
            mesh.intrinsic_dim,
            mesh.ambient_dim,
            tuple(float(x) for x in lam),
            f"fem_p1(nv={mesh.num_vertices},ncell={len(mesh.cells)})",
        )
    )
    return EigenSolveResult(
        spec,
        V,
        res,
        {"interior": interior, "dofs": nint},
        mass=M,
    )


# ---------------------------------------------------------------------------
# Finite-difference clamped plate


def _d2(N: int, h: float) -> sp.csr_matrix:
    """1-d Dirichlet second difference on N - 1 interior nodes."""
    m = N - 1
    return sp.diags([np.ones(m - 1), -2.0 * np.ones(m), np.ones(m - 1)], [-1, 0, 1], format="csr") / h**2


def _d4(N: int, h: float) -> sp.csr_matrix:
    """1-d clamped fourth difference; ghost values mirror the first interior node."""
    m = N - 1
    main = 6.0 * np.ones(m)
    main[0] = main[-1] = 7.0
    return (
        sp.diags(
            [np.ones(m - 2), -4.0 * np.ones(m - 1), main, -4.0 * np.ones(m - 1), np.ones(m - 2)],
            [-2, -1, 0, 1, 2],
            format="csr",
        )
        / h**4
    )


def _kron_axis(mats: Sequence[sp.spmatrix], sizes: Sequence[int]) -> sp.csr_matrix:
    out = None
    for i, s in enumerate(sizes):
        term = mats[i] if mats[i] is not None else sp.identity(s, format="csr")
        out = term if out is None else sp.kron(out, term, format="csr")
    return out


def _box_operators(lengths: Sequence[float], h: float):
    Ns = [int(round(L / h)) for L in lengths]
    for N in Ns:
        if N - 1 < 5:
            raise GridTooCoarse(f"grid_h={h} leaves {N - 1} interior nodes on an axis (need >= 5)")
    hs = [L / N for L, N in zip(lengths, Ns)]
    sizes = [N - 1 for N in Ns]
    d = len(lengths)
    A = None
    Lap = None
    for j in range(d):
        mats = [None] * d
        mats[j] = _d4(Ns[j], hs[j])
        term = _kron_axis(mats, sizes)
        A = term if A is None else A + term
        mats = [None] * d
        mats[j] = _d2(Ns[j], hs[j])
        lt = _kron_axis(mats, sizes)
        Lap = lt if Lap is None else Lap + lt
    for i in range(d):
        for j in range(i + 1, d):
            mats = [None] * d
            mats[i] = _d2(Ns[i], hs[i])
            mats[j] = _d2(Ns[j], hs[j])
            A = A + 2.0 * _kron_axis(mats, sizes)
    weight = float(np.prod(hs))
    return A.tocsr(), Lap.tocsr(), weight, max(hs)


# 13-point biharmonic stencil (times h^4)
_STENCIL13 = [
    ((0, 0), 20.0),
    ((1, 0), -8.0), ((-1, 0), -8.0), ((0, 1), -8.0), ((0, -1), -8.0),
    ((1, 1), 2.0), ((1, -1), 2.0), ((-1, 1), 2.0), ((-1, -1), 2.0),
    ((2, 0), 1.0), ((-2, 0), 1.0), ((0, 2), 1.0), ((0, -2), 1.0),
]  # fmt: skip


def _ghost_weights(offsets: Sequence[float], t: float, target: float) -> np.ndarray:
    """Weights expressing p(target) through nodal values, for the polynomial
    interpolating the nodes at ``offsets`` with p(t) = p'(t) = 0."""
    q = len(offsets) + 2
    rows = [[x**j for j in range(q)] for x in offsets]
    rows.append([t**j for j in range(q)])
    rows.append([j * t ** (j - 1) if j else 0.0 for j in range(q)])
    V = np.array(rows)
    tv = np.array([target**j for j in range(q)])
    return np.linalg.solve(V.T, tv)[: len(offsets)]


def _ray_exit(x0: float, y0: float, dx: float, dy: float, R: float) -> float:
    a = dx * dx + dy * dy
    b = 2.0 * (x0 * dx + y0 * dy)
    c = x0 * x0 + y0 * y0 - R * R
    return (-b + math.sqrt(b * b - 4.0 * a * c)) / (2.0 * a)


def _disk_operator(R: float, h: float):
    # Ghost values outside the disk come from a 1-d polynomial along the
    # stencil direction through the interior nodes and the boundary crossing,
    # where both the value and the directional derivative vanish.
    Nr = int(math.floor(R / h))
    if Nr - 1 < 2 or 2 * Nr - 1 < 5:
        raise GridTooCoarse(f"grid_h={h} leaves fewer than 5 interior nodes across the disk")
    N = Nr + 2
    inside = lambda i, j: (i * h) ** 2 + (j * h) ** 2 < R * R * (1.0 - 1e-12)  # noqa: E731
    idx = {}
    for i in range(-N, N + 1):
        for j in range(-N, N + 1):
            if inside(i, j):
                idx[(i, j)] = len(idx)
    rows, cols, vals = [], [], []
    h4 = h**4
    for (i, j), p in idx.items():
        for (di, dj), w in _STENCIL13:
            q = (i + di, j + dj)
            if q in idx:
                rows.append(p)
                cols.append(idx[q])
                vals.append(w / h4)
                continue
            m = max(abs(di), abs(dj))
            ui = (di > 0) - (di < 0)
            uj = (dj > 0) - (dj < 0)
            t = _ray_exit(i * h, j * h, ui * h, uj * h, R)
            offs = [0.0]
            nodes = [p]
            back = (i - ui, j - uj)
            if back in idx:
                offs.append(-1.0)
                nodes.append(idx[back])
            if m == 2 and (i + ui, j + uj) in idx:
                offs.append(1.0)
                nodes.append(idx[(i + ui, j + uj)])
            for node, g in zip(nodes, _ghost_weights(offs, t, float(m))):
                rows.append(p)
                cols.append(node)
                vals.append(w * g / h4)
    n = len(idx)
    A = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    # 5-point Dirichlet Laplacian (zero outside) for diagnostics
    lr, lc, lv = [], [], []
    for (i, j), p in idx.items():
        lr.append(p)
        lc.append(p)
        lv.append(-4.0 / h**2)
        for q in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if q in idx:
                lr.append(p)
                lc.append(idx[q])
                lv.append(1.0 / h**2)
    Lap = sp.csr_matrix((lv, (lr, lc)), shape=(n, n))
    return A, Lap, h * h, n


def _smallest_eigs(A: sp.spmatrix, count: int, symmetric: bool):
    n = A.shape[0]
    if count >= n:
        raise DomainError(f"count {count} must be below the number of unknowns {n}")
    if n <= DENSE_FD_LIMIT:
        dense = A.toarray()
        if symmetric:
            lam, V = sla.eigh(0.5 * (dense + dense.T))
        else:
            lam, V = sla.eig(dense)
            lam, V = lam.real, V.real
    else:
        v0 = np.random.default_rng(0).standard_normal(n)
        ncv = min(n - 1, max(2 * count + 1, 20))
        if symmetric:
            lam, V = spla.eigsh(A.tocsc(), k=count, sigma=0.0, which="LM", v0=v0, ncv=ncv)
        else:
            lam, V = spla.eigs(A.tocsc(), k=count, sigma=0.0, which="LM", v0=v0, ncv=ncv)
            lam, V = lam.real, V.real
    order = np.argsort(lam)[:count]
    return lam[order], V[:, order]


def _fd_level(domain, h: float, count: int) -> FDLevel:
    if isinstance(domain, Box):
        A, Lap, weight, hmax = _box_operators(domain.lengths, h)
        lam, V = _smallest_eigs(A, count, symmetric=True)
    else:
        A, Lap, weight, _ = _disk_operator(domain.radius, h)
        hmax = h
        lam, V = _smallest_eigs(A, count, symmetric=False)
    for i in range(V.shape[1]):
        nrm = math.sqrt(weight * float(V[:, i] @ V[:, i]))
        V[:, i] /= nrm
        # fix the sign for reproducibility
        k = int(np.argmax(np.abs(V[:, i])))
        if V[k, i] < 0:
            V[:, i] = -V[:, i]
    return FDLevel(hmax, lam, V, A, weight, Lap)


def _normalise_domain(domain):
    if isinstance(domain, Box):
        if not 1 <= domain.dim <= 3:
            raise UnsupportedGeometry("finite-difference boxes must have 1 to 3 axes")
        return domain
    if isinstance(domain, EuclideanBall):
        if domain.n != 2:
            raise UnsupportedGeometry("the finite-difference ball solver covers the disk (n=2) only")
        return domain
    raise UnsupportedGeometry(f"fd_plate_eigs supports boxes and the disk, not {domain!r}")


def fd_plate_eigs(
    domain: Union[Box, EuclideanBall],
    grid_h: float,
    count: int,
    levels: int = 2,
) -> EigenSolveResult:
    """Clamped-plate eigenvalues by finite differences with Richardson extrapolation.

    Parameters
    ----------
    domain : Box or EuclideanBall
        A box with 1 to 3 axes or the disk (``EuclideanBall(2, R)``).
    grid_h : float
        Coarsest grid spacing; the solve is repeated at ``grid_h / 2**j`` for
        ``j < levels``.
    count : int
        Number of eigenvalues.
    levels : int
        Number of grids (2 or more).  With three or more, the observed order
        is measured from the last three; a warning is issued if it falls
        outside [1.5, 2.5].

    Returns
    -------
    EigenSolveResult
        ``spectrum`` holds the extrapolated values (from the two finest
        grids, assuming order 2); ``levels`` holds the raw grids.

    Raises
    ------
    GridTooCoarse
        If the coarsest grid has fewer than 5 interior nodes per axis.
    """
    domain = _normalise_domain(domain)
    if levels < 2:
        raise DomainError("Richardson extrapolation needs at least two levels")
    grids = [_fd_level(domain, grid_h / 2**j, count) for j in range(levels)]
    a, b = grids[-2].values, grids[-1].values
    ratio = 2.0**ASSUMED_ORDER
    ext = (ratio * b - a) / (ratio - 1.0)
    meta = {"h": [g.h for g in grids], "raw": [g.values.tolist() for g in grids]}
    if levels >= 3:
        c0 = grids[-3].values[0]
        num = c0 - a[0]
        den = a[0] - b[0]
        order = math.log2(num / den) if num / den > 0 else float("nan")
        meta["measured_order"] = order
        log.info("fd plate: observed convergence order %.3f", order)
        if not ORDER_RANGE[0] <= order <= ORDER_RANGE[1]:
            warnings.warn(
                f"observed extrapolation order {order:.3f} outside {ORDER_RANGE}",
                ExtrapolationOrderWarning,
                stacklevel=2,
            )
    ext = np.sort(ext)
    fine = grids[-1]
    res = []
    for i in range(fine.vectors.shape[1]):
        v = fine.vectors[:, i]
        r = fine.operator @ v - fine.values[i] * v
        res.append(float(np.linalg.norm(r) / (abs(fine.values[i]) * np.linalg.norm(v))))
    n = domain.dim
    spec = validate_spectrum(
        Spectrum(
            Operator.BILAPLACIAN,
            n,
            n,
            tuple(float(x) for x in ext),
            f"fd_plate({domain.variant},h={grid_h!r},levels={levels})",
        )
    )
    return EigenSolveResult(spec, fine.vectors, res, meta, grids)


def rayleigh_check(result: EigenSolveResult, level: int = -1) -> List[float]:
    """Ratios (discrete Dirichlet energy) / Gamma_i^{1/2} for FD plate modes.

    The energy is ``h^d v^T (-Lap_h) v`` for each eigenvector ``v`` of the
    chosen grid, and Gamma_i is that grid's raw eigenvalue.

    Raises
    ------
    NotOrthonormal
        If a vector is zero or not normalised in the grid inner product.
    UnsupportedGeometry
        If the result carries no Laplacian for the level.
    """
    if not result.levels:
        raise UnsupportedGeometry("rayleigh_check needs a finite-difference plate result")
    g = result.levels[level]
    if g.laplacian is None:
        raise UnsupportedGeometry("no discrete Laplacian stored for this level")
    out = []
    for i in range(g.vectors.shape[1]):
        v = g.vectors[:, i]
        nrm = g.weight * float(v @ v)
        if not abs(nrm - 1.0) <= 1e-8:
            raise NotOrthonormal(f"mode {i} has weighted norm {nrm!r}, expected 1")
        energy = -g.weight * float(v @ (g.laplacian @ v))
        out.append(energy / math.sqrt(g.values[i]))
    return out
