"""Simplicial meshes for intervals and axis-aligned rectangles.

Meshes carry everything the assembly kernels need: vertex coordinates,
element connectivity, boundary flags, per-element measures, the constant
P1 basis gradients on each element, and a fixed Gauss quadrature rule.
All arrays are frozen (non-writeable) once the mesh is built.

Interval meshes are uniform partitions of (a, b).  Rectangle meshes are
structured triangulations: each grid cell is split into two triangles
along the cell diagonal, so every interior grid vertex is a free degree
of freedom and the piecewise-linear space is nested under bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Mesh",
    "build_interval_mesh",
    "build_rectangle_mesh",
    "refine_structured",
    "coarsen_structured",
    "gauss_points_interval",
    "gauss_points_triangle",
]


def gauss_points_interval(order: int):
    """Gauss-Legendre nodes/weights on the reference interval [0, 1].

    The returned rule integrates polynomials of degree >= `order`
    exactly (an n-point rule is exact through degree 2n - 1).
    """
    if order < 1:
        raise ValueError("quadrature order must be at least 1")
    npts = (order + 2) // 2
    t, w = np.polynomial.legendre.leggauss(npts)
    return (t + 1.0) / 2.0, w / 2.0


# Symmetric triangle rules on the reference triangle {xi, eta >= 0, xi + eta <= 1}.
# Barycentric points with weights summing to 1 (scaled by the area later).
# Degree 2: 3-point midpoint-style rule; degree 4: 6-point rule; degree 5:
# 7-point rule.  Coordinates are the classical Strang/Cowper values.
_TRI_RULES = {
    1: ([(1 / 3, 1 / 3, 1 / 3)], [1.0]),
    2: (
        [(2 / 3, 1 / 6, 1 / 6), (1 / 6, 2 / 3, 1 / 6), (1 / 6, 1 / 6, 2 / 3)],
        [1 / 3, 1 / 3, 1 / 3],
    ),
    4: (
        [
            (0.816847572980459, 0.091576213509771, 0.091576213509771),
            (0.091576213509771, 0.816847572980459, 0.091576213509771),
            (0.091576213509771, 0.091576213509771, 0.816847572980459),
            (0.108103018168070, 0.445948490915965, 0.445948490915965),
            (0.445948490915965, 0.108103018168070, 0.445948490915965),
            (0.445948490915965, 0.445948490915965, 0.108103018168070),
        ],
        [
            0.109951743655322,
            0.109951743655322,
            0.109951743655322,
            0.223381589678011,
            0.223381589678011,
            0.223381589678011,
        ],
    ),
    5: (
        [
            (1 / 3, 1 / 3, 1 / 3),
            (0.797426985353087, 0.101286507323456, 0.101286507323456),
            (0.101286507323456, 0.797426985353087, 0.101286507323456),
            (0.101286507323456, 0.101286507323456, 0.797426985353087),
            (0.059715871789770, 0.470142064105115, 0.470142064105115),
            (0.470142064105115, 0.059715871789770, 0.470142064105115),
            (0.470142064105115, 0.470142064105115, 0.059715871789770),
        ],
        [
            0.225,
            0.125939180544827,
            0.125939180544827,
            0.125939180544827,
            0.132394152788506,
            0.132394152788506,
            0.132394152788506,
        ],
    ),
}


def gauss_points_triangle(order: int):
    """Barycentric points and weights (summing to 1) of degree >= `order`."""
    if order < 1:
        raise ValueError("quadrature order must be at least 1")
    for deg in sorted(_TRI_RULES):
        if deg >= order:
            pts, w = _TRI_RULES[deg]
            return np.asarray(pts, dtype=float), np.asarray(w, dtype=float)
    raise ValueError(f"no triangle quadrature rule of order {order} available (max 5)")


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Mesh:
    """Conforming P1 mesh of an interval or rectangle.

    Attributes
    ----------
    ndim : 1 or 2.
    vertices : (nv, ndim) coordinates.
    elements : (ne, ndim + 1) vertex indices per simplex.
    is_boundary : (nv,) flags for vertices on the geometric boundary.
    free_vertices : (nf,) indices of interior vertices, in vertex order.
    dof_index : (nv,) free-dof index per vertex, -1 on the boundary.
    measures : (ne,) element lengths/areas, all positive.
    basis_gradients : (ne, ndim + 1, ndim) constant gradient of each local
        P1 basis function on each element.
    quad_points : (ne, nq, ndim) physical quadrature points.
    quad_weights : (ne, nq) physical quadrature weights (include measures).
    basis_at_quad : (nq, ndim + 1) reference P1 basis values at the rule nodes.
    quad_order : polynomial exactness degree of the rule.
    structure : construction record, used for dyadic coarsening.
    """

    ndim: int
    vertices: np.ndarray
    elements: np.ndarray
    is_boundary: np.ndarray
    free_vertices: np.ndarray
    dof_index: np.ndarray
    measures: np.ndarray
    basis_gradients: np.ndarray
    quad_points: np.ndarray
    quad_weights: np.ndarray
    basis_at_quad: np.ndarray
    quad_order: int
    structure: tuple = field(default=())

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_elements(self) -> int:
        return self.elements.shape[0]

    @property
    def n_free(self) -> int:
        return self.free_vertices.shape[0]

    @property
    def domain_measure(self) -> float:
        return math.fsum(self.measures.tolist())

    def free_coordinates(self) -> np.ndarray:
        """Coordinates of the free vertices, shape (nf, ndim)."""
        return self.vertices[self.free_vertices]

    def quad_points_flat(self) -> np.ndarray:
        """All quadrature points as one (ne * nq, ndim) array."""
        return self.quad_points.reshape(-1, self.ndim)

    def quad_weights_flat(self) -> np.ndarray:
        return self.quad_weights.reshape(-1)


def _finish_mesh(ndim, vertices, elements, is_boundary, measures, grads,
                 qpts, qw, basis_at_quad, quad_order, structure) -> Mesh:
    if np.any(measures <= 0.0):
        raise ValueError("mesh has a non-positive element measure")
    dof_index = np.full(vertices.shape[0], -1, dtype=int)
    free = np.flatnonzero(~is_boundary)
    dof_index[free] = np.arange(free.size)
    return Mesh(
        ndim=ndim,
        vertices=_freeze(vertices),
        elements=_freeze(elements),
        is_boundary=_freeze(is_boundary),
        free_vertices=_freeze(free),
        dof_index=_freeze(dof_index),
        measures=_freeze(measures),
        basis_gradients=_freeze(grads),
        quad_points=_freeze(qpts),
        quad_weights=_freeze(qw),
        basis_at_quad=_freeze(basis_at_quad),
        quad_order=quad_order,
        structure=structure,
    )


def build_interval_mesh(a: float, b: float, n: int, quad_order: int = 4) -> Mesh:
    """Uniform mesh of (a, b) with n elements and n - 1 free vertices."""
    if not (a < b):
        raise ValueError(f"interval requires a < b, got a={a}, b={b}")
    if n < 2:
        raise ValueError(f"interval mesh needs at least 2 elements, got n={n}")
    xs = np.linspace(a, b, n + 1)
    vertices = xs.reshape(-1, 1)
    elements = np.column_stack([np.arange(n), np.arange(1, n + 1)])
    is_boundary = np.zeros(n + 1, dtype=bool)
    is_boundary[0] = is_boundary[-1] = True
    h = (b - a) / n
    measures = np.full(n, h)

    grads = np.empty((n, 2, 1))
    grads[:, 0, 0] = -1.0 / h
    grads[:, 1, 0] = 1.0 / h

    xi, w = gauss_points_interval(quad_order)
    qpts = (vertices[elements[:, 0]][:, None, :]
            + xi[None, :, None] * (vertices[elements[:, 1]] - vertices[elements[:, 0]])[:, None, :])
    qw = np.broadcast_to(w[None, :] * h, (n, xi.size)).copy()
    basis_at_quad = np.column_stack([1.0 - xi, xi])

    return _finish_mesh(1, vertices, elements, is_boundary, measures, grads,
                        qpts, qw, basis_at_quad, quad_order,
                        ("interval", float(a), float(b), int(n)))


def build_rectangle_mesh(ax: float, bx: float, ay: float, by: float,
                         nx: int, ny: int, quad_order: int = 4) -> Mesh:
    """Structured triangulation of (ax, bx) x (ay, by).

    Each of the nx * ny grid cells is split along its diagonal into two
    triangles, giving 2 * nx * ny elements and (nx - 1) * (ny - 1) free
    vertices.  All diagonals are parallel, so bisecting nx and ny yields
    a nested refinement.
    """
    if not (ax < bx and ay < by):
        raise ValueError(f"rectangle requires ax < bx and ay < by, got "
                         f"({ax}, {bx}) x ({ay}, {by})")
    if nx < 2 or ny < 2:
        raise ValueError(f"rectangle mesh needs nx, ny >= 2, got nx={nx}, ny={ny}")
    xs = np.linspace(ax, bx, nx + 1)
    ys = np.linspace(ay, by, ny + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    vertices = np.column_stack([X.ravel(), Y.ravel()])

    def vid(i, j):
        return i * (ny + 1) + j

    tris = []
    for i in range(nx):
        for j in range(ny):
            v00, v10 = vid(i, j), vid(i + 1, j)
            v01, v11 = vid(i, j + 1), vid(i + 1, j + 1)
            # diagonal v00 -- v11
            tris.append((v00, v10, v11))
            tris.append((v00, v11, v01))
    elements = np.asarray(tris, dtype=int)

    ii, jj = np.divmod(np.arange(vertices.shape[0]), ny + 1)
    is_boundary = (ii == 0) | (ii == nx) | (jj == 0) | (jj == ny)

    v0 = vertices[elements[:, 0]]
    e1 = vertices[elements[:, 1]] - v0
    e2 = vertices[elements[:, 2]] - v0
    det = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
    measures = np.abs(det) / 2.0

    # gradients of barycentric coordinates: solve J^T grad = ref-grad
    grads = np.empty((elements.shape[0], 3, 2))
    inv_det = 1.0 / det
    # J = [e1; e2] rows; J^{-T} columns
    grads[:, 1, 0] = e2[:, 1] * inv_det
    grads[:, 1, 1] = -e2[:, 0] * inv_det
    grads[:, 2, 0] = -e1[:, 1] * inv_det
    grads[:, 2, 1] = e1[:, 0] * inv_det
    grads[:, 0, :] = -grads[:, 1, :] - grads[:, 2, :]

    bary, w = gauss_points_triangle(quad_order)
    # physical points: sum_k bary_k * vertex_k
    qpts = np.einsum("qk,ekd->eqd", bary, vertices[elements])
    qw = w[None, :] * measures[:, None]
    basis_at_quad = bary.copy()

    return _finish_mesh(2, vertices, elements, is_boundary, measures, grads,
                        qpts, qw, basis_at_quad, quad_order,
                        ("rectangle", float(ax), float(bx), float(ay), float(by),
                         int(nx), int(ny)))


def refine_structured(mesh: Mesh) -> Mesh:
    """One dyadic bisection of a structured mesh (nested refinement)."""
    s = mesh.structure
    if not s:
        raise ValueError("mesh has no construction record; cannot refine")
    if s[0] == "interval":
        _, a, b, n = s
        return build_interval_mesh(a, b, 2 * n, quad_order=mesh.quad_order)
    if s[0] == "rectangle":
        _, ax, bx, ay, by, nx, ny = s
        return build_rectangle_mesh(ax, bx, ay, by, 2 * nx, 2 * ny,
                                    quad_order=mesh.quad_order)
    raise ValueError(f"unknown mesh structure {s[0]!r}")


def coarsen_structured(mesh: Mesh) -> Mesh | None:
    """One dyadic coarsening of a structured mesh, or None if not possible."""
    s = mesh.structure
    if not s:
        return None
    if s[0] == "interval":
        _, a, b, n = s
        if n % 2 == 0 and n // 2 >= 2:
            return build_interval_mesh(a, b, n // 2, quad_order=mesh.quad_order)
        return None
    if s[0] == "rectangle":
        _, ax, bx, ay, by, nx, ny = s
        if nx % 2 == 0 and ny % 2 == 0 and nx // 2 >= 2 and ny // 2 >= 2:
            return build_rectangle_mesh(ax, bx, ay, by, nx // 2, ny // 2,
                                        quad_order=mesh.quad_order)
        return None
    return None
