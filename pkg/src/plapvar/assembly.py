"""P1 assembly kernels for p-Laplacian energies on simplicial meshes.

Discrete fields store coefficients for free (interior) vertices only;
the homogeneous Dirichlet trace is structural, never enforced by
penalties.  Gradients of P1 fields are constant per element, so the
p-Dirichlet energy (1/p) int |grad u|^p is evaluated exactly.  Zeroth
order integrals (int |u|^p, loads, potential terms) use the mesh's
Gauss rule, which has polynomial exactness degree >= 4 by default.

Scalar reductions accumulate with math.fsum over per-element
contributions, so results do not depend on the iteration order of the
element array (deterministic-summation contract).  Vector assemblies
scatter in a fixed element order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .meshing import Mesh

__all__ = [
    "DiscreteField",
    "DualVector",
    "make_field",
    "zero_field",
    "make_dual",
    "zero_dual",
    "interpolate",
    "dirichlet_energy",
    "plap_residual",
    "lp_integral",
    "lp_residual",
    "pairing",
    "load_vector",
    "stiffness_matrix",
    "values_at_quad",
    "gradients_on_elements",
    "sup_norm",
]

# Elements whose P1 gradient is below this threshold contribute nothing to
# the residual, which keeps |grad u|^(p-2) finite for 1 < p < 2.
GRADIENT_FLOOR = 1e-14


@dataclass(frozen=True)
class DiscreteField:
    """P1 function with zero boundary trace; one coefficient per free vertex."""

    mesh: Mesh
    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.values, dtype=float))
        if v.shape != (self.mesh.n_free,):
            raise ValueError(
                f"field needs {self.mesh.n_free} coefficients, got shape {v.shape}"
            )
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class DualVector:
    """Linear functional on the discrete space, paired via the Euclidean dot."""

    mesh: Mesh
    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.values, dtype=float))
        if v.shape != (self.mesh.n_free,):
            raise ValueError(
                f"dual vector needs {self.mesh.n_free} entries, got shape {v.shape}"
            )
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


def make_field(mesh: Mesh, values) -> DiscreteField:
    return DiscreteField(mesh, np.asarray(values, dtype=float))


def zero_field(mesh: Mesh) -> DiscreteField:
    return DiscreteField(mesh, np.zeros(mesh.n_free))


def make_dual(mesh: Mesh, values) -> DualVector:
    return DualVector(mesh, np.asarray(values, dtype=float))


def zero_dual(mesh: Mesh) -> DualVector:
    return DualVector(mesh, np.zeros(mesh.n_free))


def _check_mesh(mesh: Mesh, u) -> None:
    if u.mesh is not mesh:
        raise ValueError("field/dual vector belongs to a different mesh")


def _check_p(p: float) -> None:
    if not (p > 1.0):
        raise ValueError(f"p must exceed 1, got p={p}")


def _full_values(mesh: Mesh, u: DiscreteField) -> np.ndarray:
    full = np.zeros(mesh.n_vertices)
    full[mesh.free_vertices] = u.values
    return full


def interpolate(mesh: Mesh, fn) -> DiscreteField:
    """Interpolate a callable of the free-vertex coordinates into P1."""
    vals = np.asarray(fn(mesh.free_coordinates()), dtype=float)
    return DiscreteField(mesh, vals)


def gradients_on_elements(mesh: Mesh, u: DiscreteField) -> np.ndarray:
    """Constant gradient of u on each element, shape (ne, ndim)."""
    _check_mesh(mesh, u)
    nodal = _full_values(mesh, u)[mesh.elements]          # (ne, ndim+1)
    return np.einsum("ek,ekd->ed", nodal, mesh.basis_gradients)


def values_at_quad(mesh: Mesh, u: DiscreteField) -> np.ndarray:
    """u evaluated at the quadrature points, shape (ne, nq)."""
    _check_mesh(mesh, u)
    nodal = _full_values(mesh, u)[mesh.elements]
    return nodal @ mesh.basis_at_quad.T


def sup_norm(mesh: Mesh, u: DiscreteField) -> float:
    """max |u| over the mesh; for P1 fields this is the nodal max."""
    _check_mesh(mesh, u)
    if u.values.size == 0:
        return 0.0
    return float(np.max(np.abs(u.values)))


def dirichlet_energy(mesh: Mesh, u: DiscreteField, p: float) -> float:
    """(1/p) int_Omega |grad u|^p, exact for P1 fields."""
    _check_mesh(mesh, u)
    _check_p(p)
    g = gradients_on_elements(mesh, u)
    norms = np.sqrt(np.einsum("ed,ed->e", g, g))
    contrib = mesh.measures * norms ** p
    return math.fsum(contrib.tolist()) / p


def plap_residual(mesh: Mesh, u: DiscreteField, p: float) -> DualVector:
    """Gradient of the p-Dirichlet energy: entries int |grad u|^(p-2) grad u . grad psi_j.

    Elements with |grad u| < 1e-14 contribute zero, which keeps the
    degenerate factor finite for p < 2 (and is the correct limit for
    p >= 2).
    """
    _check_mesh(mesh, u)
    _check_p(p)
    g = gradients_on_elements(mesh, u)
    norms = np.sqrt(np.einsum("ed,ed->e", g, g))
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = np.where(norms >= GRADIENT_FLOOR, norms ** (p - 2.0), 0.0)
    flux = (mesh.measures * factor)[:, None] * g          # (ne, ndim)
    contrib = np.einsum("ed,ekd->ek", flux, mesh.basis_gradients)
    out = np.zeros(mesh.n_vertices)
    np.add.at(out, mesh.elements.ravel(), contrib.ravel())
    return DualVector(mesh, out[mesh.free_vertices])


def lp_integral(mesh: Mesh, u: DiscreteField, p: float) -> float:
    """int_Omega |u|^p by the mesh's Gauss rule (exact for p = 2)."""
    _check_mesh(mesh, u)
    if not (p >= 1.0):
        raise ValueError(f"lp_integral needs p >= 1, got p={p}")
    vals = values_at_quad(mesh, u)
    contrib = np.einsum("eq,eq->e", mesh.quad_weights, np.abs(vals) ** p)
    return math.fsum(contrib.tolist())


def lp_residual(mesh: Mesh, u: DiscreteField, p: float) -> DualVector:
    """Entries int |u|^(p-2) u psi_j dx, with the same rule as lp_integral.

    This is (1/p) times the coefficient gradient of lp_integral, so the
    two stay consistent at stationary points of Rayleigh quotients.
    """
    _check_mesh(mesh, u)
    _check_p(p)
    vals = values_at_quad(mesh, u)
    density = np.sign(vals) * np.abs(vals) ** (p - 1.0)
    weighted = mesh.quad_weights * density               # (ne, nq)
    contrib = weighted @ mesh.basis_at_quad              # (ne, ndim+1)
    out = np.zeros(mesh.n_vertices)
    np.add.at(out, mesh.elements.ravel(), contrib.ravel())
    return DualVector(mesh, out[mesh.free_vertices])


def pairing(h: DualVector, v: DiscreteField) -> float:
    """Duality pairing <h, v> (Euclidean dot of coefficient vectors)."""
    if h.mesh is not v.mesh:
        raise ValueError("pairing requires h and v on the same mesh")
    return float(np.dot(h.values, v.values))


def load_vector(mesh: Mesh, g) -> DualVector:
    """Dual vector with entries int g psi_j dx.

    `g` is a callable of point arrays of shape (m, ndim) returning (m,),
    or a constant.  Non-finite values of g at quadrature points are
    rejected with the offending point named.
    """
    pts = mesh.quad_points_flat()
    if callable(g):
        gv = np.asarray(g(pts), dtype=float)
        gv = np.broadcast_to(gv, (pts.shape[0],)).astype(float)
    else:
        gv = np.full(pts.shape[0], float(g))
    bad = ~np.isfinite(gv)
    if np.any(bad):
        where = pts[np.argmax(bad)]
        raise ValueError(f"load density is not finite at quadrature point {where}")
    gv = gv.reshape(mesh.quad_weights.shape)
    weighted = mesh.quad_weights * gv
    contrib = weighted @ mesh.basis_at_quad
    out = np.zeros(mesh.n_vertices)
    np.add.at(out, mesh.elements.ravel(), contrib.ravel())
    return DualVector(mesh, out[mesh.free_vertices])


def stiffness_matrix(mesh: Mesh) -> sp.csc_matrix:
    """Sparse p=2 stiffness matrix on free dofs: int grad psi_i . grad psi_j.

    Used as the fixed symmetric positive definite metric for descent
    directions; it is not a Riesz identification of residuals.
    """
    ne, nloc = mesh.elements.shape
    local = np.einsum("e,ekd,eld->ekl", mesh.measures,
                      mesh.basis_gradients, mesh.basis_gradients)
    rows = np.repeat(mesh.elements, nloc, axis=1).ravel()
    cols = np.tile(mesh.elements, (1, nloc)).ravel()
    K_full = sp.coo_matrix((local.ravel(), (rows, cols)),
                           shape=(mesh.n_vertices, mesh.n_vertices)).tocsc()
    free = mesh.free_vertices
    return K_full[np.ix_(free, free)].tocsc()


def patch_measures(mesh: Mesh) -> np.ndarray:
    """Measure of the support patch of each free-vertex basis function."""
    out = np.zeros(mesh.n_vertices)
    np.add.at(out, mesh.elements.ravel(),
              np.repeat(mesh.measures, mesh.elements.shape[1]))
    return out[mesh.free_vertices]
