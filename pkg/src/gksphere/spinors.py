"""Spinor fields on S^n as Clifford-module-valued polynomial maps.

The spinor bundle of S^n subset R^{n+1} is trivialized over the ambient space:
fields take values in a fixed fiber R^dim, products of two ambient vectors act
on the fiber through two families of intertwiner matrices L_a, M_a with

    L(u) M(v) + L(v) M(u) = -2 <u,v> Id,
    M(u) L(v) + M(v) L(u) = -2 <u,v> Id,
    M(u)^T = -L(u),

and rho(u.v) := L(u) M(v) realizes the even Clifford algebra of R^{n+1} on the
fiber.  Tangential Clifford multiplication at x is c_x(X) = rho(X.x), and the
round-sphere spinor covariant derivative of a field psi is

    nabla_X psi = D_X psi + (1/2) rho(X.x) psi,

with D the flat ambient derivative.  Two concrete realizations are provided:

* ``SphereSpinorModel.standard(n)`` doubles a minimal Cl_n representation
  (L(u) = gamma(u') - u_{n+1} Id, M(u) = gamma(u') + u_{n+1} Id), giving fiber
  dimensions 4, 8, 16, 128 for n = 3, 7, 8, 15;
* ``SphereSpinorModel.from_half_spinor(rep, split, sign)`` restricts a Cl_{n+1}
  representation (n+1 = 0 mod 4) to a volume half-space.

Both satisfy the same relations, and all downstream checks are
realization independent.  Killing spinors with constant +1/2 are the constant
fields; those with constant -1/2 are x -> L(x) Psi.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .clifford import CliffordRep, HalfSpinorSplit, build_rep, half_spinor_split
from .polyfield import PolyField, pf_apply_matrix
from .sphere import check_unit, tangent_frame

_TANGENT_TOL = 1e-9


class SphereSpinorModel:
    """Trivialized spinor bundle of S^n: fiber R^dim plus intertwiners L, M."""

    def __init__(self, n: int, lmats: np.ndarray, mmats: np.ndarray):
        self.n = int(n)
        self.ambient_dim = self.n + 1
        lmats = np.asarray(lmats, dtype=float)
        mmats = np.asarray(mmats, dtype=float)
        if lmats.shape != mmats.shape or lmats.shape[0] != self.ambient_dim:
            raise ValueError("need one L and one M matrix per ambient direction")
        self.lmats = lmats
        self.mmats = mmats
        self.dim = lmats.shape[1]
        self._validate()

    def _validate(self) -> None:
        eye = np.eye(self.dim)
        for a in range(self.ambient_dim):
            if not np.allclose(self.mmats[a].T, -self.lmats[a], atol=1e-12):
                raise ValueError("intertwiner transpose relation violated")
            for b in range(self.ambient_dim):
                anti = (self.lmats[a] @ self.mmats[b] + self.lmats[b] @ self.mmats[a]
                        + 2.0 * (a == b) * eye)
                if np.abs(anti).max() > 1e-12:
                    raise ValueError("intertwiner Clifford relation violated")

    # -- constructors -------------------------------------------------------

    @classmethod
    def standard(cls, n: int) -> "SphereSpinorModel":
        """Double a minimal Cl_n representation into a model for S^n."""
        rep = build_rep(n)
        eye = np.eye(rep.dim)
        lmats = np.stack(list(rep.gammas) + [-eye])
        mmats = np.stack(list(rep.gammas) + [eye])
        return cls(n, lmats, mmats)

    @classmethod
    def from_half_spinor(cls, rep: CliffordRep, split: HalfSpinorSplit,
                         positive: bool = True) -> "SphereSpinorModel":
        """Restrict a Cl_{n+1} representation to a volume half-space."""
        n = rep.m - 1
        proj = split.proj_plus if positive else split.proj_minus
        other = split.proj_minus if positive else split.proj_plus
        basis_in = projector_basis(proj)
        basis_out = projector_basis(other)
        # M(u): half -> other half, L(u): other half -> half, in coordinates
        mmats = np.stack([basis_out.T @ g @ basis_in for g in rep.gammas])
        lmats = np.stack([basis_in.T @ g @ basis_out for g in rep.gammas])
        return cls(n, lmats, mmats)

    # -- linear actions -------------------------------------------------------

    def lmat(self, u) -> np.ndarray:
        return np.einsum("a,aij->ij", np.asarray(u, dtype=float), self.lmats)

    def mmat(self, u) -> np.ndarray:
        return np.einsum("a,aij->ij", np.asarray(u, dtype=float), self.mmats)

    def rho(self, u, v) -> np.ndarray:
        """Action of the even element u.v on the fiber."""
        return self.lmat(u) @ self.mmat(v)

    def even_word(self, vectors) -> np.ndarray:
        """Action of a product of an even number of ambient vectors."""
        vectors = [np.asarray(v, dtype=float) for v in vectors]
        if len(vectors) % 2 != 0:
            raise ValueError("only even products act on the fiber")
        out = np.eye(self.dim)
        for i in range(0, len(vectors), 2):
            out = out @ self.rho(vectors[i], vectors[i + 1])
        return out

    def clifford_tangent(self, x, xvec) -> np.ndarray:
        """Matrix of Clifford multiplication c_x(X) = rho(X.x), X tangent at x."""
        x = check_unit(x)
        xvec = np.asarray(xvec, dtype=float)
        if abs(xvec @ x) > _TANGENT_TOL * max(1.0, np.linalg.norm(xvec)):
            raise ValueError("Clifford multiplication needs a tangent vector")
        return self.rho(xvec, x)

    def two_form_tangent(self, x, xvec, yvec) -> np.ndarray:
        """Action of the tangential 2-form X ^ Y at x."""
        return (self.clifford_tangent(x, xvec) @ self.clifford_tangent(x, yvec)
                + float(np.dot(xvec, yvec)) * np.eye(self.dim))

    def connection_term(self, x, xvec) -> np.ndarray:
        """The matrix (1/2) rho(X.x) entering the covariant derivative."""
        return 0.5 * self.rho(xvec, np.asarray(x, dtype=float))


def projector_basis(proj: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis (columns) of the range of a projector."""
    vals, vecs = np.linalg.eigh(proj)
    cols = vecs[:, vals > 0.5]
    # fix signs so the result does not depend on LAPACK sign conventions
    for j in range(cols.shape[1]):
        lead = np.flatnonzero(np.abs(cols[:, j]) > 1e-10)[0]
        if cols[lead, j] < 0:
            cols[:, j] = -cols[:, j]
    return cols


@lru_cache(maxsize=None)
def standard_model(n: int) -> SphereSpinorModel:
    return SphereSpinorModel.standard(n)


class SpinorField:
    """A polynomial spinor field on S^n in a trivialized model."""

    def __init__(self, model: SphereSpinorModel, poly: PolyField):
        if poly.nvars != model.ambient_dim or poly.shape != (model.dim,):
            raise ValueError("polynomial value space does not match the model")
        self.model = model
        self.poly = poly
        self._grad: PolyField | None = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, model: SphereSpinorModel, value) -> "SpinorField":
        return cls(model, PolyField.constant(np.asarray(value, dtype=float),
                                             model.ambient_dim))

    @classmethod
    def from_matrix_poly(cls, model: SphereSpinorModel, matrix_field: PolyField,
                         value) -> "SpinorField":
        """Field x -> matrix_field(x) @ value."""
        base = PolyField.constant(np.asarray(value, dtype=float), model.ambient_dim)
        return cls(model, pf_apply_matrix(matrix_field, base, 0))

    # -- evaluation ------------------------------------------------------------

    def __call__(self, x) -> np.ndarray:
        return self.poly(x)

    @property
    def grad(self) -> PolyField:
        if self._grad is None:
            self._grad = self.poly.gradient()
        return self._grad

    def ambient_derivative(self, x, v) -> np.ndarray:
        """Flat derivative D_v psi at x."""
        return np.tensordot(np.asarray(v, dtype=float), self.grad(x), axes=([0], [0]))

    def covariant_derivative(self, x, xvec) -> np.ndarray:
        """nabla_X psi(x) = D_X psi + (1/2) rho(X.x) psi(x) for tangent X."""
        x = np.asarray(x, dtype=float)
        return (self.ambient_derivative(x, xvec)
                + self.model.connection_term(x, xvec) @ self.poly(x))

    def clifford(self, x, xvec) -> np.ndarray:
        """Pointwise Clifford multiplication c_x(X) psi(x)."""
        return self.model.clifford_tangent(x, xvec) @ self.poly(x)

    def covariant_derivative_field(self, xvec) -> "SpinorField":
        """nabla along the tangential extension of a fixed ambient vector.

        Returns the polynomial field y -> D_{X(y)} psi + (1/2) rho(X(y).y) psi
        with X(y) = xvec - <xvec, y> y; exact, so it can be differentiated
        again (spinorial curvature).
        """
        from .sphere import tangential_extension
        from .polyfield import pf_contract_vector, pf_tensordot

        d = self.model.ambient_dim
        ext = tangential_extension(np.asarray(xvec, dtype=float), d)
        flat = pf_contract_vector(ext, self.grad, 0)
        # connection term: (1/2) L(X(y)) M(y) psi(y)
        lx = pf_tensordot(ext, PolyField.constant(self.model.lmats, d), axes=([0], [0]))
        my = pf_tensordot(PolyField.position(d),
                          PolyField.constant(self.model.mmats, d), axes=([0], [0]))
        mpsi = pf_apply_matrix(my, self.poly, 0)
        conn = pf_apply_matrix(lx, mpsi, 0).scale(0.5)
        return SpinorField(self.model, flat + conn)

    def norm_sq_field(self) -> PolyField:
        from .polyfield import pf_dot
        return pf_dot(self.poly, self.poly)

    # -- algebra ---------------------------------------------------------------

    def __add__(self, other: "SpinorField") -> "SpinorField":
        if other.model is not self.model:
            raise ValueError("fields live in different models")
        return SpinorField(self.model, self.poly + other.poly)

    def __sub__(self, other: "SpinorField") -> "SpinorField":
        return self + other.scale(-1.0)

    def scale(self, factor: float) -> "SpinorField":
        return SpinorField(self.model, self.poly.scale(factor))


# -- Killing spinor bases -----------------------------------------------------

def killing_basis(n: int, constant: float) -> list[SpinorField]:
    """Basis of the Killing spinors nabla_X psi = constant * c(X) psi on S^n.

    Constants +1/2 and -1/2 are supported; the basis size equals the fiber
    dimension of the standard model (4, 8, 16, 128 for n = 3, 7, 8, 15).
    """
    if not 2 <= n <= 15:
        raise ValueError("supported sphere dimensions are 2..15")
    if constant not in (0.5, -0.5):
        raise ValueError("Killing constant must be +0.5 or -0.5")
    model = standard_model(n)
    basis = []
    for k in range(model.dim):
        e = np.zeros(model.dim)
        e[k] = 1.0
        if constant == 0.5:
            basis.append(SpinorField.constant(model, e))
        else:
            lpoly = PolyField(model.ambient_dim, (model.dim,))
            for a in range(model.ambient_dim):
                exp = [0] * model.ambient_dim
                exp[a] = 1
                lpoly.add_term(tuple(exp), model.lmats[a] @ e)
            basis.append(SpinorField(model, lpoly))
    return basis


# -- sphere volume element and chirality split --------------------------------

def volume_frame_product(model: SphereSpinorModel, x) -> np.ndarray:
    """c(E_1) ... c(E_n) over the oriented orthonormal frame at x."""
    if model.n % 2 != 0:
        raise ValueError("the pointwise volume product is even-dimensional only")
    frame = tangent_frame(x)
    word = []
    for e in frame:
        word.extend([e, np.asarray(x, dtype=float)])
    return model.even_word(word)


def sphere_volume_poly(model: SphereSpinorModel) -> PolyField:
    """The sphere volume element as a linear matrix polynomial V(x).

    For even n the frame product c(E_1)...c(E_n) is linear in x:
    V(x) = sum_a x_a W_a with W_a = +- rho(e_1 ... e_a-hat ... e_{n+1}).
    The overall sign is pinned against the frame product at a sample point.
    """
    if model.n % 2 != 0:
        raise ValueError("even sphere dimension required")
    d = model.ambient_dim
    words = []
    for a in range(d):
        letters = [np.eye(d)[b] for b in range(d) if b != a]
        sign = (-1.0) ** (d - (a + 1))  # e_a moved past the letters above it
        words.append(sign * model.even_word(letters))
    poly = PolyField(d, (model.dim, model.dim))
    for a in range(d):
        exp = [0] * d
        exp[a] = 1
        poly.add_term(tuple(exp), words[a])
    # pin the global sign against the defining frame product
    probe = np.zeros(d)
    probe[0] = 3.0 / 5.0
    probe[1] = 4.0 / 5.0
    ref = volume_frame_product(model, probe)
    got = poly(probe)
    if np.abs(got - ref).max() > np.abs(got + ref).max():
        poly = poly.scale(-1.0)
        got = -got
    if np.abs(got - ref).max() > 1e-10:
        raise RuntimeError("volume polynomial does not match the frame product")
    return poly


def chirality_projectors(model: SphereSpinorModel) -> tuple[PolyField, PolyField]:
    """Pointwise projectors onto the +-1 eigenspaces of the sphere volume."""
    if model.n % 8 != 0:
        raise ValueError("chirality split requires n = 0 mod 8")
    vol = sphere_volume_poly(model)
    half_id = PolyField.constant(0.5 * np.eye(model.dim), model.ambient_dim)
    return half_id + vol.scale(0.5), half_id - vol.scale(0.5)
