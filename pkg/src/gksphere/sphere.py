"""Geometry of the round unit sphere S^n inside R^{n+1}.

Conventions (used consistently by every module):

* curvature:            R_{X,Y} = [nabla_X, nabla_Y] - nabla_{[X,Y]},
                        so on the unit sphere R_{X,Y}Z = <Y,Z>X - <X,Z>Y
                        and the curvature operator on 2-forms is -Id;
* 2-form inner product: <a^b, c^d> = <a,c><b,d> - <a,d><b,c>;
* divergence:           delta h = - sum_i (nabla_{E_i} h)(E_i);
* scalar curvature:     n(n-1);
* sampling:             points are normalized standard Gaussian vectors from
                        a seeded generator (default seed 0);
* frames:               Gram-Schmidt on the coordinate axes with the axis
                        most parallel to x dropped, oriented so that
                        det[x, E_1, ..., E_n] = +1.

Tangential tensor fields are represented by ambient polynomial arrays whose
slots are all tangential; their covariant derivative is the tangentially
projected ambient derivative (projection applied to every slot, including the
new direction slot), which makes ambient traces equal frame traces.
"""

from __future__ import annotations

import numpy as np

from .polyfield import PolyField, pf_apply_matrix, pf_contract_vector

SCALAR_CURVATURE = lambda n: n * (n - 1)  # noqa: E731

FD_STEP = 1e-5
FD_TOLERANCE = 1e-4

_UNIT_TOL = 1e-12


def check_unit(x, tol: float = 1e-9) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x)
    if abs(r - 1.0) > tol:
        raise ValueError(f"point is not on the unit sphere (|x| = {r})")
    return x


def sample_sphere(nvars: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform points on S^{nvars-1}: normalized standard Gaussians."""
    pts = rng.standard_normal((count, nvars))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def tangent_project(x, v) -> np.ndarray:
    """Orthogonal projection of an ambient vector onto T_x S^n."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    return v - (v @ x) * x


def tangent_frame(x) -> np.ndarray:
    """Oriented orthonormal frame of T_x S^n, rows are the frame vectors.

    Deterministic: drops the coordinate axis most parallel to x, then runs
    Gram-Schmidt in index order and flips the last vector if needed so that
    det[x, E_1, ..., E_n] = +1.
    """
    x = check_unit(x)
    d = x.size
    drop = int(np.argmax(np.abs(x)))
    frame = []
    for a in range(d):
        if a == drop:
            continue
        v = np.zeros(d)
        v[a] = 1.0
        v -= (v @ x) * x
        for e in frame:
            v -= (v @ e) * e
        nrm = np.linalg.norm(v)
        if nrm < 1e-10:
            raise RuntimeError("degenerate frame construction")
        frame.append(v / nrm)
    frame = np.array(frame)
    if np.linalg.det(np.vstack([x[None, :], frame])) < 0:
        frame[-1] = -frame[-1]
    return frame


def tangential_extension(v, x_dim: int) -> PolyField:
    """The tangential vector field y -> v - <v, y> y extending v off y = x."""
    v = np.asarray(v, dtype=float)
    out = PolyField.constant(v, x_dim)
    for a in range(x_dim):
        for b in range(x_dim):
            if v[a] == 0.0:
                continue
            exp = [0] * x_dim
            exp[a] += 1
            exp[b] += 1
            coef = np.zeros(x_dim)
            coef[b] = -v[a]
            out.add_term(tuple(exp), coef)
    return out


# -- covariant differentiation ------------------------------------------------

def tangential_gradient(field: PolyField) -> PolyField:
    """Covariant derivative of a fully tangential tensor field (symbolic).

    Output shape is ``(d,) + field.shape`` with the direction slot first;
    every slot of the result is projected with P(x) = Id - x x^T.
    """
    grad = field.gradient()
    proj = PolyField.tangent_projector(field.nvars)
    for axis in range(grad.ndim):
        grad = pf_apply_matrix(proj, grad, axis)
    return grad


def project_all_axes(tensor: np.ndarray, x) -> np.ndarray:
    """Project every slot of an ambient tensor onto T_x S^n."""
    x = np.asarray(x, dtype=float)
    proj = np.eye(x.size) - np.outer(x, x)
    out = np.asarray(tensor, dtype=float)
    for axis in range(out.ndim):
        out = np.moveaxis(np.tensordot(proj, out, axes=([1], [axis])), 0, axis)
    return out


def covariant_derivative_at(grad_field: PolyField, x) -> np.ndarray:
    """Pointwise covariant derivative from a stacked-partials field.

    ``grad_field`` must be ``T.gradient()`` for a tensor field T that is
    tangential on the sphere; the result is (nabla T)(x) with the direction
    slot first.
    """
    return project_all_axes(grad_field(x), x)


def levi_civita_vec(x, v, field: PolyField, check_tangential: bool = True) -> np.ndarray:
    """nabla_v of a tangential vector field at x: projected ambient derivative."""
    x = check_unit(x)
    if check_tangential:
        val = field(x)
        if abs(val @ x) > 1e-8:
            raise ValueError("field is not tangential at the evaluation point")
    return tangent_project(x, field.directional(x, v))


def curvature_vec(x, xvec, yvec, field: PolyField) -> np.ndarray:
    """R_{Y,X}Z = [nabla_Y, nabla_X]Z - nabla_{[Y,X]}Z at x (naming as in args).

    ``xvec`` and ``yvec`` are tangent vectors at x, extended tangentially;
    ``field`` is a tangential polynomial vector field Z.  On the round sphere
    the result equals <X,Z>Y - <Y,Z>X.
    """
    x = check_unit(x)
    d = x.size
    ext_x = tangential_extension(xvec, d)
    ext_y = tangential_extension(yvec, d)
    grad_z = tangential_gradient(field)

    def nabla_along(ext):
        # tangential field y -> (nabla_{ext(y)} Z)(y)
        return pf_contract_vector(ext, grad_z, 0)

    w_x = nabla_along(ext_x)   # nabla_X Z as a field
    w_y = nabla_along(ext_y)
    first = tangent_project(x, w_x.directional(x, yvec))   # nabla_Y nabla_X Z
    second = tangent_project(x, w_y.directional(x, xvec))  # nabla_X nabla_Y Z
    bracket = (ext_x.directional(x, yvec) - ext_y.directional(x, xvec))  # [Y, X](x)
    third = tangent_project(x, field.directional(x, bracket))
    return first - second - third


def curvature_operator_2form(x, xvec, yvec, uvec, vvec, field_u: PolyField | None = None) -> float:
    """g(R(X^Y), U^V) = g(R_{X,Y} U, V) computed by exact differentiation."""
    if field_u is None:
        field_u = tangential_extension(uvec, np.asarray(x).size)
    r_xy_u = curvature_vec(x, yvec, xvec, field_u)  # R_{X,Y}U
    return float(r_xy_u @ np.asarray(vvec, dtype=float))


def wedge_inner(a, b, c, d) -> float:
    """<a^b, c^d> = <a,c><b,d> - <a,d><b,c>."""
    a, b, c, d = (np.asarray(v, dtype=float) for v in (a, b, c, d))
    return float((a @ c) * (b @ d) - (a @ d) * (b @ c))


def killing_field_from_skew(skew) -> PolyField:
    """The Killing vector field x -> F x of a skew matrix F."""
    skew = np.asarray(skew, dtype=float)
    if not np.allclose(skew, -skew.T, atol=1e-12):
        raise ValueError("matrix is not skew-symmetric")
    return PolyField.linear_map(skew)


# -- symmetric tangential tensor fields ---------------------------------------

class SymTensorField:
    """Symmetric, tangential (h(x) x = 0) matrix polynomial field on S^n.

    Doubles as the symmetric endomorphism of the generalized Killing equation
    and as the trace-free test tensors of the Weitzenboeck machinery.
    """

    def __init__(self, poly: PolyField, trace_free: bool = False):
        d = poly.nvars
        if poly.shape != (d, d):
            raise ValueError("need a square matrix field over the ambient space")
        self.poly = poly
        self.trace_free = bool(trace_free)
        self._grad: PolyField | None = None
        self._cov_grad: PolyField | None = None

    @property
    def ambient_dim(self) -> int:
        return self.poly.nvars

    def __call__(self, x) -> np.ndarray:
        return self.poly(x)

    def apply(self, x, v) -> np.ndarray:
        return self.poly(x) @ np.asarray(v, dtype=float)

    def trace(self, x) -> float:
        """Tangential trace (equals the ambient trace for tangential fields)."""
        return float(np.trace(self.poly(x)))

    @property
    def grad(self) -> PolyField:
        if self._grad is None:
            self._grad = self.poly.gradient()
        return self._grad

    @property
    def cov_grad(self) -> PolyField:
        """Symbolic covariant derivative, direction slot first, all slots projected."""
        if self._cov_grad is None:
            self._cov_grad = tangential_gradient(self.poly)
        return self._cov_grad

    def nabla(self, x, v) -> np.ndarray:
        """(nabla_v h)(x) as a matrix, v tangent at x."""
        return np.tensordot(np.asarray(v, dtype=float), self.cov_grad(x), axes=([0], [0]))

    def validate(self, points, sym_tol: float = 1e-10, tan_tol: float = 1e-10,
                 trace_tol: float = 1e-10) -> dict[str, float]:
        """Max symmetry / tangentiality (/ trace) defects over sample points."""
        vals = self.poly(np.asarray(points, dtype=float))
        sym = float(np.abs(vals - np.swapaxes(vals, -1, -2)).max())
        tan = float(np.abs(np.einsum("pij,pj->pi", vals, points)).max())
        out = {"symmetry": sym, "tangentiality": tan}
        if sym > sym_tol:
            raise ValueError(f"field is not symmetric (defect {sym:.2e})")
        if tan > tan_tol:
            raise ValueError(f"field is not tangential (defect {tan:.2e})")
        if self.trace_free:
            tr = float(np.abs(np.trace(vals, axis1=-2, axis2=-1)).max())
            out["trace"] = tr
            if tr > trace_tol:
                raise ValueError(f"field is not trace-free (defect {tr:.2e})")
        return out


# alias: the associated endomorphism of a generalized Killing spinor
SymEndField = SymTensorField


def killing_endo(n: int, constant: float) -> SymTensorField:
    """The endomorphism field c * Id_{TS^n}, i.e. c (Id - x x^T)."""
    return SymTensorField(PolyField.tangent_projector(n + 1).scale(constant))


# -- finite-difference fallback ----------------------------------------------

def fd_directional(func, x, v, step: float = FD_STEP) -> np.ndarray:
    """Central-difference ambient directional derivative of a black-box field."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    return (np.asarray(func(x + step * v)) - np.asarray(func(x - step * v))) / (2.0 * step)


def fd_covariant_tensor(func, x, v, step: float = FD_STEP) -> np.ndarray:
    """Covariant derivative of a black-box tangential tensor field at x."""
    raw = fd_directional(func, x, v, step=step)
    return project_all_axes(raw, x)
