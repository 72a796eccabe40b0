"""Residual checks for the generalized Killing spinor equation on S^n.

The defining equation is nabla_X psi = c(A(X)) psi for a symmetric tangential
endomorphism field A.  Differentiating it once yields the curvature equation

    [(nabla_X A)Y - (nabla_Y A)X] . psi
        = 2 (A X ^ A Y) . psi + (1/2) Rop(X ^ Y) . psi,

with Rop = -Id on the round sphere, and contracting yields the constraints

    delta A + d tr A = 0,
    n(n-1) = 4 (tr A)^2 - 4 tr A^2.

On S^{8k} the fiber splits under the sphere volume element; the vector field
pairing the two chirality halves, g(eta, X) = <c(X) psi+, psi->, satisfies a
chain of identities that forces tr(A)^2 = 16 k^2 wherever eta is nonzero.
All of those are implemented here as sampled residual reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .polyfield import PolyField, pf_apply_matrix
from .report import Report
from .sphere import (SymEndField, sample_sphere, tangent_frame, tangent_project)
from .spinors import SphereSpinorModel, SpinorField, chirality_projectors

DEFAULT_SAMPLES = 50
GKS_TOL = 1e-8
UNIT_TOL = 1e-8


# -- reports -----------------------------------------------------------------

@dataclass
class GKSReport:
    """Residuals of the generalized Killing checks over a sample set."""

    residual_gks: float
    residual_constraint1: float
    residual_constraint2: float
    residual_curvature: float
    spectrum_summary: np.ndarray  # per-sample sorted eigenvalues of A
    samples: int
    seed: int
    checks: Report = field(default=None)

    @property
    def passed(self) -> bool:
        return self.checks.passed


# -- core checks ---------------------------------------------------------------

def check_gks(psi: SpinorField, endo: SymEndField, samples: int = DEFAULT_SAMPLES,
              seed: int = 0, tol: float = GKS_TOL) -> Report:
    """Max residual of nabla_X psi - c(A(X)) psi over samples and frames."""
    model = psi.model
    rng = np.random.default_rng(seed)
    pts = sample_sphere(model.ambient_dim, samples, rng)
    worst = 0.0
    worst_unit = 0.0
    for x in pts:
        val = psi(x)
        worst_unit = max(worst_unit, abs(np.linalg.norm(val) - 1.0))
        mat_a = endo(x)
        for xvec in tangent_frame(x):
            lhs = psi.covariant_derivative(x, xvec)
            rhs = model.clifford_tangent(x, mat_a @ xvec) @ val
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    report = Report(command="check-gks", seed=seed,
                    params={"samples": samples})
    report.add("unit-norm", worst_unit, UNIT_TOL)
    report.add("gks-residual", worst, tol)
    return report


@dataclass
class ExtractResult:
    endo_ambient: np.ndarray      # (n+1) x (n+1), tangential
    endo_frame: np.ndarray        # n x n in the local frame
    eigenvalues: np.ndarray       # sorted, tangential spectrum
    symmetry_defect: float
    span_defect: float            # part of nabla psi outside {c(E_j) psi}


def extract_endo(psi: SpinorField, x, normalize: bool = False) -> ExtractResult:
    """Invert the generalized Killing equation pointwise.

    Solves c(v) psi(x) = nabla_{E_i} psi for v = A(E_i) in least squares; the
    columns c(E_j) psi(x) are orthogonal with norm |psi|, so the normal
    equations reduce to plain projections.  With ``normalize`` the field is
    replaced by psi/|psi| (quotient rule applied exactly).
    """
    model = psi.model
    x = np.asarray(x, dtype=float)
    val = psi(x)
    norm = np.linalg.norm(val)
    if norm < 1e-12:
        raise ValueError("spinor vanishes at the sample point")
    if not normalize and abs(norm - 1.0) > 1e-6:
        raise ValueError(f"spinor is not unit length at x (|psi| = {norm}); "
                         "pass normalize=True to rescale")
    frame = tangent_frame(x)
    n = frame.shape[0]
    columns = np.stack([model.clifford_tangent(x, e) @ val for e in frame], axis=1)
    a_frame = np.zeros((n, n))
    span_defect = 0.0
    for i, e in enumerate(frame):
        der = psi.covariant_derivative(x, e)
        if normalize:
            dval = psi.ambient_derivative(x, e)
            der = der / norm - (val @ dval) / norm**3 * val
        coeff = columns.T @ der / (norm * norm)
        a_frame[i] = coeff
        span_defect = max(span_defect, float(np.linalg.norm(der - columns @ coeff)))
    symmetry_defect = float(np.abs(a_frame - a_frame.T).max())
    sym = 0.5 * (a_frame + a_frame.T)
    eigenvalues = np.sort(np.linalg.eigvalsh(sym))
    endo_ambient = frame.T @ sym @ frame
    return ExtractResult(endo_ambient=endo_ambient, endo_frame=a_frame,
                         eigenvalues=eigenvalues, symmetry_defect=symmetry_defect,
                         span_defect=span_defect)


def check_constraints(endo: SymEndField, n: int, samples: int = DEFAULT_SAMPLES,
                      seed: int = 0, tol: float = GKS_TOL) -> Report:
    """Divergence constraint delta A + d tr A = 0 and the scalar constraint."""
    rng = np.random.default_rng(seed)
    pts = sample_sphere(n + 1, samples, rng)
    grad_a = endo.cov_grad
    trace_grad = _matrix_trace_field(endo.poly).gradient()
    worst_div = 0.0
    worst_scal = 0.0
    for x in pts:
        cov = grad_a(x)                      # (d, d, d), direction slot first
        div = -np.einsum("aia->i", cov)      # delta A = -sum (nabla_{E_i} A) E_i
        dtr = tangent_project(x, trace_grad(x))
        worst_div = max(worst_div, float(np.abs(div + dtr).max()))
        mat = endo(x)
        tr = np.trace(mat)
        tr2 = np.trace(mat @ mat)
        worst_scal = max(worst_scal, abs(n * (n - 1) - 4.0 * tr * tr + 4.0 * tr2))
    report = Report(command="check-constraints", seed=seed,
                    params={"samples": samples, "n": n})
    report.add("constraint-divergence", worst_div, tol)
    report.add("constraint-scalar", worst_scal, tol)
    return report


def _matrix_trace_field(poly: PolyField) -> PolyField:
    out = PolyField(poly.nvars, ())
    for exp, coef in poly.terms.items():
        out.add_term(exp, np.trace(coef))
    return out


def check_curvature_eq(psi: SpinorField, endo: SymEndField,
                       samples: int = DEFAULT_SAMPLES, seed: int = 0,
                       tol: float = GKS_TOL) -> Report:
    """Residual of the once-differentiated equation over frame pairs."""
    model = psi.model
    rng = np.random.default_rng(seed)
    pts = sample_sphere(model.ambient_dim, samples, rng)
    grad_a = endo.cov_grad
    eye = np.eye(model.dim)
    worst = 0.0
    for x in pts:
        val = psi(x)
        cov = grad_a(x)
        mat_a = endo(x)
        frame = tangent_frame(x)
        cmats = [model.clifford_tangent(x, e) for e in frame]
        a_frame = [mat_a @ e for e in frame]
        ca = [model.clifford_tangent(x, v) for v in a_frame]
        n = len(frame)
        for i in range(n):
            for j in range(i + 1, n):
                w = np.tensordot(frame[i], cov, axes=([0], [0])) @ frame[j] \
                    - np.tensordot(frame[j], cov, axes=([0], [0])) @ frame[i]
                lhs = model.clifford_tangent(x, tangent_project(x, w)) @ val
                wedge_aa = (ca[i] @ ca[j] + float(a_frame[i] @ a_frame[j]) * eye) @ val
                wedge_ee = (cmats[i] @ cmats[j] + float(frame[i] @ frame[j]) * eye) @ val
                rhs = 2.0 * wedge_aa - 0.5 * wedge_ee   # Rop = -Id on the sphere
                worst = max(worst, float(np.abs(lhs - rhs).max()))
    report = Report(command="check-curvature-eq", seed=seed,
                    params={"samples": samples})
    report.add("curvature-equation", worst, tol)
    return report


def full_gks_report(psi: SpinorField, endo: SymEndField,
                    samples: int = DEFAULT_SAMPLES, seed: int = 0,
                    tol: float = GKS_TOL) -> GKSReport:
    """Run the equation, constraint and curvature checks plus the spectrum."""
    model = psi.model
    gks = check_gks(psi, endo, samples=samples, seed=seed, tol=tol)
    constraints = check_constraints(endo, model.n, samples=samples, seed=seed, tol=tol)
    curvature = check_curvature_eq(psi, endo, samples=samples, seed=seed, tol=tol)
    rng = np.random.default_rng(seed)
    pts = sample_sphere(model.ambient_dim, samples, rng)
    spectrum = np.stack([extract_endo(psi, x).eigenvalues for x in pts])
    combined = Report(command="gks-report", seed=seed, params={"samples": samples})
    combined.merge(gks)
    combined.merge(constraints)
    combined.merge(curvature)
    return GKSReport(
        residual_gks=gks.checks[-1].max_residual,
        residual_constraint1=constraints.checks[0].max_residual,
        residual_constraint2=constraints.checks[1].max_residual,
        residual_curvature=curvature.checks[0].max_residual,
        spectrum_summary=spectrum,
        samples=samples,
        seed=seed,
        checks=combined,
    )


def killing_basis_report(n: int, constant: float, a_constant: float | None = None,
                         samples: int = DEFAULT_SAMPLES, seed: int = 0,
                         tol: float = 1e-9) -> Report:
    """Residuals and rank of the full Killing basis, vectorized over the basis.

    The whole basis is checked at once per (point, frame vector) pair through
    stacked intertwiner products, which keeps S^15 (128 spinors of fiber
    dimension 128) tractable.  ``a_constant`` lets the endomorphism used in
    the check differ from the Killing constant (the mismatch case documents
    the failure mode).
    """
    from .spinors import killing_basis, standard_model

    if constant not in (0.5, -0.5):
        raise ValueError("Killing constant must be +0.5 or -0.5")
    if a_constant is None:
        a_constant = constant
    model = standard_model(n)
    rng = np.random.default_rng(seed)
    pts = sample_sphere(n + 1, samples, rng)
    worst = 0.0
    for x in pts:
        mx = model.mmat(x)
        lx = model.lmat(x)
        proj = np.eye(n + 1) - np.outer(x, x)
        for xvec in tangent_frame(x):
            lv = model.lmat(xvec)
            target = a_constant * model.lmat(proj @ xvec) @ mx
            if constant == 0.5:
                resid = 0.5 * lv @ mx - target
            else:
                resid = lv + 0.5 * lv @ mx @ lx - target @ lx
            worst = max(worst, float(np.abs(resid).max()))
    basis = killing_basis(n, constant)
    eval_pts = sample_sphere(n + 1, 2, rng)
    stacked = np.stack([np.concatenate([psi(p) for p in eval_pts])
                        for psi in basis])
    rank = int(np.linalg.matrix_rank(stacked, tol=1e-8))
    report = Report(command="killing-basis", seed=seed,
                    params={"sphere": n, "constant": constant,
                            "a_constant": a_constant, "samples": samples})
    report.add("gks-residual", worst, tol)
    report.add("basis-count", abs(len(basis) - model.dim), 0.5)
    report.add("basis-rank", abs(rank - model.dim), 0.5)
    return report


# -- chirality pairing pipeline on S^{8k} --------------------------------------

def chirality_pairing_pipeline(psi: SpinorField, endo: SymEndField,
                               samples: int = DEFAULT_SAMPLES, seed: int = 0,
                               tol: float = GKS_TOL) -> Report:
    """Identities tying a split spinor to its pairing vector field on S^{8k}.

    Checks, over random samples: the swap relation nabla_X psi+- = c(A X) psi-+;
    d|psi-|^2 = 2 A(eta); nabla_Y eta = (1 - 2 |psi-|^2) A(Y); the quadratic and
    cubic eigenvalue relations for A on eta; A(eta) = (tr A / n) eta; and
    (tr A)^2 = 16 k^2 wherever eta does not vanish.  Also certifies that
    X -> c(X) psi+ is bijective onto the opposite half (Gram matrix condition).
    """
    model = psi.model
    n = model.n
    if n % 8 != 0:
        raise ValueError("the pairing pipeline needs a sphere dimension divisible by 8")
    k = n // 8
    proj_plus, proj_minus = chirality_projectors(model)
    psi_plus = SpinorField(model, pf_apply_matrix(proj_plus, psi.poly, 0))
    psi_minus = SpinorField(model, pf_apply_matrix(proj_minus, psi.poly, 0))

    rng = np.random.default_rng(seed)
    pts = sample_sphere(model.ambient_dim, samples, rng)
    res = {key: 0.0 for key in ("swap", "h-derivative", "pairing-derivative",
                                "pairing-quadratic", "pairing-cubic",
                                "pairing-eigen", "trace-square")}
    gram_cond = 0.0
    zero_count = 0
    eta_floor = 1e-8
    eta_field = _pairing_field(model, psi_plus, psi_minus)
    eta_grad = eta_field.gradient()

    for x in pts:
        frame = tangent_frame(x)
        vp = psi_plus(x)
        vm = psi_minus(x)
        mat_a = endo(x)
        a = np.trace(mat_a)
        cmats = [model.clifford_tangent(x, e) for e in frame]

        # pairing vector and |psi-|^2 in the frame
        eta = sum(float((c @ vp) @ vm) * e for c, e in zip(cmats, frame))
        h = float(vm @ vm)

        for e, c in zip(frame, cmats):
            ca = model.clifford_tangent(x, mat_a @ e)
            res["swap"] = max(res["swap"], float(np.abs(
                psi_plus.covariant_derivative(x, e) - ca @ vm).max()))
            res["swap"] = max(res["swap"], float(np.abs(
                psi_minus.covariant_derivative(x, e) - ca @ vp).max()))
            # dh(X) = 2 g(A eta, X)
            dh = 2.0 * float(vm @ psi_minus.ambient_derivative(x, e))
            res["h-derivative"] = max(res["h-derivative"],
                                      abs(dh - 2.0 * float((mat_a @ eta) @ e)))

        # nabla_Y eta = (1 - 2h) A(Y) via the exact derivative of the eta field
        for e in frame:
            deta = tangent_project(x, np.tensordot(e, eta_grad(x), axes=([0], [0])))
            res["pairing-derivative"] = max(res["pairing-derivative"], float(np.abs(
                deta - (1.0 - 2.0 * h) * (mat_a @ e)).max()))

        a_eta = mat_a @ eta
        res["pairing-quadratic"] = max(res["pairing-quadratic"], float(np.abs(
            mat_a @ a_eta - a * a_eta + (8 * k - 1) / 4.0 * eta).max()))
        res["pairing-cubic"] = max(res["pairing-cubic"], float(np.abs(
            mat_a @ mat_a @ a_eta
            - (a * a - 2 * k * (8 * k - 1) + 0.25) * a_eta
            + (a / 4.0) * eta).max()))
        res["pairing-eigen"] = max(res["pairing-eigen"], float(np.abs(
            a_eta - (a / (8.0 * k)) * eta).max()))

        if np.linalg.norm(eta) > eta_floor:
            res["trace-square"] = max(res["trace-square"], abs(a * a - 16.0 * k * k))
        else:
            zero_count += 1

        if np.linalg.norm(vp) > 1e-8:
            gram = np.array([[float((ci @ vp) @ (cj @ vp)) for cj in cmats]
                             for ci in cmats])
            gram_cond = max(gram_cond, float(np.linalg.cond(gram)))

    report = Report(command="pairing-pipeline", seed=seed,
                    params={"samples": samples, "n": n, "k": k})
    report.add("swap", res["swap"], tol)
    report.add("h-derivative", res["h-derivative"], tol)
    report.add("pairing-derivative", res["pairing-derivative"], tol)
    report.add("pairing-quadratic", res["pairing-quadratic"], tol)
    report.add("pairing-cubic", res["pairing-cubic"], tol)
    report.add("pairing-eigen", res["pairing-eigen"], tol)
    report.add("trace-square", res["trace-square"], tol)
    # bijectivity of X -> c(X) psi+ onto the opposite half: finite conditioning
    report.add("gram-bijectivity", gram_cond if gram_cond else np.inf, 1e6)
    report.extra["pairing-zero-fraction"] = zero_count / len(pts)
    report.extra["gram-condition-max"] = gram_cond
    return report


def _pairing_field(model: SphereSpinorModel, psi_plus: SpinorField,
                   psi_minus: SpinorField) -> PolyField:
    """The ambient polynomial vector field with g(eta, X) = <c(X) psi+, psi->.

    Components: eta_a(x) = <L(P(x) e_a) M(x) psi+(x), psi-(x)>; automatically
    tangential because c(P x) = 0.
    """
    from .polyfield import pf_contract_vector, pf_tensordot

    d = model.ambient_dim
    pos = PolyField.position(d)
    mfield = pf_tensordot(pos, PolyField.constant(model.mmats, d), axes=([0], [0]))
    mpsi = pf_apply_matrix(mfield, psi_plus.poly, 0)
    proj = PolyField.tangent_projector(d)
    # stack over a: L(P(x) e_a) = sum_b P(x)_{ab} L_b; contract into M psi+
    lstack = PolyField.constant(model.lmats, d)       # (d, dim, dim)
    lproj = pf_tensordot(proj, lstack, axes=([1], [0]))  # (d, dim, dim)
    lm = pf_tensordot(lproj, mpsi, axes=([2], [0]))      # (d, dim)
    eta = pf_tensordot(lm, psi_minus.poly, axes=([1], [0]))  # (d,)
    return eta
