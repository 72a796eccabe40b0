"""Symmetric 2-tensor calculus on S^n and the rigidity estimate ingredients.

For trace-free symmetric tangential fields h the package verifies the
Weitzenboeck identity

    (d delta + delta d) h = nabla*nabla h + h o Ric - Rop(h),

with Ric = (n-1) Id and Rop(h) = -h on the round sphere, the purely algebraic
wedge identity

    (1/2) sum_{ij} |h(e_i) ^ e_j + e_i ^ h(e_j)|^2 = (n-2) |h|^2,

the 2-form spinor-norm inequality |w . phi| <= |w| (with equality |X . phi| =
|X| for vectors), and the quadrature identity

    int |d h|^2 = int (|nabla h|^2 + n |h|^2)

for divergence-free inputs.  All first-level covariant derivatives are exact
polynomial fields; second-level derivatives are evaluated pointwise from the
exact partials of the first level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import CliffordRep, build_rep
from .polyfield import (PolyField, pf_apply_matrix, pf_partial_trace,
                        pf_scalar_mul, pf_tensordot, pf_transpose)
from .report import Report
from .sphere import (SymTensorField, project_all_axes, sample_sphere,
                     tangent_frame, tangential_gradient)

WEITZENBOCK_TOL = 1e-6
ALGEBRAIC_TOL = 1e-10
NORM_INEQUALITY_TOL = 1e-12
DIVERGENCE_TOL = 1e-8


# -- first-order operators ------------------------------------------------------

def dnabla(h: SymTensorField, x, xvec, yvec) -> np.ndarray:
    """(nabla_X h) Y - (nabla_Y h) X at x for tangent X, Y."""
    cov = h.cov_grad(x)
    return (np.einsum("a,aij,j->i", xvec, cov, yvec)
            - np.einsum("a,aij,j->i", yvec, cov, xvec))


def deltanabla(h: SymTensorField, x) -> np.ndarray:
    """delta h = - sum_i (nabla_{E_i} h)(E_i); frame independent."""
    cov = h.cov_grad(x)
    return -np.einsum("aia->i", cov)


def divergence_field(h: SymTensorField) -> PolyField:
    """delta h as an exact polynomial vector field."""
    return pf_partial_trace(pf_transpose(h.cov_grad, (1, 0, 2)), 1, 2).scale(-1.0)


def exterior_derivative_field(h: SymTensorField) -> PolyField:
    """d h as a vector-valued 2-form field: omega[m, a, b] = (nabla_a h)(m, b) - (nabla_b h)(m, a)."""
    cov = h.cov_grad  # (a, i, j)
    return pf_transpose(cov, (1, 0, 2)) - pf_transpose(cov, (1, 2, 0))


# -- the Weitzenboeck identity ---------------------------------------------------

def check_weitzenbock(h: SymTensorField, samples: int = 20, seed: int = 0,
                      tol: float = WEITZENBOCK_TOL) -> Report:
    """Pointwise residual of the trace-free Weitzenboeck identity on S^n."""
    if not h.trace_free:
        raise ValueError("the Weitzenboeck check needs a trace-free field")
    d = h.ambient_dim
    n = d - 1
    rng = np.random.default_rng(seed)
    pts = sample_sphere(d, samples, rng)

    cov = h.cov_grad                      # nabla h, all slots projected
    delta = divergence_field(h)           # delta h
    omega = exterior_derivative_field(h)  # d h
    cov_grad = cov.gradient()
    delta_grad = delta.gradient()
    omega_grad = omega.gradient()

    worst = 0.0
    for x in pts:
        # d delta h: full covariant derivative of the divergence vector field
        t1 = project_all_axes(delta_grad(x), x)                 # (a, j)
        # delta d h: (X, Y) -> -sum_c (nabla_c omega)(Y-value; c, X)
        w = project_all_axes(omega_grad(x), x)                  # (c, m, a, b)
        t2 = -np.einsum("cjci->ij", w)
        # rough Laplacian: -trace of the second covariant derivative
        dd = project_all_axes(cov_grad(x), x)                   # (c, a, i, j)
        rough = -np.einsum("ccij->ij", dd)
        resid = t1 + t2 - rough - n * h(x)
        worst = max(worst, float(np.abs(resid).max()))
    report = Report(command="weitzenbock", seed=seed,
                    params={"samples": samples, "n": n})
    report.add("weitzenbock-pointwise", worst, tol)
    return report


# -- algebraic (n-2) identity ----------------------------------------------------

def algebraic_identity(h, n: int) -> tuple[float, float]:
    """lhs = (1/2) sum_ij |h(e_i)^e_j + e_i^h(e_j)|^2, rhs = (n-2)|h|^2."""
    h = np.asarray(h, dtype=float)
    if h.shape != (n, n):
        raise ValueError("matrix size must match the dimension")
    if abs(np.trace(h)) > 1e-12 * max(1.0, np.abs(h).max()):
        raise ValueError("matrix must be trace-free")
    if np.abs(h - h.T).max() > 1e-12 * max(1.0, np.abs(h).max()):
        raise ValueError("matrix must be symmetric")
    lhs = 0.0
    for i in range(n):
        for j in range(n):
            # 2-form components of h(e_i) ^ e_j + e_i ^ h(e_j)
            form = np.outer(h[:, i], np.eye(n)[j]) - np.outer(np.eye(n)[j], h[:, i])
            form += np.outer(np.eye(n)[i], h[:, j]) - np.outer(h[:, j], np.eye(n)[i])
            lhs += 0.5 * float(np.sum(form * form))  # |w|^2 = sum_{a<b} w_ab^2
    lhs *= 0.5
    rhs = (n - 2) * float(np.sum(h * h))
    return lhs, rhs


# -- 2-form norm inequality -------------------------------------------------------

def two_form_norm_inequality(rep: CliffordRep | None = None, samples: int = 500,
                             seed: int = 0, tol: float = NORM_INEQUALITY_TOL) -> Report:
    """max(|w . phi|^2 - |w|^2) over random decomposable 2-forms w = u ^ v.

    Also certifies |X . phi| = |X| for vectors.  The 2-form norm uses
    <a^b, c^d> = <a,c><b,d> - <a,d><b,c>, so |u ^ v|^2 = |u|^2 |v|^2 - <u,v>^2.

    The inequality is sharp: for decomposable w the Clifford action is |w|
    times an orthogonal matrix, so |w . phi| = |w| |phi| exactly.  For generic
    2-forms it FAILS (the eigenvalue analysis of sums of commuting skew blocks
    gives |w . phi|^2 up to (sum_k |lambda_k|)^2 > sum_k lambda_k^2; e.g.
    w = e1^e2 + e3^e4 reaches |w . phi|^2 = 4 > |w|^2 = 2 on a real
    eigenspace).  The observed maximal excess over generic skew 2-forms is
    reported as diagnostic metadata, not as a pass/fail check.
    """
    if rep is None:
        rep = build_rep(8)
    rng = np.random.default_rng(seed)
    worst = -np.inf
    worst_vec = 0.0
    generic_excess = -np.inf
    gam = np.stack(rep.gammas)

    def act_of(skew):
        out = np.zeros((rep.dim, rep.dim))
        for a in range(rep.m):
            for b in range(a + 1, rep.m):
                out += skew[a, b] * (gam[a] @ gam[b])
        return out

    for _ in range(samples):
        # unit factors: the inequality is scale invariant and this keeps the
        # floating-point excess at machine scale
        u = rng.standard_normal(rep.m)
        u /= np.linalg.norm(u)
        v = rng.standard_normal(rep.m)
        v /= np.linalg.norm(v)
        phi = rng.standard_normal(rep.dim)
        phi /= np.linalg.norm(phi)
        act = rep.gamma(u) @ rep.gamma(v) + float(u @ v) * np.eye(rep.dim)
        norm_sq = float((u @ u) * (v @ v) - (u @ v) ** 2)
        worst = max(worst, float((act @ phi) @ (act @ phi)) - norm_sq)
        worst_vec = max(worst_vec,
                        abs(np.linalg.norm(rep.gamma(u) @ phi) - np.linalg.norm(u)))
        skew = rng.standard_normal((rep.m, rep.m))
        skew = (skew - skew.T) / 2.0
        gact = act_of(skew)
        gnorm = float(np.sum(skew[np.triu_indices(rep.m, 1)] ** 2))
        generic_excess = max(generic_excess,
                             float((gact @ phi) @ (gact @ phi)) - gnorm)
    report = Report(command="two-form-norm", seed=seed, params={"samples": samples})
    report.add("two-form-norm-excess", max(worst, 0.0), tol)
    report.add("vector-norm-equality", worst_vec, tol)
    report.extra["generic-form-max-excess"] = generic_excess
    return report


# -- quadrature identity ------------------------------------------------------------

@dataclass
class IntegralResult:
    lhs: float           # mean |d h|^2 (plus mean |delta h|^2 in general form)
    rhs: float           # mean (|nabla h|^2 + n |h|^2)
    rel_error: float
    divergence_max: float
    samples: int


def _integrand_means(h: SymTensorField, samples: int, seed: int,
                     include_divergence: bool, chunk: int = 100_000):
    d = h.ambient_dim
    cov = h.cov_grad
    rng = np.random.default_rng(seed)
    total = {"dh": 0.0, "nh": 0.0, "hh": 0.0, "div": 0.0}
    done = 0
    while done < samples:
        count = min(chunk, samples - done)
        pts = sample_sphere(d, count, rng)
        cv = cov(pts)                        # (p, a, i, j)
        hv = h.poly(pts)                     # (p, i, j)
        omega = (np.einsum("paib->piab", cv) - np.einsum("pbia->piab", cv))
        total["dh"] += float(0.5 * np.einsum("piab,piab->", omega, omega))
        total["nh"] += float(np.einsum("paij,paij->", cv, cv))
        total["hh"] += float(np.einsum("pij,pij->", hv, hv))
        if include_divergence:
            div = -np.einsum("paia->pi", cv)
            total["div"] += float(np.einsum("pi,pi->", div, div))
        done += count
    return {k: v / samples for k, v in total.items()}


def integral_identity(h: SymTensorField, samples: int = 1_000_000, seed: int = 0,
                      div_check_samples: int = 50,
                      div_tol: float = DIVERGENCE_TOL) -> IntegralResult:
    """Monte-Carlo check of int |d h|^2 = int (|nabla h|^2 + n |h|^2).

    Requires a trace-free input with vanishing divergence; inputs failing the
    divergence precheck are rejected.  Both sides are uniform-sphere averages
    (the common volume factor cancels).
    """
    d = h.ambient_dim
    n = d - 1
    rng = np.random.default_rng(seed + 1)
    div_worst = 0.0
    for x in sample_sphere(d, div_check_samples, rng):
        div_worst = max(div_worst, float(np.abs(deltanabla(h, x)).max()))
    if div_worst > div_tol:
        raise ValueError(f"input is not divergence-free (defect {div_worst:.2e})")
    means = _integrand_means(h, samples, seed, include_divergence=False)
    lhs = means["dh"]
    rhs = means["nh"] + n * means["hh"]
    rel = abs(lhs - rhs) / max(abs(rhs), 1e-300) if rhs else abs(lhs - rhs)
    return IntegralResult(lhs=lhs, rhs=rhs, rel_error=rel,
                          divergence_max=div_worst, samples=samples)


def integral_identity_general(h: SymTensorField, samples: int = 1_000_000,
                              seed: int = 0) -> IntegralResult:
    """The same quadrature identity without the divergence-free hypothesis:

    int (|delta h|^2 + |d h|^2) = int (|nabla h|^2 + n |h|^2)

    holds for every trace-free symmetric tangential field (integrating the
    Weitzenboeck identity against h), and validates the quadrature machinery
    on inputs with genuinely nonzero divergence.
    """
    d = h.ambient_dim
    n = d - 1
    means = _integrand_means(h, samples, seed, include_divergence=True)
    lhs = means["dh"] + means["div"]
    rhs = means["nh"] + n * means["hh"]
    rel = abs(lhs - rhs) / max(abs(rhs), 1e-300) if rhs else abs(lhs - rhs)
    return IntegralResult(lhs=lhs, rhs=rhs, rel_error=rel,
                          divergence_max=float("nan"), samples=samples)


# -- test fields ----------------------------------------------------------------------

def random_trace_free_field(n: int, degree: int, rng: np.random.Generator,
                            scale: float = 1.0) -> SymTensorField:
    """Random tangential trace-free field on S^n.

    A symmetric ambient matrix polynomial of total degree <= degree is
    projected tangentially and its pointwise trace removed; the seed degree
    is the stated one (projection raises the representation degree, not the
    restriction to the sphere).
    """
    d = n + 1
    exps = _exponents_up_to(d, degree)
    seed_poly = PolyField(d, (d, d))
    for exp in exps:
        mat = rng.standard_normal((d, d)) * scale
        seed_poly.add_term(exp, (mat + mat.T) / 2.0)
    proj = PolyField.tangent_projector(d)
    sandwiched = pf_apply_matrix(proj, pf_apply_matrix(proj, seed_poly, 1), 0)
    trace = pf_partial_trace(sandwiched, 0, 1)
    h_poly = sandwiched - pf_scalar_mul(trace.scale(1.0 / n), proj)
    return SymTensorField(h_poly, trace_free=True)


def _exponents_up_to(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(nvars):
        out = [e + (k,) for e in out for k in range(degree + 1)]
    return [e for e in out if sum(e) <= degree]


def berger_field_s3() -> SymTensorField:
    """Divergence-free trace-free field on S^3: xi (x) xi - g/3 for Killing xi.

    xi(x) = F x with F a quaternionic complex structure; the field is the
    tangent direction of the Berger-sphere deformation and has exactly
    vanishing divergence.
    """
    from .clifford import quaternion_left_mult

    f = quaternion_left_mult([0, 1, 0, 0])
    xi = PolyField.linear_map(f)
    outer = pf_tensordot(xi, xi, axes=0)
    h_poly = outer - PolyField.tangent_projector(4).scale(1.0 / 3.0)
    return SymTensorField(h_poly, trace_free=True)


def harmonic_hessian_field_s2() -> SymTensorField:
    """Trace-free tangential Hessian of the degree-2 harmonic x1 x2 on S^2.

    Not divergence-free (delta h = 2 d f), which is exactly why it exercises
    the general quadrature identity.
    """
    d = 3
    # tangential gradient of f = x1 x2
    grad_f = PolyField(d, (d,))
    e = np.eye(d)
    grad_f.add_term((0, 1, 0), e[0])
    grad_f.add_term((1, 0, 0), e[1])
    proj = PolyField.tangent_projector(d)
    df = pf_apply_matrix(proj, grad_f, 0)
    hess = tangential_gradient(df)
    trace = pf_partial_trace(hess, 0, 1)
    h_poly = hess - pf_scalar_mul(trace.scale(0.5), proj)
    return SymTensorField(h_poly, trace_free=True)


def curvature_term_report(h: SymTensorField, samples: int = 10, seed: int = 0,
                          tol: float = 1e-8) -> Report:
    """h o Ric = (n-1) h and Rop(h)(X) = sum_i R_{X, h(E_i)} E_i = -h(X).

    The curvature term is evaluated through the exact curvature machinery
    (nested covariant derivatives of frame extensions), not the sphere
    formula, so this cross-validates the convention wiring.
    """
    from .sphere import curvature_vec, tangential_extension

    d = h.ambient_dim
    n = d - 1
    rng = np.random.default_rng(seed)
    worst = 0.0
    for x in sample_sphere(d, samples, rng):
        frame = tangent_frame(x)
        hmat = h(x)
        xv = frame[0]
        rop = np.zeros(d)
        for e in frame:
            # R_{X, h(e)} e via exact differentiation of the extension of e
            rop += curvature_vec(x, hmat @ e, xv, tangential_extension(e, d))
        target = np.trace(hmat) * xv - hmat @ xv
        worst = max(worst, float(np.abs(rop - target).max()))
        if h.trace_free:
            worst = max(worst, float(np.abs(rop + hmat @ xv).max()))
    report = Report(command="curvature-term", seed=seed, params={"samples": samples})
    report.add("curvature-term", worst, tol)
    return report


def linearized_trace_identity(n: int, rng: np.random.Generator) -> float:
    """Defect of 2 (tr A)(tr B) - 2 tr(A B) = (n-1) tr B at A = Id/2.

    Differentiating the scalar constraint along a curve of endomorphisms
    through A = Id/2 forces the variation to be trace-free.
    """
    b = rng.standard_normal((n, n))
    b = (b + b.T) / 2.0
    a = 0.5 * np.eye(n)
    lhs = 2.0 * np.trace(a) * np.trace(b) - 2.0 * np.trace(a @ b)
    rhs = (n - 1) * np.trace(b)
    return abs(lhs - rhs)
