"""Explicit generalized Killing spinors and the two-eigenvalue classification.

Contents:

* the S^3 example psi = c(xi) Phi, xi a unit Killing field from a quaternionic
  complex structure, Phi a Killing spinor with constant +1/2; its endomorphism
  has spectrum {1/2, -3/2, -3/2};
* the canonical spinor on S^7 built from the flat hyperkaehler structure of
  R^8 = H^2: the unique unit half-spinor killed by sp(2) and by the Kaehler
  2-form of J_1 generates a field with spectrum {1/2 x3, -3/2 x4};
* the eigendistribution module checks (rho_V action and modified connection);
* the exhaustive two-eigenvalue admissibility verdict (only S^3 and S^7
  survive; S^15 is excluded by the moving cross-product obstruction, which is
  exhibited numerically here as well).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import numpy as np

from .clifford import (CliffordRep, build_rep, half_spinor_split,
                       min_module_dim, quaternion_left_mult,
                       quaternion_right_mult, radon_hurwitz_admissible,
                       skew_to_clifford)
from .polyfield import (PolyField, pf_apply_matrix, pf_contract_vector,
                        pf_tensordot)
from .report import Report
from .sphere import (SymEndField, sample_sphere, tangent_frame,
                     tangent_project)
from .spinors import (SphereSpinorModel, SpinorField, projector_basis,
                      standard_model)


# -- quaternionic structure on R^8 ---------------------------------------------

@dataclass(frozen=True)
class QuaternionicStructure:
    """Three anticommuting orthogonal complex structures with J1 J2 = J3."""

    j1: np.ndarray
    j2: np.ndarray
    j3: np.ndarray

    def __post_init__(self):
        js = (self.j1, self.j2, self.j3)
        eye = np.eye(js[0].shape[0])
        for a, ja in enumerate(js):
            if not np.allclose(ja @ ja, -eye):
                raise ValueError("J_i^2 != -Id")
            if not np.allclose(ja.T, -ja):
                raise ValueError("J_i is not skew")
            for jb in js[a + 1:]:
                if not np.allclose(ja @ jb + jb @ ja, 0.0):
                    raise ValueError("J_i do not anticommute")
        if not np.allclose(self.j1 @ self.j2, self.j3):
            raise ValueError("J1 J2 != J3")

    @property
    def triple(self):
        return (self.j1, self.j2, self.j3)


def hyperkaehler_structure() -> QuaternionicStructure:
    """Right multiplication by -i, -j, -k on H^2 = R^8 (commutes with Sp(2))."""
    blocks = [quaternion_right_mult(q) for q in
              ([0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1])]
    eye2 = np.eye(2)
    return QuaternionicStructure(*(np.kron(eye2, b) for b in blocks))


def sp2_basis(quat: QuaternionicStructure) -> np.ndarray:
    """Orthonormal basis of the skew matrices commuting with J1, J2, J3.

    Obtained by averaging all elementary 2-forms over conjugation by the
    quaternion group generated by the J_i, then rank-reducing; the result is
    the 10-dimensional symplectic algebra acting on R^8.
    """
    d = quat.j1.shape[0]
    projected = []
    for a in range(d):
        for b in range(a + 1, d):
            s = np.zeros((d, d))
            s[a, b], s[b, a] = 1.0, -1.0
            avg = s.copy()
            for j in quat.triple:
                avg -= j @ s @ j
            projected.append(avg.ravel() / 4.0)
    mat = np.stack(projected)
    u, sv, vt = np.linalg.svd(mat, full_matrices=False)
    rank = int(np.sum(sv > 1e-10))
    basis = vt[:rank].reshape(rank, d, d)
    return basis


# -- the canonical half spinor ---------------------------------------------------

@dataclass
class Psi1Result:
    value: np.ndarray            # coordinates in the chosen half-spinor space
    basis: np.ndarray            # columns: the chosen half-space inside R^16
    positive_half: bool          # which volume eigenspace carried the kernel
    kernel_dim_sp2: int
    kernel_dim_full: int


def solve_psi1(rep: CliffordRep, quat: QuaternionicStructure) -> Psi1Result:
    """Unit half-spinor killed by sp(2) and by the Kaehler form of J1.

    The sp(2) Clifford actions alone leave a 3-dimensional kernel inside one
    volume half-space; adding the Kaehler 2-form of J1 cuts it to dimension 1.
    The produced vector is normalized with its first nonzero coordinate
    positive.
    """
    if rep.m != 8:
        raise ValueError("the canonical spinor lives in a Cl_8 module")
    split = half_spinor_split(rep)
    sp2 = sp2_basis(quat)
    omega1 = skew_to_clifford(rep, quat.j1.T)  # Kaehler form w(u,v) = <J1 u, v>

    for positive in (True, False):
        proj = split.proj_plus if positive else split.proj_minus
        basis = projector_basis(proj)
        acts = [basis.T @ skew_to_clifford(rep, s) @ basis for s in sp2]
        stacked = np.concatenate(acts, axis=0)
        kernel = _nullspace(stacked)
        if kernel.shape[1] == 0:
            continue
        dim_sp2 = kernel.shape[1]
        full = np.concatenate(acts + [basis.T @ omega1 @ basis], axis=0)
        kernel_full = _nullspace(full)
        dim_full = kernel_full.shape[1]
        if dim_full != 1:
            raise RuntimeError(
                f"expected a one-dimensional joint kernel, got {dim_full}")
        vec = kernel_full[:, 0]
        lead = np.flatnonzero(np.abs(vec) > 1e-9)[0]
        if vec[lead] < 0:
            vec = -vec
        vec = vec / np.linalg.norm(vec)
        return Psi1Result(value=vec, basis=basis, positive_half=positive,
                          kernel_dim_sp2=dim_sp2, kernel_dim_full=dim_full)
    raise RuntimeError("no volume half-space carries the invariant spinor")


def _nullspace(mat: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    u, sv, vt = np.linalg.svd(mat, full_matrices=True)
    rank = int(np.sum(sv > tol * max(mat.shape)))
    return vt[rank:].T.copy()


# -- two-eigenvalue bundles ------------------------------------------------------

@dataclass
class TwoEigGKS:
    """A generalized Killing spinor with a two-eigenvalue endomorphism."""

    psi: SpinorField
    endo: SymEndField
    lam: float
    mu: float
    lam_fields: list[PolyField]       # polynomial sections spanning T^lambda
    proj_lam: PolyField               # pointwise projector onto T^lambda
    skews: list[np.ndarray]           # defining skew matrices of the lam fields

    @property
    def model(self) -> SphereSpinorModel:
        return self.psi.model


def _two_eig_endo(skews: list[np.ndarray], lam: float, mu: float,
                  dim: int) -> tuple[SymEndField, PolyField]:
    """Endomorphism with eigenvalue lam on span{F_i x} and mu on the rest."""
    proj = PolyField(dim, (dim, dim))
    for f in skews:
        xi = PolyField.linear_map(f)
        proj = proj + pf_tensordot(xi, xi, axes=0)
    tang = PolyField.tangent_projector(dim)
    endo_poly = proj.scale(lam - mu) + tang.scale(mu)
    return SymEndField(endo_poly), proj


def s3_example() -> TwoEigGKS:
    """The S^3 generalized Killing spinor with spectrum {1/2, -3/2, -3/2}.

    Built as psi = c(xi) Phi where xi(x) = F x for a quaternionic complex
    structure F and Phi runs through the constant (+1/2 Killing) spinors; the
    compatible F and the admissible constants are found by a deterministic
    nullspace search over the twelve quaternion multiplication candidates.
    """
    model = standard_model(3)
    d = 4
    units = ([0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1])
    candidates = []
    for q in units:
        candidates.append(quaternion_left_mult(q))
        candidates.append(quaternion_right_mult(q))
    candidates += [-c for c in candidates]

    rng = np.random.default_rng(12345)
    pts = sample_sphere(d, 8, rng)
    for f in candidates:
        endo, proj = _two_eig_endo([f], 0.5, -1.5, d)
        rows = []
        for x in pts:
            mat_a = endo(x)
            gmat = model.rho(f @ x, x)       # psi(x) = rho(xi . x) Phi
            for e in tangent_frame(x):
                # D_e [rho(F y . y)] Phi + conn - c(A e) psi, acting on Phi
                dg = model.rho(f @ e, x) + model.rho(f @ x, e)
                conn = model.connection_term(x, e)
                target = model.clifford_tangent(x, mat_a @ e)
                rows.append(dg + conn @ gmat - target @ gmat)
        kernel = _nullspace(np.concatenate(rows, axis=0))
        if kernel.shape[1] == 0:
            continue
        if kernel.shape[1] != model.dim:
            raise RuntimeError("unexpected compatibility kernel dimension "
                               f"{kernel.shape[1]}")
        phi = kernel[:, 0]
        lead = np.flatnonzero(np.abs(phi) > 1e-9)[0]
        if phi[lead] < 0:
            phi = -phi
        phi /= np.linalg.norm(phi)
        # psi(y) = rho(F y . y) phi, a degree-2 polynomial field
        psi_poly = _even_pair_field(model, PolyField.linear_map(f),
                                    PolyField.position(d), phi)
        psi = SpinorField(model, psi_poly)
        return TwoEigGKS(psi=psi, endo=endo, lam=0.5, mu=-1.5,
                         lam_fields=[PolyField.linear_map(f)],
                         proj_lam=proj, skews=[f])
    raise RuntimeError("no quaternionic structure is compatible with the "
                       "constant Killing family")


def _even_pair_field(model: SphereSpinorModel, u_field: PolyField,
                     v_field: PolyField, value: np.ndarray) -> PolyField:
    """Polynomial field x -> rho(u(x) . v(x)) value."""
    d = model.ambient_dim
    lstack = PolyField.constant(model.lmats, d)
    mstack = PolyField.constant(model.mmats, d)
    lu = pf_tensordot(u_field, lstack, axes=([0], [0]))
    mv = pf_tensordot(v_field, mstack, axes=([0], [0]))
    mv_val = pf_apply_matrix(mv, PolyField.constant(value, d), 0)
    return pf_apply_matrix(lu, mv_val, 0)


def canonical_s7() -> tuple[TwoEigGKS, Psi1Result, QuaternionicStructure]:
    """The canonical 3-Sasakian generalized Killing spinor on S^7.

    psi0(x) = x . (J1 x) . Psi1 in the half-spinor model of the flat R^8 cone,
    with expected eigenvalues +1/2 on span{J_i x} and -3/2 on its tangential
    complement.
    """
    rep = build_rep(8)
    quat = hyperkaehler_structure()
    psi1 = solve_psi1(rep, quat)
    split = half_spinor_split(rep)
    model = SphereSpinorModel.from_half_spinor(rep, split,
                                               positive=psi1.positive_half)
    d = 8
    # psi1.value is expressed in the same deterministic half-space basis as
    # the model coordinates (projector_basis in both places)
    psi_poly = _even_pair_field(model, PolyField.position(d),
                                PolyField.linear_map(quat.j1), psi1.value)
    psi = SpinorField(model, psi_poly)
    endo, proj = _two_eig_endo(list(quat.triple), 0.5, -1.5, d)
    bundle = TwoEigGKS(psi=psi, endo=endo, lam=0.5, mu=-1.5,
                       lam_fields=[PolyField.linear_map(j) for j in quat.triple],
                       proj_lam=proj, skews=list(quat.triple))
    return bundle, psi1, quat


def cone_lemma_report(bundle: TwoEigGKS, psi1: Psi1Result,
                      quat: QuaternionicStructure, samples: int = 30,
                      seed: int = 0, tol: float = 1e-8) -> Report:
    """Flat-cone derivative identity for the unrestricted canonical spinor.

    Checks D_X Psi0 = Abar(X) . x . Psi0 at sphere points for all ambient
    directions X, with Abar = 0 on span{x, J_i x} and -2 elsewhere; the radial
    rescaling of Psi0 contributes the exact correction -2 <x, X> Psi0.
    """
    model = bundle.model
    rng = np.random.default_rng(seed)
    pts = sample_sphere(8, samples, rng)
    grad = bundle.psi.grad
    worst = 0.0
    for x in pts:
        val = bundle.psi(x)
        span = np.stack([x] + [j @ x for j in quat.triple])
        for a in range(8):
            e = np.eye(8)[a]
            dpsi = grad(x)[a] - 2.0 * x[a] * val
            abar = -2.0 * (e - span.T @ (span @ e))
            rhs = model.rho(abar, x) @ val
            worst = max(worst, float(np.abs(dpsi - rhs).max()))
    report = Report(command="cone-lemma", seed=seed, params={"samples": samples})
    report.add("cone-derivative", worst, tol)
    return report


def sasakian_report(quat: QuaternionicStructure, tol: float = 1e-12) -> Report:
    """F_i^2 = -Id and pairwise anticommutation for the defining skews."""
    js = quat.triple
    eye = np.eye(8)
    worst_sq = max(float(np.abs(j @ j + eye).max()) for j in js)
    worst_anti = 0.0
    for a in range(3):
        for b in range(a + 1, 3):
            worst_anti = max(worst_anti,
                             float(np.abs(js[a] @ js[b] + js[b] @ js[a]).max()))
    report = Report(command="sasakian-relations")
    report.add("structure-squares", worst_sq, tol)
    report.add("structure-anticommute", worst_anti, tol)
    return report


# -- eigendistribution module checks ---------------------------------------------

def rho_module_check(bundle: TwoEigGKS, samples: int = 30, seed: int = 0,
                     tol: float = 1e-7) -> Report:
    """Clifford module structure of T^lambda acting on T^mu.

    For sections V of the lambda-eigendistribution let
    rho_V(X) := -(nabla_X V)^mu.  Checks c(X) c(V) psi = c(rho_V(X)) psi and
    rho_V(rho_V(X)) = -|V|^2 X on T^mu, plus invariance of span{c(xi_i) psi}
    under the modified connection nabla - (1/2) c(.).
    """
    model = bundle.model
    d = model.ambient_dim
    rng = np.random.default_rng(seed)
    pts = sample_sphere(d, samples, rng)
    tang = PolyField.tangent_projector(d)
    proj_mu = tang - bundle.proj_lam

    worst_intertwine = 0.0
    worst_square = 0.0
    worst_modified = 0.0

    grads = [vf.gradient() for vf in bundle.lam_fields]
    sections = [_clifford_section(model, vf, bundle.psi)
                for vf in bundle.lam_fields]

    for x in pts:
        val = bundle.psi(x)
        pmu = proj_mu(x)
        mu_frame = _distribution_frame(pmu, x)
        for vf, gf in zip(bundle.lam_fields, grads):
            v = vf(x)
            # rho_V as a matrix: X -> -P_mu tangential(D_X V)
            rho_mat = np.zeros((d, d))
            gval = gf(x)
            for a in range(d):
                rho_mat[:, a] = -pmu @ tangent_project(x, gval[a])
            for xv in mu_frame:
                lhs = model.clifford_tangent(x, xv) @ (
                    model.clifford_tangent(x, v) @ val)
                rhs = model.clifford_tangent(x, rho_mat @ xv) @ val
                worst_intertwine = max(worst_intertwine,
                                       float(np.abs(lhs - rhs).max()))
                sq = rho_mat @ (rho_mat @ xv) + float(v @ v) * xv
                worst_square = max(worst_square, float(np.abs(sq).max()))

        # modified connection: nabla_X (c(xi_i) psi) - (1/2) c(X) (c(xi_i) psi)
        span = np.stack([model.clifford_tangent(x, vf(x)) @ val
                         for vf in bundle.lam_fields], axis=1)
        q, _ = np.linalg.qr(span)
        for xv in tangent_frame(x):
            for cpsi in sections:
                der = cpsi.covariant_derivative(x, xv)
                der -= 0.5 * model.clifford_tangent(x, xv) @ cpsi(x)
                resid = der - q @ (q.T @ der)
                worst_modified = max(worst_modified,
                                     float(np.linalg.norm(resid)))

    report = Report(command="rho-module", seed=seed, params={"samples": samples})
    report.add("rho-intertwine", worst_intertwine, tol)
    report.add("rho-square", worst_square, tol)
    report.add("modified-connection", worst_modified, tol)
    return report


def _clifford_section(model: SphereSpinorModel, vfield: PolyField,
                      psi: SpinorField) -> SpinorField:
    """The spinor field x -> c_x(V(x)) psi(x) for a tangential V."""
    d = model.ambient_dim
    lstack = PolyField.constant(model.lmats, d)
    mstack = PolyField.constant(model.mmats, d)
    lv = pf_tensordot(vfield, lstack, axes=([0], [0]))
    mx = pf_tensordot(PolyField.position(d), mstack, axes=([0], [0]))
    return SpinorField(model, pf_apply_matrix(
        lv, pf_apply_matrix(mx, psi.poly, 0), 0))


def _distribution_frame(proj: np.ndarray, x) -> list[np.ndarray]:
    """Orthonormal basis of the range of a pointwise tangential projector."""
    vals, vecs = np.linalg.eigh(proj)
    cols = [vecs[:, i] for i in range(len(vals)) if vals[i] > 0.5]
    return cols


# -- two-eigenvalue classification ------------------------------------------------

REASONS = ("constraint-elm-failed", "eigenvalue-not-half", "mu-not-minus-3/2",
           "multiplicity-q-ne-p+1", "radon-hurwitz-fail",
           "dim15-cross-product-obstruction", "ok")


@dataclass(frozen=True)
class TwoEigData:
    n: int
    lam: Fraction
    mu: Fraction
    p: int
    q: int

    def __post_init__(self):
        if self.p + self.q != self.n:
            raise ValueError("multiplicities must add up to the dimension")
        if self.p < 1 or self.q < 1:
            raise ValueError("multiplicities must be positive")


@dataclass(frozen=True)
class TwoEigVerdict:
    admissible: bool
    reason: str
    detail: str = ""

    def __post_init__(self):
        if self.reason not in REASONS:
            raise ValueError(f"unknown reason {self.reason}")
        if self.admissible != (self.reason == "ok"):
            raise ValueError("admissible iff reason is ok")


def two_eig_classify(data: TwoEigData) -> TwoEigVerdict:
    """Admissibility of a two-eigenvalue symmetric endomorphism on S^n.

    Applies, in order: the trace constraint
    (p lam + q mu)^2 - (p lam^2 + q mu^2) = n(n-1)/4; one eigenvalue equal to
    +-1/2; orientation normalization to lam = 1/2; mu = -3/2; q = p + 1;
    Radon-Hurwitz admissibility of a Cl_p module on R^q; and the dimension-15
    exclusion (the pointwise cross product induced by the Killing frame would
    have to be independent of the base point, which fails).
    """
    lam = Fraction(data.lam)
    mu = Fraction(data.mu)
    if lam == mu:
        raise ValueError("two-eigenvalue classification needs lam != mu; the "
                         "equal case is the ordinary Killing condition "
                         "lam = mu = +-1/2")
    n, p, q = data.n, data.p, data.q
    trace_sq = (p * lam + q * mu) ** 2 - (p * lam**2 + q * mu**2)
    if trace_sq != Fraction(n * (n - 1), 4):
        return TwoEigVerdict(False, "constraint-elm-failed",
                             "the trace constraint (p l + q m)^2 - (p l^2 + q m^2)"
                             " = n(n-1)/4 fails")
    half = Fraction(1, 2)
    variants = [(lam, mu, p, q), (mu, lam, q, p),
                (-lam, -mu, p, q), (-mu, -lam, q, p)]
    oriented = [v for v in variants if v[0] == half]
    if not oriented:
        return TwoEigVerdict(False, "eigenvalue-not-half",
                             "a two-eigenvalue endomorphism must have an "
                             "eigenvalue +-1/2")
    lam2, mu2, p2, q2 = oriented[0]
    if mu2 != Fraction(-3, 2):
        return TwoEigVerdict(False, "mu-not-minus-3/2",
                             "the second eigenvalue must be -3/2 after "
                             "normalizing the first to 1/2")
    if q2 != p2 + 1:
        return TwoEigVerdict(False, "multiplicity-q-ne-p+1",
                             "the multiplicities must satisfy q = p + 1")
    if not radon_hurwitz_admissible(p2, q2):
        return TwoEigVerdict(False, "radon-hurwitz-fail",
                             f"no Cl_{p2} module structure exists on R^{q2}")
    if n == 15:
        return TwoEigVerdict(False, "dim15-cross-product-obstruction",
                             "the induced R^7 cross product would be "
                             "independent of the base point, contradiction")
    return TwoEigVerdict(True, "ok")


# -- seven-dimensional cross products ---------------------------------------------

def cross_product_from_spinor(gammas, x) -> np.ndarray:
    """Cross product on R^7 induced by a unit module vector x in R^8.

    Solves (u ^ v) . x = P(u, v) . x; since {gamma_k x} is an orthonormal
    basis of the orthogonal complement of x, the solve reduces to projections.
    Returns the (7, 7, 7) array P[i, j, :] = P(e_i, e_j).
    """
    gammas = [np.asarray(g, dtype=float) for g in gammas]
    x = np.asarray(x, dtype=float)
    if len(gammas) != 7 or x.shape != (8,):
        raise ValueError("need a Cl_7 system on R^8 and a point of R^8")
    if abs(np.linalg.norm(x) - 1.0) > 1e-9:
        raise ValueError("base spinor must have unit norm")
    gx = np.stack([g @ x for g in gammas])          # (7, 8) orthonormal rows
    table = np.zeros((7, 7, 7))
    for i in range(7):
        gix = gammas[i] @ x
        for j in range(7):
            wedge = gammas[i] @ (gammas[j] @ x) + (1.0 if i == j else 0.0) * x
            table[i, j] = gx @ wedge
    return table


def octonion_cross_table() -> np.ndarray:
    """Brute-force structure constants of the octonionic cross product.

    Octonions via Cayley-Dickson over the quaternions:
    (a, b)(c, d) = (a c - conj(d) b, d a + b conj(c)); the cross product of
    imaginary units is the imaginary part of their product.
    """
    def conj(qv):
        return np.array([qv[0], -qv[1], -qv[2], -qv[3]])

    from .clifford import quaternion_product as qp

    def omult(u, v):
        a, b = u[:4], u[4:]
        c, d = v[:4], v[4:]
        return np.concatenate([qp(a, c) - qp(conj(d), b),
                               qp(d, a) + qp(b, conj(c))])

    table = np.zeros((7, 7, 7))
    units = np.eye(8)[1:]
    for i in range(7):
        for j in range(7):
            prod = omult(units[i], units[j])
            table[i, j] = prod[1:]
            # pure imaginary times pure imaginary: real part is -delta_ij
            assert abs(prod[0] + (1.0 if i == j else 0.0)) < 1e-12
    return table


def cross_product_axioms(table: np.ndarray, trials: int = 50,
                         seed: int = 0) -> dict[str, float]:
    """Defect of the cross product axioms for a (7,7,7) structure table."""
    rng = np.random.default_rng(seed)
    anti = float(np.abs(table + np.swapaxes(table, 0, 1)).max())
    ortho = 0.0
    norm = 0.0
    for _ in range(trials):
        u = rng.standard_normal(7)
        v = rng.standard_normal(7)
        w = np.einsum("ijk,i,j->k", table, u, v)
        ortho = max(ortho, abs(w @ u), abs(w @ v))
        target = (u @ u) * (v @ v) - (u @ v) ** 2
        norm = max(norm, abs(w @ w - target))
    return {"antisymmetry": anti, "orthogonality": ortho, "norm": norm}


def match_cross_tables(table_a: np.ndarray, table_b: np.ndarray):
    """Signed basis relabeling carrying one integer cross table to another.

    Both tables must have entries in {0, +-1} (Fano-plane type).  Returns a
    (permutation, signs) pair with
    table_a[i, j, k] = s_i s_j s_k table_b[perm[i], perm[j], perm[k]], or None.
    """
    def lines(t):
        out = set()
        for i in range(7):
            for j in range(7):
                for k in range(7):
                    if abs(t[i, j, k]) > 0.5:
                        out.add(frozenset((i, j, k)))
        return out

    la, lb = lines(table_a), lines(table_b)
    if len(la) != 7 or len(lb) != 7:
        return None

    def compatible(partial, i, target):
        # every fully mapped line of a must land on a line of b
        for line in la:
            if i in line and all(v in partial for v in line):
                image = frozenset(partial[v] for v in line)
                if image not in lb:
                    return False
        return True

    order = list(range(7))

    def backtrack(partial, used):
        if len(partial) == 7:
            yield dict(partial)
            return
        i = order[len(partial)]
        for target in range(7):
            if target in used:
                continue
            partial[i] = target
            if compatible(partial, i, target):
                yield from backtrack(partial, used | {target})
            del partial[i]

    for perm_map in backtrack({}, set()):
        perm = np.array([perm_map[i] for i in range(7)])
        permuted = table_b[np.ix_(perm, perm, perm)]
        for bits in product((1.0, -1.0), repeat=7):
            s = np.array(bits)
            if np.allclose(table_a, np.einsum("i,j,k,ijk->ijk", s, s, s, permuted)):
                return perm, s
    return None


# -- the dimension-15 obstruction ---------------------------------------------------

@dataclass
class Dim15Witness:
    diff_norms: np.ndarray        # Frobenius norms |P_x - P_y| over sampled pairs
    fraction_above: float         # fraction of pairs with norm > 0.1
    geodesic_residual: float      # max failure of span-closure of nabla_xi xi
    volume_defect: float          # defect of volume = +-Id on the two modules
    report: Report = None


def dim15_obstruction(trials: int = 100, seed: int = 0) -> Dim15Witness:
    """Witness that no two-eigenvalue spinor exists on S^15.

    Decomposes R^16 into the two inequivalent Cl_7 modules (volume acts as
    +Id and -Id), samples unit spinors x, y in the first one and reports
    |P_x - P_y|; a two-eigenvalue spinor would force all those to vanish.
    Also exhibits, at sphere points of S^15, the failure of the would-be
    Killing frame to span its own derivatives (totally geodesic failure).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rep = build_rep(7)
    eye = np.eye(8)
    sign = 1.0 if rep.volume[0, 0] > 0 else -1.0
    gammas1 = [sign * g for g in rep.gammas]          # volume = +Id
    gammas2 = [-g for g in gammas1]                   # volume = -Id
    vol1 = np.linalg.multi_dot(gammas1)
    vol2 = np.linalg.multi_dot(gammas2)
    volume_defect = max(float(np.abs(vol1 - eye).max()),
                        float(np.abs(vol2 + eye).max()))

    rng = np.random.default_rng(seed)
    diffs = []
    for _ in range(trials):
        x, y = sample_sphere(8, 2, rng)
        px = cross_product_from_spinor(gammas1, x)
        py = cross_product_from_spinor(gammas1, y)
        diffs.append(float(np.linalg.norm(px - py)))
    diffs = np.array(diffs)
    fraction = float(np.mean(diffs > 0.1))

    # Killing frame on S^15 from the block system F_i = diag(gamma_i, -gamma_i)
    fmats = [np.block([[g1, np.zeros((8, 8))], [np.zeros((8, 8)), g2]])
             for g1, g2 in zip(gammas1, gammas2)]
    geo = 0.0
    for x in sample_sphere(16, 10, rng):
        span = np.stack([f @ x for f in fmats])       # orthonormal rows
        for i in range(7):
            for j in range(7):
                if i == j:
                    continue
                v = tangent_project(x, fmats[j] @ (fmats[i] @ x))
                resid = v - span.T @ (span @ v)
                geo = max(geo, float(np.linalg.norm(resid)))

    report = Report(command="dim15-obstruction", seed=seed,
                    params={"trials": trials})
    report.add("volume-split", volume_defect, 1e-12)
    # witness checks are "must exceed a floor": report floor/actual against 1
    report.add("cross-product-moves", 1.0 - fraction, 0.05 + 1e-12)
    report.add("geodesic-failure", 1e-3 / geo if geo > 0 else np.inf, 1.0)
    report.extra["min-cross-diff"] = float(diffs.min())
    report.extra["max-cross-diff"] = float(diffs.max())
    report.extra["geodesic-residual"] = geo
    return Dim15Witness(diff_norms=diffs, fraction_above=fraction,
                        geodesic_residual=geo, volume_defect=volume_defect,
                        report=report)
