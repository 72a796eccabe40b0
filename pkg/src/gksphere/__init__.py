"""Numerical verification toolkit for generalized Killing spinors on round spheres."""

from .clifford import (CliffordRep, HalfSpinorSplit, build_rep,
                       half_spinor_split, min_module_dim,
                       radon_hurwitz_admissible, radon_hurwitz_number,
                       skew_to_clifford, two_form_action)
from .constructions import (Dim15Witness, QuaternionicStructure, TwoEigData,
                            TwoEigGKS, TwoEigVerdict, canonical_s7,
                            cone_lemma_report, cross_product_from_spinor,
                            dim15_obstruction, hyperkaehler_structure,
                            match_cross_tables, octonion_cross_table,
                            rho_module_check, s3_example, sasakian_report,
                            solve_psi1, sp2_basis, two_eig_classify)
from .polyfield import PolyField
from .report import Check, Report
from .sphere import (SymEndField, SymTensorField, curvature_operator_2form,
                     curvature_vec, killing_endo, killing_field_from_skew,
                     levi_civita_vec, sample_sphere, tangent_frame,
                     tangent_project, tangential_gradient)
from .spinors import (SphereSpinorModel, SpinorField, chirality_projectors,
                      killing_basis, sphere_volume_poly, standard_model)
from .verifier import (ExtractResult, GKSReport, check_constraints,
                       check_curvature_eq, check_gks,
                       chirality_pairing_pipeline, extract_endo,
                       full_gks_report)
from .weitzenbock import (algebraic_identity, berger_field_s3,
                          check_weitzenbock, deltanabla, dnabla,
                          harmonic_hessian_field_s2, integral_identity,
                          integral_identity_general, random_trace_free_field,
                          two_form_norm_inequality)

__version__ = "0.1.0"
