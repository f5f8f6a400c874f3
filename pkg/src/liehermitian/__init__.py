"""Left-invariant Hermitian geometry from structure constants.

The package computes torsion, canonical connections and Chern curvature
of a left-invariant Hermitian metric presented through the structure
constants of a unitary frame, decides the standard metric conditions,
and classifies two solvable families through explicit normal forms.
"""

__version__ = "1.0.0"

from .errors import (
    LieHermitianError,
    IndexOutOfRange,
    DuplicateEntry,
    AntisymmetryViolation,
    DimensionMismatch,
    NotUnitary,
    InvalidDegree,
    InvalidAlgebra,
    PatternMismatch,
    IntegrabilityViolation,
    NegativeLambda,
    ParameterDomain,
    NotUnimodular,
    CrossCheckFailure,
    Singular,
    NotCompatible,
    NotAstheno,
    ParseError,
)
from .algebra import (
    Algebra,
    make_algebra,
    build_general,
    change_frame,
    check_unitary,
    default_tolerance,
    is_nilpotent,
    jacobi_residual,
    lower_central_dims,
    max_abs,
    unimodularity_defect,
)
from .hermitian import (
    bismut_connection,
    bismut_ricci_blocks,
    bismut_ricci_form,
    bismut_trace_form,
    chern_connection,
    chern_curvature,
    chern_ricci_form,
    chern_scalar,
    chern_torsion,
    chern_trace_form,
    curvature_hermitian_residual,
    gauduchon_connection,
    property_report,
    ricci_first,
    ricci_second,
    ricci_third,
    scalar_identity_residuals,
    scalar_s,
    scalar_s_hat,
    skt_tensor,
    torsion_bianchi_residual,
    torsion_trace,
)
from .forms import (
    exterior_d,
    partial_d,
    partial_dbar,
    kaehler_form,
    kaehler_power,
    del_delbar_residual,
    top_holomorphic_form,
    top_form_d_check,
)
from .almost_abelian import (
    AlmostAbelianData,
    aa_report,
    aa_residuals,
    aa_scalars,
    aa_astheno_profile,
    build_almost_abelian,
    extract_almost_abelian,
)
from .codim2 import (
    Codim2Data,
    build_codim2,
    c2_btp_residuals,
    c2_report,
    c2_residuals,
    c2_scalars,
    chern_flat_normal_form,
    classify_btp,
    extract_codim2,
    from_almost_abelian,
    integrability_residuals,
    make_btpv0,
    make_btpv1,
    make_btpv2,
    paired_takagi_factor,
    rotate_codim2,
    spectrum_distance,
)
from .serial import (
    canonical_json,
    load_spec,
    materialize,
    spec_from_data,
    validate_spec,
)
from .verify import run_battery
