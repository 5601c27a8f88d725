"""wia: exact quadratic forms, Witt rings and algebras with involution
over Q and quadratic fields."""

from .exactnum import (
    BaseField,
    FieldElem,
    Ordering,
    Place,
    QQ,
    Rational,
    REAL_PLACE,
    hilbert_symbol,
    is_square,
    legendre,
    parse_elem,
    quad_field,
    rat_elem,
    same_square_class,
    sign_at,
    square_class,
    sum_of_squares_length,
)
from .qform import (
    QForm,
    WittDecomposition,
    is_hyperbolic_form,
    is_isotropic,
    is_pfister_multiple,
    isometric,
    multiple,
    perp,
    pfister,
    power,
    qform,
    represents,
    scale,
    signature,
    tensor,
    witt_decompose,
    witt_equivalent,
    zero_form,
)
from .wittring import (
    INFINITE,
    LewisPolynomial,
    Preordering,
    WittClass,
    delta,
    digit_count,
    factorial_two_adic,
    lewis_eval,
    lewis_factors,
    preordering,
    t_hyperbolic_form,
    t_isotropic,
    t_positive,
    t_signature,
    torsion_order,
    witt_add,
    witt_class,
    witt_int,
    witt_mul,
    witt_neg,
)
from .involution import (
    AdInv,
    IdInv,
    InvProfile,
    MultipleInv,
    QuatOO,
    QuatSS,
    TensorInv,
    TraceForm,
    UnitCan,
    embeds_quadratic_etale,
    flip_flop,
    g_membership,
    inv_signature,
    profile,
    quat_op,
    quat_orth_iso,
    quat_po,
    sym_skew_dims,
    trace_form,
)
from .hyperbolic import (
    RealClosureClass,
    classify_at_real_closure,
    gkar_bound_check,
    hyperbolic_over_sqrt,
    is_hyperbolic_inv,
    t_hyperbolic_inv,
    two_power_hyperbolic_orth_quat,
    weakly_hyperbolic,
)
from .oracle import (
    SearchBudget,
    find_isotropic_vector,
    norm_equation,
    sum_squares_witness,
)
from .verdict import Verdict

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
