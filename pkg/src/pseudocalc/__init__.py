"""pseudocalc: generator-parameterized pseudo-arithmetic, pseudo-calculus and
integral-inequality verification.

A strictly monotone generator ``g`` mapping its domain onto ``[0, inf)``
induces an arithmetic by conjugation (``x (+) y = g^{-1}(g(x) + g(y))`` and
friends), together with derivatives, integrals and seminorms.  This package
builds that algebra for built-in or user-defined generators, computes the
calculus numerically, and verifies the Young / Holder / Minkowski /
Hermite-Hadamard inequality families in both generator directions.
"""

from .errors import (
    ConvergenceError,
    DepthExceeded,
    DivisionByZeroG,
    DomainError,
    LogDomainError,
    NegativeWeight,
    NumericError,
    ParameterError,
    PseudoCalcError,
    RangeError,
    UnknownInequality,
    ValidationError,
)
from .generator import (
    DEFAULT_EPS_CMP,
    DEFAULT_EPS_INV,
    Direction,
    GeneratorSpec,
    Interval,
    PseudoContext,
    ValidationCheck,
    ValidationReport,
    builtin_names,
    context_from_source,
    eval_g,
    eval_g_inv,
    g_prime_at,
    identity_spec,
    make_context,
    neglog_spec,
    power_spec,
    resolve_spec,
    spec_from_doc,
    validate_spec,
)
from .algebra import (
    BinaryKind,
    Ordering,
    PseudoValue,
    binary_op,
    cmp_g,
    leq_g,
    odot,
    pseudo_abs,
    pseudo_add,
    pseudo_div,
    pseudo_exp,
    pseudo_ln,
    pseudo_mul,
    pseudo_pow,
    pseudo_sub,
)
from .calculus import (
    DEFAULT_QUADRATURE,
    ConnectionReport,
    QuadratureConfig,
    QuadResult,
    SeminormFlavor,
    SeminormParams,
    check_seminorm_connection,
    classical_weighted_norm,
    g_derivative,
    g_integral,
    gh_integral,
    oplus_derivative,
    oplus_integral,
    quad,
    quad_full,
    seminorm,
    seminorm_image,
    stieltjes_weight,
)
from .inequalities import (
    VERDICT_TOLERANCE,
    ConvexityReport,
    ExpectedDirection,
    GlaResult,
    HHChain,
    InequalityVerdict,
    conjugate_index,
    gla_means,
    hermite_hadamard,
    hh_refined,
    holder,
    holder_general,
    holder_interpolation,
    is_pseudo_convex,
    minkowski,
    young,
)
from .suites import (
    CHECK_CSV_COLUMNS,
    SWEEP_CSV_COLUMNS,
    INEQUALITY_NAMES,
    ItemError,
    SuiteReport,
    VerdictRow,
    check_suite,
    run_sweep,
)

__version__ = "0.1.0"
