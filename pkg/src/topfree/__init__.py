"""Computing in free products of concrete Hausdorff topological groups:
word normal forms, wedge-space neighborhoods, and machine-checkable
separation certificates."""

from .errors import (
    CapExceeded,
    ConfigError,
    ConfigMismatch,
    EmptyIntersection,
    EmptyNeighborhood,
    ExhaustiveNotFinite,
    FormatError,
    GroupMismatch,
    IndexOutOfRange,
    LengthMismatch,
    PointsEqual,
    ProductIsIdentity,
    ShapeMismatch,
    TopfreeError,
    UnknownGroup,
    VariantMismatch,
    WitnessInExcluded,
    WordIsIdentity,
    WordSyntaxError,
)
from .groups import (
    FiniteSet,
    GroupConfig,
    GroupElement,
    GroupSpec,
    Interval,
    Neighborhood,
    PadicBall,
    config_to_json,
    demo_config,
    load_config,
)
from .rational import INFINITE_LEVEL, format_rational, padic_valuation, parse_rational
from .separation import (
    SeparationCertificate,
    SubtermProvenance,
    VerificationReport,
    Violation,
    certify_open_complement,
    check_certificate,
    derive_seed,
    separate_from_point,
    separate_word_from_identity,
    uniform_case,
    validate_certificate,
)
from .certfile import (
    certificate_from_text,
    certificate_to_text,
    read_certificate,
    write_certificate,
)
from .wedge import (
    AroundIdentity,
    AwayFromIdentity,
    IdentityDefaults,
    XPoint,
    around,
    away,
    check_condition_i,
    default_identity_neighborhood,
    enumerate_x_points,
    sample_x,
    x_contains,
    x_intersect,
)
from .words import (
    DEFAULT_CAP,
    IDENTITY,
    Letter,
    ProjectionReport,
    ReducedWord,
    UniformityComparison,
    UniformSubterm,
    Word,
    compare_uniformity,
    format_word,
    group_projection_report,
    letter,
    parse_reduced,
    parse_word,
    random_rewrite_oracle,
    reduce_word,
    subterm_value,
    uniform_subterms,
    word_inv,
    word_mul,
)

__version__ = "0.1.0"
