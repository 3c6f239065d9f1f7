"""Space-time lattice codes with quaternionic block structure.

Construction of explicit fast-decodable codes, verification of their
algebraic structure, lattice figures of merit, discriminant bounds,
exact ML sphere decoding and Rayleigh-fading BLER simulation.
"""

__version__ = "0.1.0"

from .codebook import (  # noqa: F401
    CODE_FACTORIES,
    CodeSpec,
    Constellation,
    encode,
    get_code,
    pam,
    spherical_codebook,
)
from .cda import (  # noqa: F401
    CyclicAlgebraSpec,
    build_quaternionizer,
    is_alamouti_blocks,
    left_regular,
    quaternionize,
)
from .fastdecode import (  # noqa: F401
    ComplexityReport,
    complexity_estimate,
    discover_pattern,
    effective_generator,
    exhaustive_ml,
    sphere_decode,
)
from .latticemetrics import (  # noqa: F401
    analyze_code,
    check_nvd,
    min_det_search,
    normalized_min_det,
    volume,
)
from .linalg import frob_inner, qr_decompose, realify  # noqa: F401
