"""Code-based steganography with punctured codes.

Puncture a linear code until its covering radius equals the correction
capability of an efficient bounded-distance decoder; the resulting
stegoscheme never fails to embed.
"""

from ._backend import BACKEND
from .bch import BCHCode, bch_code, bm_decode, decode_success_count
from .codes import (
    CosetLeaderTable,
    LinearCode,
    ResourceLimitError,
    average_radius,
    ball_volume,
    coset_leader_table,
    covering_radius,
    hamming_code,
    leader_weight_distribution,
    syndrome,
    syndrome_table_size_mb,
)
from .galois import DEFAULT_PRIMITIVE_POLYS, FieldSpec, gf_inv, gf_mul, gf_pow
from .linalg2 import (
    BitMatrix,
    BitVector,
    delete_columns,
    project,
    rref,
    systematic_form,
)
from .puncturing import (
    PunctureResult,
    StopPolicy,
    embedding_probability,
    find_puncture_set,
    proposition3_check,
    punctured_decode_list,
    punctured_decode_nearest,
    punctured_decode_nearest_info,
)
from .stego import (
    SchemeParams,
    StegoScheme,
    embed,
    empirical_probability,
    entropy_bound,
    extract,
    scheme_params,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BCHCode",
    "BitMatrix",
    "BitVector",
    "CosetLeaderTable",
    "DEFAULT_PRIMITIVE_POLYS",
    "FieldSpec",
    "LinearCode",
    "PunctureResult",
    "ResourceLimitError",
    "SchemeParams",
    "StegoScheme",
    "StopPolicy",
    "average_radius",
    "ball_volume",
    "bch_code",
    "bm_decode",
    "coset_leader_table",
    "covering_radius",
    "decode_success_count",
    "delete_columns",
    "embed",
    "embedding_probability",
    "empirical_probability",
    "entropy_bound",
    "extract",
    "find_puncture_set",
    "gf_inv",
    "gf_mul",
    "gf_pow",
    "hamming_code",
    "leader_weight_distribution",
    "project",
    "proposition3_check",
    "punctured_decode_list",
    "punctured_decode_nearest",
    "punctured_decode_nearest_info",
    "rref",
    "scheme_params",
    "syndrome",
    "syndrome_table_size_mb",
    "systematic_form",
]
