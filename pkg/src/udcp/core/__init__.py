"""Binary-code algebra: codes, sumsets, UDCP checks, censuses, dense subcodes."""

from .algebra import (
    EncodedPair,
    diffset,
    encode_eta,
    find_collision,
    is_udcp,
    product_compose,
    project,
    projection_size,
    require_udcp,
    sumset,
)
from .census import (
    DistanceCensus,
    VanTilborgReport,
    distance_census,
    van_tilborg_cap,
    van_tilborg_check,
    xor_correlation,
)
from .codes import (
    BinaryCode,
    CodePair,
    TernaryWord,
    format_code,
    kasami_lin,
    parse_code_text,
    read_code,
    word_from_str,
    word_to_str,
    write_code,
)
from .dense import (
    DenseSubcodeReport,
    DensityCheck,
    check_density,
    extract_dense_subcode,
    is_epsilon_dense,
)
from .exact import ceil_pow2, deficit_epsilon

__all__ = [
    "BinaryCode",
    "CodePair",
    "DenseSubcodeReport",
    "DensityCheck",
    "DistanceCensus",
    "EncodedPair",
    "TernaryWord",
    "VanTilborgReport",
    "ceil_pow2",
    "deficit_epsilon",
    "check_density",
    "diffset",
    "distance_census",
    "encode_eta",
    "extract_dense_subcode",
    "find_collision",
    "format_code",
    "is_epsilon_dense",
    "is_udcp",
    "kasami_lin",
    "parse_code_text",
    "product_compose",
    "project",
    "projection_size",
    "read_code",
    "require_udcp",
    "sumset",
    "van_tilborg_cap",
    "van_tilborg_check",
    "word_from_str",
    "word_to_str",
    "write_code",
    "xor_correlation",
]
