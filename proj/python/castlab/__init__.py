"""CAST-128 with the original and regrouped round function, plus image-cipher analysis."""

from ._core import (
    DEFAULT_KEY1,
    DEFAULT_KEY2,
    CastlabError,
    avalanche,
    bench_round_function,
    chi_square_sf,
    compare_round_function,
    correlation,
    correlation_coefficient,
    decrypt_block,
    decrypt_bytes,
    decrypt_image,
    encrypt_block,
    encrypt_bytes,
    encrypt_image,
    encryption_quality,
    eq_vs_rounds,
    histogram,
    histogram_uniformity,
    key_schedule,
    key_sensitivity,
    load_image,
    round_function,
    round_function_chain,
    sample_adjacent_pairs,
    save_image,
    selftest,
    synth_image,
)

__all__ = [name for name in dir() if not name.startswith("_")]
