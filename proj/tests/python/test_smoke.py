import numpy as np
import pytest

import castlab


def test_rfc_vector():
    key = "0123456712345678234567893456789A"
    assert castlab.encrypt_block(key, 0x0123456789ABCDEF) == 0x238B4FE5847E44B2
    assert castlab.decrypt_block(key, 0x238B4FE5847E44B2) == 0x0123456789ABCDEF
    assert castlab.encrypt_block("0123456712", 0x0123456789ABCDEF, rounds=12) == 0x7AC816D16E9B302E


def test_variants_differ_and_roundtrip():
    key = castlab.DEFAULT_KEY1
    block = 0xDEADBEEFCAFEF00D
    o = castlab.encrypt_block(key, block, "original")
    m = castlab.encrypt_block(key, block, "modified")
    assert o != m
    assert castlab.decrypt_block(key, m, "modified") == block


def test_round_function_hand_value():
    assert castlab.round_function(2, "original", 0, 0, 0) == 0x0279F6A0
    assert castlab.round_function(2, "modified", 0, 0, 0) == 0x2237F6A0
    km, kr = castlab.key_schedule(castlab.DEFAULT_KEY1)
    assert len(km) == 16 and all(0 <= k < 32 for k in kr)


def test_errors_map_to_value_error():
    with pytest.raises(castlab.CastlabError, match="InvalidHex"):
        castlab.encrypt_block("ZZZ", 0)
    with pytest.raises(ValueError, match="InvalidRounds"):
        castlab.encrypt_block(castlab.DEFAULT_KEY1, 0, rounds=17)
    with pytest.raises(ValueError, match="NotBlockAligned"):
        castlab.encrypt_image(np.zeros((3, 3), np.uint8), castlab.DEFAULT_KEY1)


def test_image_roundtrip_and_files(tmp_path):
    img = castlab.synth_image("smooth_noise", 64, 32, seed=3)
    assert img.shape == (32, 64) and img.dtype == np.uint8
    c = castlab.encrypt_image(img, castlab.DEFAULT_KEY1, "modified")
    assert not np.array_equal(c, img)
    assert np.array_equal(castlab.decrypt_image(c, castlab.DEFAULT_KEY1, "modified"), img)
    for name in ("x.pgm", "x.bmp"):
        castlab.save_image(c, str(tmp_path / name))
        assert np.array_equal(castlab.load_image(str(tmp_path / name)), c)


def test_byte_mode():
    data = b"attack at dawn"
    c = castlab.encrypt_bytes(data, "0123456712", "original", 12)
    assert len(c) == 16
    assert castlab.decrypt_bytes(c, "0123456712", "original", 12) == data


def test_avalanche_is_deterministic_across_workers():
    a = castlab.avalanche(samples=4000, seed=9, workers=1)
    b = castlab.avalanche(samples=4000, seed=9, workers=6)
    assert a == b
    assert a["wins_original"] + a["wins_modified"] + a["ties"] == 4000
    assert 31 < a["mean_distance_original"] < 33
    k = castlab.avalanche(mode="key", samples=500, fixed_key_bit=17)
    assert k["samples"] == 500


def test_image_metrics():
    img = castlab.synth_image("smooth_noise", 128, 128)
    c = castlab.encrypt_image(img, castlab.DEFAULT_KEY1)
    assert castlab.encryption_quality(img, img) == 0.0
    assert castlab.encryption_quality(img, c) > 0
    rows = castlab.eq_vs_rounds(img, castlab.DEFAULT_KEY1, "original", [4, 16])
    assert [r for r, _ in rows] == [4, 16]

    h = castlab.histogram(c)
    assert h.shape == (256,) and h.sum() == img.size
    u = castlab.histogram_uniformity(h)
    assert 0 < u["p_value"] <= 1

    assert castlab.correlation(img, 1200, seed=1) > 0.8
    assert abs(castlab.correlation(c, 1200, seed=1)) < 0.2
    pairs = castlab.sample_adjacent_pairs(img, 10, seed=2)
    assert pairs.shape == (10, 2)
    assert castlab.correlation_coefficient([0, 1, 2, 3], [1, 0, 3, 2]) == pytest.approx(0.6)


def test_key_sensitivity():
    img = castlab.synth_image("smooth_noise", 64, 64)
    r = castlab.key_sensitivity(img)
    assert 98 < r["percent_differing"] <= 100
    assert r["difference_image"].shape == img.shape
    same = castlab.key_sensitivity(img, castlab.DEFAULT_KEY1, castlab.DEFAULT_KEY1)
    assert same["percent_differing"] == 0.0


def test_bench_and_selftest():
    r = castlab.bench_round_function("modified", 20000, seed=1)
    assert r["ns_per_op"] > 0
    assert r["checksum"] == castlab.round_function_chain("modified", 20000, seed=1)
    assert all(passed for _, passed, _ in castlab.selftest(quick=True))
    assert castlab.chi_square_sf(255, 255) == pytest.approx(0.48822252177040637, abs=1e-12)
