import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import ridge_pattern
from wavedeblur.analysis import detail_energy
from wavedeblur.blur import BlurSpec, apply_blur
from wavedeblur.packet import packet_decompose
from wavedeblur.transfer import (
    TransferConfig,
    binarize,
    deblur_idwt,
    prepare_style,
    subband_stats,
    wst_band,
    wst_packet,
    wst_reconstruct,
)


def test_subband_stats_constant():
    stats = subband_stats(np.full((3, 3), 7.0))
    assert stats.mean == 7.0
    assert stats.std == 0.0


def test_subband_stats_analytic():
    stats = subband_stats(np.array([1.0, 2.0, 3.0, 4.0]))
    assert_allclose(stats.mean, 2.5, atol=1e-15)
    assert_allclose(stats.std, np.sqrt(1.25), atol=1e-15)


def test_subband_stats_single_pixel():
    stats = subband_stats(np.array([[0.731]]))
    assert stats.mean == 0.731
    assert stats.std == 0.0


def test_subband_stats_rejects_empty():
    with pytest.raises(ValueError, match="empty"):
        subband_stats(np.zeros((0,)))


def _brute_force_wst(blurry, style, eps):
    # normalize-then-affine, spelled out pointwise
    mu_b = sum(blurry.ravel()) / blurry.size
    sd_b = (sum((v - mu_b) ** 2 for v in blurry.ravel()) / blurry.size) ** 0.5
    mu_s = sum(style.ravel()) / style.size
    sd_s = (sum((v - mu_s) ** 2 for v in style.ravel()) / style.size) ** 0.5
    out = np.empty_like(blurry)
    for idx in np.ndindex(blurry.shape):
        out[idx] = (blurry[idx] - mu_b) / max(sd_b, eps) * sd_s + mu_s
    return out


def test_wst_band_hand_example():
    blurry = np.array([[0.0, 2.0]])
    style = np.array([[3.0, 7.0]])
    got = wst_band(blurry, style)
    assert_allclose(got, [[3.0, 7.0]], atol=1e-12)
    assert_allclose(got, _brute_force_wst(blurry, style, 1e-8), atol=1e-12)


def test_wst_band_matches_brute_force_on_random_input():
    rng = np.random.default_rng(41)
    blurry, style = rng.random((6, 7)), rng.random((6, 7))
    assert_allclose(wst_band(blurry, style), _brute_force_wst(blurry, style, 1e-8), atol=1e-12)


def test_wst_band_self_transfer_identity():
    rng = np.random.default_rng(42)
    x = rng.random((8, 8))
    assert np.max(np.abs(wst_band(x, x) - x)) < 1e-12


def test_wst_band_constant_blurry_takes_style_mean():
    style = np.array([[3.0, 7.0], [5.0, 5.0]])
    got = wst_band(np.full((2, 2), 0.25), style)
    assert_allclose(got, 5.0, atol=1e-6)


def test_wst_band_output_stats_match_style():
    rng = np.random.default_rng(43)
    for _ in range(100):
        blurry = rng.standard_normal((16, 16))
        style = rng.standard_normal((16, 16)) * rng.uniform(0.1, 5.0) + rng.uniform(-3, 3)
        out = subband_stats(wst_band(blurry, style))
        want = subband_stats(style)
        assert abs(out.mean - want.mean) < 1e-9
        assert abs(out.std - want.std) < 1e-9


def test_wst_band_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        wst_band(np.zeros((2, 2)), np.zeros((2, 3)))


def test_wst_packet_identity():
    rng = np.random.default_rng(44)
    packet = packet_decompose(rng.random((32, 32)), 3)
    out = wst_packet(packet, packet)
    assert np.max(np.abs(out.bands - packet.bands)) < 1e-12


def test_wst_packet_band_count_and_per_band_contract():
    rng = np.random.default_rng(45)
    pb = packet_decompose(rng.random((64, 64)), 3)
    ps = packet_decompose(rng.random((64, 64)), 3)
    out = wst_packet(pb, ps)
    assert out.band_count == 64
    for i in (0, 1, 17, 63):
        assert_allclose(out.bands[i], wst_band(pb.bands[i], ps.bands[i]), atol=1e-12)


def test_wst_packet_constant_blurry_bands():
    ps = packet_decompose(np.random.default_rng(46).random((16, 16)), 2)
    pb = packet_decompose(np.full((16, 16), 0.5), 2)
    out = wst_packet(pb, ps)
    style_means = ps.bands.mean(axis=(1, 2))
    for i in range(16):
        assert_allclose(out.bands[i], style_means[i], atol=1e-6)


def test_wst_packet_rejects_mismatches():
    a = packet_decompose(np.zeros((16, 16)), 2)
    b = packet_decompose(np.zeros((16, 16)), 3)
    with pytest.raises(ValueError, match="level mismatch"):
        wst_packet(a, b)
    c = packet_decompose(np.zeros((32, 16)), 2)
    with pytest.raises(ValueError, match="dimension mismatch"):
        wst_packet(a, c)


def test_binarize_output_is_binary():
    rng = np.random.default_rng(47)
    img = rng.random((32, 32))
    for method in ("otsu", "adaptive-mean"):
        out = binarize(img, method=method)
        assert set(np.unique(out)) <= {0.0, 1.0}


def test_binarize_otsu_separates_bimodal():
    rng = np.random.default_rng(48)
    img = np.where(rng.random((16, 16)) < 0.4, 0.2, 0.8)
    out = binarize(img, method="otsu")
    assert np.all(out[img == 0.2] == 0.0)
    assert np.all(out[img == 0.8] == 1.0)


def test_binarize_constant_maps_to_zero():
    for value in (0.0, 0.5, 1.0):
        assert np.all(binarize(np.full((8, 8), value), method="otsu") == 0.0)
        assert np.all(binarize(np.full((8, 8), value), method="adaptive-mean") == 0.0)


def test_binarize_raises_detail_band_std_of_ridges():
    img = ridge_pattern((256, 256), period=18.0, angle_deg=40.0)
    plain = packet_decompose(img, 3).bands.std(axis=(1, 2))
    binary = packet_decompose(binarize(img), 3).bands.std(axis=(1, 2))
    assert np.mean(binary[1:] > plain[1:]) > 0.5


def test_binarize_adaptive_window_validation():
    img = np.zeros((8, 8))
    with pytest.raises(ValueError, match="window"):
        binarize(img, method="adaptive-mean", window=4)
    with pytest.raises(ValueError, match="window"):
        binarize(img, method="adaptive-mean", window=1)
    with pytest.raises(ValueError, match="method"):
        binarize(img, method="median")


def test_prepare_style_modes():
    img = ridge_pattern((32, 32), period=8.0, angle_deg=10.0)
    raw = prepare_style(img, TransferConfig(style_mode="sharp"))
    assert_allclose(raw, img, atol=0)
    binary = prepare_style(img, TransferConfig(style_mode="binarized"))
    assert set(np.unique(binary)) <= {0.0, 1.0}


def test_deblur_identity_when_style_equals_blurry():
    img = ridge_pattern((64, 64), period=9.0, angle_deg=70.0)
    cfg = TransferConfig(level=3, style_mode="sharp")
    out = deblur_idwt(img, img, cfg)
    assert np.max(np.abs(out - img)) < 1e-9


def test_level8_full_replacement_sharp():
    rng = np.random.default_rng(49)
    blurry, style = rng.random((256, 256)), rng.random((256, 256))
    cfg = TransferConfig(level=8, style_mode="sharp")
    raw = wst_reconstruct(blurry, style, cfg)
    assert np.max(np.abs(raw - style)) < 1e-6


def test_level8_full_replacement_binarized():
    rng = np.random.default_rng(50)
    blurry = rng.random((256, 256))
    style = ridge_pattern((256, 256), period=14.0, angle_deg=120.0)
    cfg = TransferConfig(level=8, style_mode="binarized")
    out = deblur_idwt(blurry, style, cfg)
    assert np.max(np.abs(out - binarize(style))) < 1e-6


def test_deblur_increases_detail_energy_of_blurred_ridges():
    sharp = ridge_pattern((256, 256), period=16.0, angle_deg=35.0)
    style = ridge_pattern((256, 256), period=12.0, angle_deg=150.0, phase=1.0)
    blurry = apply_blur(sharp, BlurSpec(kind="gaussian", sigma=3))
    out = deblur_idwt(blurry, style, TransferConfig(level=3, style_mode="binarized"))
    assert detail_energy(out, 3) > detail_energy(blurry, 3)


def test_deblur_rejects_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        deblur_idwt(np.zeros((32, 32)), np.zeros((32, 16)), TransferConfig(level=2))


def test_deblur_output_dimensions_and_range():
    rng = np.random.default_rng(51)
    blurry, style = rng.random((64, 32)), rng.random((64, 32))
    out = deblur_idwt(blurry, style, TransferConfig(level=2))
    assert out.shape == (64, 32)
    assert out.min() >= 0.0 and out.max() <= 1.0


def test_style_swap_changes_stats_not_shapes():
    rng = np.random.default_rng(52)
    blurry = rng.random((64, 64))
    s1, s2 = rng.random((64, 64)), rng.random((64, 64))
    pb = packet_decompose(blurry, 3)
    out1 = wst_packet(pb, packet_decompose(s1, 3))
    out2 = wst_packet(pb, packet_decompose(s2, 3))
    assert out1.bands.shape == out2.bands.shape == pb.bands.shape
    cfg = TransferConfig(level=3, style_mode="sharp")
    assert deblur_idwt(blurry, s1, cfg).shape == blurry.shape
    assert deblur_idwt(blurry, s2, cfg).shape == blurry.shape


def test_transferred_band_energy_matches_style_profile():
    # stats matching implies per-band energy equals the style band's
    rng = np.random.default_rng(53)
    pb = packet_decompose(rng.random((64, 64)), 2)
    ps = packet_decompose(rng.random((64, 64)), 2)
    out = wst_packet(pb, ps)
    for i in range(out.band_count):
        assert np.sum(out.bands[i] ** 2) == pytest.approx(
            np.sum(ps.bands[i] ** 2), rel=1e-9
        )


def test_transfer_config_validation():
    with pytest.raises(ValueError, match="level"):
        TransferConfig(level=0)
    with pytest.raises(ValueError, match="level"):
        TransferConfig(level=9)
    with pytest.raises(ValueError, match="eps"):
        TransferConfig(eps=0.0)
    with pytest.raises(ValueError, match="style_mode"):
        TransferConfig(style_mode="fancy")
    with pytest.raises(ValueError, match="binarize_method"):
        TransferConfig(binarize_method="magic")
