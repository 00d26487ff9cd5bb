import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import reference_stats
from vesiseg.raster import GlobalStats, GrayImage, RgbImage, global_stats, to_gray


def rgb_pixel(r, g, b):
    return RgbImage(np.array([[[r, g, b]]], dtype=np.uint8))


@pytest.mark.parametrize(
    "pixel, expected",
    [((100, 100, 100), 100), ((0, 0, 0), 0), ((255, 255, 255), 255), ((10, 20, 31), 20)],
)
def test_to_gray_pixels(pixel, expected):
    assert to_gray(rgb_pixel(*pixel)).data[0, 0] == expected


def test_to_gray_keeps_dimensions():
    img = RgbImage(np.zeros((3, 5, 3), dtype=np.uint8))
    gray = to_gray(img)
    assert (gray.width, gray.height) == (5, 3)


def test_images_are_immutable():
    img = GrayImage(np.zeros((2, 2), dtype=np.uint8))
    with pytest.raises(ValueError):
        img.data[0, 0] = 1


@pytest.mark.parametrize(
    "data",
    [np.zeros((0, 3)), np.zeros((2, 2, 2)), np.array([[256]]), np.array([[-1]]), np.array([[0.5]])],
)
def test_gray_rejects_invalid(data):
    with pytest.raises(ValueError):
        GrayImage(data)


def test_rgb_needs_three_channels():
    with pytest.raises(ValueError):
        RgbImage(np.zeros((2, 2, 4), dtype=np.uint8))


def test_stats_constant():
    assert global_stats(GrayImage(np.full((7, 9), 77))) == GlobalStats(77.0, 0.0)


def test_stats_two_point():
    assert global_stats(GrayImage(np.array([[0, 255]]))) == GlobalStats(127.5, 127.5)


def test_stats_random_matches_reference(rng):
    data = rng.integers(0, 256, (64, 64))
    ref_mean, ref_std = reference_stats(data.ravel().tolist())
    stats = global_stats(GrayImage(data))
    assert stats.mean == pytest.approx(ref_mean, rel=1e-9)
    assert stats.std_dev == pytest.approx(ref_std, rel=1e-9)


gray_arrays = arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)))


@settings(max_examples=60, deadline=None)
@given(gray_arrays)
def test_to_gray_channel_replication_identity(data):
    gray = GrayImage(data)
    assert to_gray(RgbImage(np.stack([data] * 3, axis=2))) == gray


@settings(max_examples=60, deadline=None)
@given(gray_arrays, st.randoms(use_true_random=False))
def test_stats_permutation_invariant(data, rnd):
    flat = data.ravel().tolist()
    rnd.shuffle(flat)
    shuffled = np.array(flat, dtype=np.uint8).reshape(data.shape)
    assert global_stats(GrayImage(data)).mean == global_stats(GrayImage(shuffled)).mean


@settings(max_examples=100, deadline=None)
@given(gray_arrays)
def test_std_bounds(data):
    stats = global_stats(GrayImage(data))
    assert 0.0 <= stats.mean <= 255.0
    assert 0.0 <= stats.std_dev <= 127.5
    assert (stats.std_dev == 0.0) == bool((data == data.flat[0]).all())
