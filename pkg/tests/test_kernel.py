import itertools

import numpy as np
import pytest

from conftest import rectangles_scene
from saldeblur.exceptions import DegenerateKernelError, DimensionError, NoStructureError
from saldeblur.imaging.convolution import convolve_circular, psf2otf
from saldeblur.imaging.derivatives import gradient
from saldeblur.imaging.types import GradientField, delta_kernel, normalize_kernel
from saldeblur.kernel import (
    GradientPairs,
    align_kernel,
    centroid,
    denoise_kernel,
    direction_bins,
    estimate_kernel,
    estimate_kernel_spectrum,
    gradient_pairs,
    kernel_energy,
    select_by_direction,
    threshold_gradients,
)
from saldeblur.kernel.gradients import target_count
from saldeblur.models.config import KernelEstParams


def exact_pairs(kernel, size=64, seed=0):
    """Pairs whose blurry derivatives are exactly the circular blur of the latent ones."""
    border = kernel.shape[0] // 2 + 3
    latent = rectangles_scene(size, seed=seed, border=border)
    blurry = convolve_circular(latent, kernel)
    return gradient_pairs(gradient(latent), blurry)


def embed(kernel, shape):
    """Image-sized, origin-centered layout of a small centered kernel."""
    return np.real(np.fft.ifft2(psf2otf(kernel, shape)))


def spectrum_energy(full, pairs, gamma):
    """Energy of an image-sized, origin-centered kernel under periodic boundaries."""
    fk = np.fft.fft2(full)
    energy = gamma * float(np.sum(full ** 2))
    for weight, latent, observed in pairs:
        residual = np.real(np.fft.ifft2(fk * np.fft.fft2(latent))) - observed
        energy += weight * float(np.sum(residual ** 2))
    return energy


class TestThreshold:
    def test_direction_bins(self):
        gx = np.array([1.0, 1.0, 0.0, -1.0, -1.0, 1.0])
        gy = np.array([0.0, 1.0, 1.0, 1.0, 0.0, -1.0])
        np.testing.assert_array_equal(direction_bins(gx, gy), [0, 1, 2, 3, 0, 3])

    def test_keeps_the_strongest_per_bin(self):
        gx = np.array([[0.1, 0.5, 0.3, 0.9, 0.2]])
        gy = np.zeros_like(gx)
        keep = select_by_direction(gx, gy, 2)
        np.testing.assert_array_equal(keep, [[False, True, False, True, False]])

    def test_ties_at_the_threshold_are_kept(self):
        gx = np.array([[0.5, 0.5, 0.5, 0.1]])
        keep = select_by_direction(gx, np.zeros_like(gx), 2)
        np.testing.assert_array_equal(keep, [[True, True, True, False]])

    def test_sparse_bins_keep_everything(self):
        gx = np.array([[1.0, 0.0, 0.2]])
        gy = np.array([[0.0, 0.7, 0.2]])
        keep = select_by_direction(gx, gy, 5)
        np.testing.assert_array_equal(keep, [[True, True, True]])

    def test_zero_target_keeps_one_per_bin(self):
        gx = np.array([[0.3, 0.6, 0.0, 0.0]])
        gy = np.array([[0.0, 0.0, 0.4, 0.8]])
        keep = select_by_direction(gx, gy, 0)
        np.testing.assert_array_equal(keep, [[False, True, False, True]])

    def test_target_count(self):
        assert target_count((64, 64), 15, 2.0) == 1920
        assert target_count((10, 10), 3, 0.0) == 1

    def test_kept_values_are_the_gradient(self, rng):
        image = rng.random((32, 32))
        gx, gy = gradient(image)
        field = threshold_gradients(image, kernel_size=3, ratio=0.5)
        kept = (field.dx != 0) | (field.dy != 0)
        assert 0 < kept.sum() < image.size
        np.testing.assert_array_equal(field.dx[kept], gx[kept])
        np.testing.assert_array_equal(field.dy[kept], gy[kept])

    def test_large_target_keeps_every_gradient(self, rng):
        image = rng.random((16, 16))
        field = threshold_gradients(image, kernel_size=15, ratio=2.0)
        np.testing.assert_array_equal(field.dx, gradient(image).dx)
        np.testing.assert_array_equal(field.dy, gradient(image).dy)


class TestGradientPairs:
    def test_pairs_layout(self, rng):
        px, py = rng.random((8, 8)), rng.random((8, 8))
        blurry = rng.random((8, 8))
        pairs = gradient_pairs(GradientField(px, py), blurry)
        assert len(pairs.latent) == len(pairs.blurry) == 5
        assert pairs.weights == (25.0, 25.0, 12.5, 12.5, 12.5)
        np.testing.assert_array_equal(pairs.latent[0], px)
        np.testing.assert_array_equal(pairs.latent[1], py)
        assert pairs.shape == (8, 8)

    def test_length_mismatch(self, rng):
        with pytest.raises(DimensionError):
            GradientPairs(latent=[rng.random((4, 4))], blurry=[rng.random((4, 4))], weights=(1.0, 2.0))

    def test_shape_mismatch(self, rng):
        with pytest.raises(DimensionError):
            GradientPairs(latent=[rng.random((4, 4))], blurry=[rng.random((4, 5))], weights=(1.0,))

    def test_empty(self):
        zeros = np.zeros((4, 4))
        assert GradientPairs(latent=[zeros], blurry=[zeros], weights=(1.0,)).is_empty()


class TestEstimation:
    def test_spectrum_matches_dense_least_squares(self, rng):
        size = 8
        latent = [rng.standard_normal((size, size)) for _ in range(2)]
        observed = [rng.standard_normal((size, size)) for _ in range(2)]
        weights = (2.0, 0.5)
        gamma = 0.3
        pairs = GradientPairs(latent=latent, blurry=observed, weights=weights)

        shifts = list(itertools.product(range(size), range(size)))
        normal = gamma * np.eye(size * size)
        rhs = np.zeros(size * size)
        for w, p, b in zip(weights, latent, observed):
            a = np.stack([np.roll(p, s, axis=(0, 1)).ravel() for s in shifts], axis=1)
            normal += w * a.T @ a
            rhs += w * a.T @ b.ravel()
        expected = np.linalg.solve(normal, rhs).reshape(size, size)

        np.testing.assert_allclose(estimate_kernel_spectrum(pairs, gamma), expected, atol=1e-9)

    def test_recovers_the_true_kernel(self, rng):
        true = np.zeros((7, 7))
        true[3, 1:6] = 1.0
        true[2, 4] = 0.5
        true = normalize_kernel(true)
        pairs = exact_pairs(true)
        estimated = estimate_kernel(pairs, KernelEstParams(gamma=1e-3), kernel_size=7)
        np.testing.assert_allclose(estimated, true, atol=2e-3)
        assert estimated.sum() == pytest.approx(1.0)
        assert estimated.min() >= 0.0

    def test_delta_kernel_from_sharp_pairs(self):
        pairs = exact_pairs(delta_kernel(5))
        estimated = estimate_kernel(pairs, KernelEstParams(gamma=1e-3), kernel_size=5)
        assert np.unravel_index(np.argmax(estimated), estimated.shape) == (2, 2)
        assert estimated[2, 2] > 0.99

    def test_kernel_larger_than_grid(self, rng):
        pairs = gradient_pairs(GradientField(rng.random((6, 6)), rng.random((6, 6))), rng.random((6, 6)))
        with pytest.raises(DimensionError):
            estimate_kernel(pairs, kernel_size=7)

    def test_no_structure(self):
        zeros = np.zeros((16, 16))
        pairs = gradient_pairs(GradientField(zeros, zeros), np.full((16, 16), 0.5))
        with pytest.raises(NoStructureError):
            estimate_kernel(pairs, kernel_size=5)

    def test_solve_does_not_raise_the_energy(self, rng):
        true = normalize_kernel(np.outer([1.0, 2.0, 1.0], [0.0, 1.0, 3.0]))
        latent = rectangles_scene(48, seed=4)
        blurry = convolve_circular(latent, true) + 0.01 * rng.standard_normal(latent.shape)
        pairs = gradient_pairs(threshold_gradients(latent, kernel_size=3, ratio=2.0), blurry)
        gamma = 5.0
        # the image-sized evaluation agrees with kernel_energy on cropped kernels
        assert spectrum_energy(embed(true, pairs.shape), pairs, gamma) == pytest.approx(
            kernel_energy(true, pairs, gamma), rel=1e-9)

        other = gradient_pairs(gradient(rectangles_scene(48, seed=5)), blurry)
        new = spectrum_energy(estimate_kernel_spectrum(pairs, gamma), pairs, gamma)
        for previous in (embed(delta_kernel(3), pairs.shape), embed(true, pairs.shape),
                         estimate_kernel_spectrum(other, gamma)):
            assert new <= spectrum_energy(previous, pairs, gamma) * (1.0 + 1e-12)

    def test_energy_of_the_true_kernel(self):
        true = normalize_kernel(np.outer([1, 2, 1], [1, 2, 1]).astype(float))
        pairs = exact_pairs(true)
        theta = 5.0
        assert kernel_energy(true, pairs, theta) == pytest.approx(theta * np.sum(true ** 2), abs=1e-9)
        assert kernel_energy(delta_kernel(3), pairs, theta) > kernel_energy(true, pairs, theta)


class TestDenoise:
    def test_isolated_speck_removed(self):
        kernel = np.zeros((15, 15))
        kernel[6:9, 6:9] = 1.0
        kernel[0, 0] = 0.5
        cleaned = denoise_kernel(kernel, divisor=160)
        assert cleaned[0, 0] == 0.0
        np.testing.assert_allclose(cleaned[6:9, 6:9], 1.0 / 9.0)

    def test_weak_weights_zeroed(self):
        kernel = np.zeros((5, 5))
        kernel[2, 1:4] = 1.0
        kernel[2, 0] = 0.01
        cleaned = denoise_kernel(kernel, divisor=160)
        assert cleaned[2, 0] == 0.0
        assert cleaned.sum() == pytest.approx(1.0)

    def test_diagonal_neighbors_are_connected(self):
        kernel = np.zeros((15, 15))
        kernel[3, 3] = 1.0
        kernel[4, 4] = 1.0
        cleaned = denoise_kernel(kernel, divisor=128)
        assert cleaned[3, 3] == pytest.approx(0.5)
        assert cleaned[4, 4] == pytest.approx(0.5)

    def test_largest_component_survives(self):
        kernel = np.zeros((15, 15))
        kernel[2, 2] = 1.0
        kernel[10, 10] = 1.0
        cleaned = denoise_kernel(kernel, divisor=128)
        assert np.count_nonzero(cleaned) == 1
        assert cleaned.sum() == pytest.approx(1.0)

    def test_negative_weights_clamped(self):
        kernel = np.zeros((5, 5))
        kernel[2, 2] = 1.0
        kernel[0, 0] = -0.5
        np.testing.assert_allclose(denoise_kernel(kernel), delta_kernel(5))

    def test_degenerate(self):
        with pytest.raises(DegenerateKernelError):
            denoise_kernel(-np.ones((5, 5)))


class TestAlign:
    def test_centroid(self):
        kernel = np.zeros((5, 5))
        kernel[1, 3] = 1.0
        assert centroid(kernel) == (1.0, 3.0)

    def test_shifted_delta_is_centered(self):
        kernel = np.zeros((5, 5))
        kernel[1, 3] = 1.0
        np.testing.assert_array_equal(align_kernel(kernel), delta_kernel(5))

    def test_centered_kernel_is_unchanged(self):
        kernel = normalize_kernel(np.outer([1, 2, 1], [1, 2, 1]).astype(float))
        np.testing.assert_array_equal(align_kernel(kernel), kernel)
