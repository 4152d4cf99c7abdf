import itertools

import numpy as np
import pytest
from skimage.morphology import disk

from saldeblur.exceptions import (
    BackgroundTooSmallError,
    ChannelError,
    DimensionError,
    DisjointnessError,
    ParameterError,
)
from saldeblur.imaging.color import rgb_to_lab
from saldeblur.imaging.convolution import convolve
from saldeblur.imaging.types import normalize_kernel
from saldeblur.models.data import Rect
from saldeblur.saliency import (
    RegionPlan,
    binarize_and_dilate,
    check_disjoint,
    compose_regions,
    fuse_compensate,
    fuse_final,
    largest_background_rectangle,
    multi_region_plan,
    saliency_from_lab,
    saliency_map,
    separate,
)


def brute_force_rectangle(mask, min_side=1):
    rows, cols = mask.shape
    best = None
    for y, x in itertools.product(range(rows), range(cols)):
        for h in range(min_side, rows - y + 1):
            for w in range(min_side, cols - x + 1):
                if mask[y:y + h, x:x + w].any():
                    continue
                key = (-w * h, y, x, h)
                if best is None or key < best[0]:
                    best = (key, Rect(x=x, y=y, w=w, h=h))
    return None if best is None else best[1]


def two_color_image(split=30, width=40, height=20):
    image = np.zeros((height, width, 3))
    image[:, :split] = (0.8, 0.2, 0.1)
    image[:, split:] = (0.1, 0.3, 0.9)
    return image


class TestSaliencyMap:
    def test_constant_image_is_not_salient(self):
        image = np.full((16, 16, 3), 0.4)
        saliency = saliency_map(image)
        np.testing.assert_array_equal(saliency, 0.0)
        assert not binarize_and_dilate(saliency).any()

    def test_range_is_unit(self, color_scene):
        saliency = saliency_map(color_scene(32))
        assert saliency.min() >= 0.0
        assert saliency.max() == pytest.approx(1.0)

    def test_minority_color_is_most_salient(self):
        image = two_color_image()
        lab = rgb_to_lab(image)
        saliency = saliency_map(image)

        mean = lab.reshape(-1, 3).mean(axis=0)
        distance = np.sqrt(((lab - mean) ** 2).sum(axis=2))
        expected = distance / distance.max()
        # away from the seam the low-pass leaves each flat region untouched
        np.testing.assert_allclose(saliency[:, :27], expected[:, :27], atol=1e-9)
        np.testing.assert_allclose(saliency[:, 33:], expected[:, 33:], atol=1e-9)
        np.testing.assert_allclose(saliency[:, 35:], 1.0, atol=1e-9)
        np.testing.assert_allclose(saliency[:, :25], 1.0 / 3.0, atol=1e-9)

    def test_invariant_to_lightness_shift(self, color_scene):
        lab = rgb_to_lab(color_scene(24, seed=3))
        shifted = lab + np.array([10.0, 0.0, 0.0])
        np.testing.assert_allclose(saliency_from_lab(shifted), saliency_from_lab(lab), atol=1e-9)

    def test_gray_input_rejected(self, rng):
        with pytest.raises(ChannelError):
            saliency_map(rng.random((8, 8)))


class TestBinarize:
    def test_threshold_is_relative_to_mean(self):
        saliency = np.zeros((10, 10))
        saliency[0, 0] = 1.0
        saliency[5, 5] = 0.01
        mask = binarize_and_dilate(saliency, threshold_scale=2.0, dilate_radius=0)
        assert mask[0, 0]
        assert not mask[5, 5]
        assert mask.sum() == 1

    def test_dilation_uses_a_disk(self):
        saliency = np.zeros((21, 21))
        saliency[10, 10] = 1.0
        mask = binarize_and_dilate(saliency, dilate_radius=3)
        footprint = disk(3, strict_radius=False).astype(bool)
        np.testing.assert_array_equal(mask[7:14, 7:14], footprint)
        assert mask.sum() == footprint.sum()

    def test_non_positive_scale_rejected(self):
        with pytest.raises(ParameterError):
            binarize_and_dilate(np.ones((4, 4)), threshold_scale=0.0)


class TestLargestRectangle:
    def test_center_pixel(self):
        mask = np.zeros((3, 3), dtype=bool)
        mask[1, 1] = True
        assert largest_background_rectangle(mask) == Rect(x=0, y=0, w=3, h=1)

    def test_empty_mask_is_whole_image(self):
        assert largest_background_rectangle(np.zeros((5, 7), dtype=bool)) == Rect(x=0, y=0, w=7, h=5)

    def test_full_mask(self):
        with pytest.raises(BackgroundTooSmallError):
            largest_background_rectangle(np.ones((4, 4), dtype=bool))

    def test_min_side_filter(self):
        mask = np.zeros((10, 10), dtype=bool)
        mask[:, 3] = True
        # the 3-wide strip is too narrow; only the right part qualifies
        assert largest_background_rectangle(mask, min_side=4) == Rect(x=4, y=0, w=6, h=10)
        with pytest.raises(BackgroundTooSmallError):
            largest_background_rectangle(mask, min_side=7)

    @pytest.mark.parametrize("seed", range(100))
    def test_matches_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        mask = rng.random((16, 16)) < 0.3
        expected = brute_force_rectangle(mask)
        assert largest_background_rectangle(mask) == expected

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_brute_force_with_min_side(self, seed):
        rng = np.random.default_rng(100 + seed)
        mask = rng.random((14, 14)) < 0.15
        expected = brute_force_rectangle(mask, min_side=3)
        if expected is None:
            with pytest.raises(BackgroundTooSmallError):
                largest_background_rectangle(mask, min_side=3)
        else:
            assert largest_background_rectangle(mask, min_side=3) == expected


class TestFusion:
    def test_separate_is_exact(self, color_scene, rng):
        image = color_scene(16)
        mask = rng.random((16, 16)) < 0.4
        salient, background = separate(image, mask)
        np.testing.assert_array_equal(salient + background, image)
        assert not salient[~mask].any()
        assert not background[mask].any()

    def test_compensate_blurs_only_the_mask(self, color_scene, rng):
        image = color_scene(24)
        mask = np.zeros((24, 24), dtype=bool)
        mask[6:18, 6:18] = True
        kernel = normalize_kernel(rng.random((5, 5)))
        fused = fuse_compensate(image, mask, kernel)
        np.testing.assert_array_equal(fused[~mask], image[~mask])
        np.testing.assert_array_equal(fused[mask], convolve(image, kernel)[mask])

    def test_compensate_with_empty_mask_is_identity(self, color_scene, rng):
        image = color_scene(16)
        fused = fuse_compensate(image, np.zeros((16, 16), dtype=bool), normalize_kernel(rng.random((3, 3))))
        np.testing.assert_array_equal(fused, image)

    def test_fuse_final(self, rng):
        original = rng.random((10, 10, 3))
        deblurred = rng.random((10, 10, 3))
        mask = rng.random((10, 10)) < 0.5
        fused = fuse_final(original, deblurred, mask)
        np.testing.assert_array_equal(fused[mask], original[mask])
        np.testing.assert_array_equal(fused[~mask], deblurred[~mask])

    def test_fuse_final_shape_mismatch(self, rng):
        with pytest.raises(DimensionError):
            fuse_final(rng.random((10, 10, 3)), rng.random((10, 12, 3)), np.zeros((10, 10), dtype=bool))

    def test_region_plan_fuse_blurs_the_complement(self, color_scene, rng):
        image = color_scene(24)
        mask = np.zeros((24, 24), dtype=bool)
        mask[:, :8] = True
        kernel = normalize_kernel(rng.random((3, 3)))
        plan = RegionPlan(image=image, mask=mask)
        fused = plan.fuse(kernel)
        np.testing.assert_array_equal(fused[mask], image[mask])
        np.testing.assert_array_equal(fused[~mask], convolve(image, kernel)[~mask])
        assert not plan.region[~mask].any()


class TestMultiRegion:
    def test_overlap_rejected(self):
        a = np.zeros((6, 6), dtype=bool)
        b = np.zeros((6, 6), dtype=bool)
        a[:3, :3] = True
        b[2:, 2:] = True
        with pytest.raises(DisjointnessError):
            check_disjoint([a, b])

    def test_shape_mismatch_rejected(self):
        with pytest.raises(DisjointnessError):
            check_disjoint([np.zeros((4, 4), dtype=bool), np.zeros((5, 5), dtype=bool)])

    def test_plans_share_the_image(self, rng):
        image = rng.random((8, 8, 3))
        masks = [np.eye(8, dtype=bool), np.eye(8, k=2, dtype=bool)]
        plans = multi_region_plan(image, masks)
        assert len(plans) == 2
        for plan, mask in zip(plans, masks):
            np.testing.assert_array_equal(plan.mask, mask)
            np.testing.assert_array_equal(plan.image, image)

    def test_compose(self, rng):
        image = rng.random((8, 8, 3))
        a = np.zeros((8, 8), dtype=bool)
        b = np.zeros((8, 8), dtype=bool)
        a[:4] = True
        b[6:] = True
        restored_a = np.full_like(image, 0.1)
        restored_b = np.full_like(image, 0.9)
        out = compose_regions(image, [a, b], [restored_a, restored_b])
        np.testing.assert_array_equal(out[a], 0.1)
        np.testing.assert_array_equal(out[b], 0.9)
        rest = ~(a | b)
        np.testing.assert_array_equal(out[rest], image[rest])
