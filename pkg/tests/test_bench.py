import json
import math

import numpy as np
import pytest

from saldeblur.bench import (
    central_foreground,
    evaluate,
    kernel_ncc,
    psnr,
    rmse,
    run_synthetic,
    run_synthetic_spatially_variant,
    synth_blur,
    synth_kernel,
    write_report,
)
from saldeblur.exceptions import DimensionError, ImageIOError, ParameterError
from saldeblur.imaging.convolution import convolve
from saldeblur.imaging.types import delta_kernel
from saldeblur.models.config import DeblurConfig
from saldeblur.models.data import BenchReport, SynthSpec


class TestMetrics:
    def test_rmse_and_psnr(self):
        a = np.zeros((4, 4))
        b = np.full((4, 4), 0.1)
        assert rmse(a, b) == pytest.approx(0.1)
        assert psnr(a, b) == pytest.approx(20.0)
        assert rmse(a, a) == 0.0
        assert psnr(a, a) == math.inf

    def test_masked_rmse(self):
        a = np.zeros((4, 4, 3))
        b = np.zeros((4, 4, 3))
        b[0, 0] = 1.0
        mask = np.zeros((4, 4), dtype=bool)
        mask[0, :2] = True
        assert rmse(a, b, mask) == pytest.approx(math.sqrt(0.5))

    def test_empty_mask(self):
        with pytest.raises(ParameterError):
            rmse(np.zeros((3, 3)), np.zeros((3, 3)), np.zeros((3, 3), dtype=bool))

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            rmse(np.zeros((3, 3)), np.zeros((3, 4)))

    def test_ncc_ignores_translation_and_size(self):
        kernel = np.zeros((7, 7))
        kernel[3, 1:5] = 0.25
        shifted = np.roll(kernel, 1, axis=1)
        assert kernel_ncc(shifted, kernel) == pytest.approx(1.0)
        assert kernel_ncc(delta_kernel(3), delta_kernel(5)) == pytest.approx(1.0)

    def test_ncc_of_unrelated_kernels_is_lower(self):
        horizontal = synth_kernel(SynthSpec.parse("line:9:0"))
        vertical = synth_kernel(SynthSpec.parse("line:9:90"))
        assert kernel_ncc(horizontal, vertical) < 0.5

    def test_ncc_of_flat_kernel_is_zero(self):
        assert kernel_ncc(np.full((3, 3), 1.0 / 9.0), delta_kernel(3)) == 0.0


class TestSynth:
    def test_horizontal_line(self):
        kernel = synth_kernel(SynthSpec.parse("line:5:0"))
        assert kernel.shape == (7, 7)
        assert kernel.sum() == pytest.approx(1.0)
        assert np.all(kernel[[0, 1, 2, 4, 5, 6], :] == 0.0)
        assert np.flatnonzero(kernel[3]).tolist() == [1, 2, 3, 4, 5]

    def test_oblique_line_is_symmetric(self):
        kernel = synth_kernel(SynthSpec.parse("line:15:30"))
        assert kernel.shape == (17, 17)
        assert kernel.sum() == pytest.approx(1.0)
        np.testing.assert_allclose(kernel, kernel[::-1, ::-1], atol=1e-12)

    def test_gaussian(self):
        kernel = synth_kernel(SynthSpec.parse("gaussian:1"))
        assert kernel.shape == (7, 7)
        assert np.unravel_index(np.argmax(kernel), kernel.shape) == (3, 3)
        np.testing.assert_allclose(kernel, kernel.T)

    def test_disk(self):
        kernel = synth_kernel(SynthSpec.parse("disk:2"))
        assert kernel.shape == (5, 5)
        assert np.count_nonzero(kernel) == 13
        np.testing.assert_allclose(kernel[kernel > 0], 1.0 / 13.0)

    def test_line_must_fit(self):
        with pytest.raises(ParameterError):
            synth_kernel(SynthSpec.parse("line:9:0", kernel_size=7))

    @pytest.mark.parametrize("text", ["line:9", "blob:3", "gaussian:x", ""])
    def test_bad_spec(self, text):
        with pytest.raises(ValueError):
            SynthSpec.parse(text)

    def test_noise_free_blur_is_the_convolution(self, rng):
        sharp = rng.random((24, 24))
        spec = SynthSpec.parse("gaussian:1")
        np.testing.assert_array_equal(synth_blur(sharp, spec), convolve(sharp, synth_kernel(spec)))

    def test_noise_is_seeded(self, rng):
        sharp = rng.random((24, 24, 3))
        spec = SynthSpec.parse("line:5:45", noise=0.01, seed=3)
        first = synth_blur(sharp, spec)
        np.testing.assert_array_equal(first, synth_blur(sharp, spec))
        other = synth_blur(sharp, spec.model_copy(update={"seed": 4}))
        assert not np.array_equal(first, other)
        assert first.min() >= 0.0
        assert first.max() <= 1.0


class TestReport:
    def test_evaluate(self, rng):
        sharp = rng.random((10, 12))
        record = evaluate(sharp, sharp + 0.1, sharp, "img", delta_kernel(3), delta_kernel(3), 0.5)
        assert (record.width, record.height, record.ksize) == (12, 10, 3)
        assert record.rmse_blurry == pytest.approx(0.1)
        assert record.rmse_deblurred == 0.0
        assert record.kernel_ncc == pytest.approx(1.0)

    def test_ncc_needs_both_kernels(self, rng):
        sharp = rng.random((8, 8))
        record = evaluate(sharp, sharp, sharp, kernel_true=delta_kernel(3))
        assert record.kernel_ncc is None
        assert record.ksize == 3

    def test_write_report(self, tmp_path, rng):
        sharp = rng.random((8, 8))
        report = BenchReport(records=[evaluate(sharp, sharp, sharp, "a", seconds=1.5)])
        path = tmp_path / "report.json"
        write_report(report, path)
        data = json.loads(path.read_text())
        assert data["records"][0]["imageId"] == "a"
        assert data["records"][0]["seconds"] == 1.5

        write_report(report, path, include_timing=False)
        assert "seconds" not in json.loads(path.read_text())["records"][0]

    def test_write_report_to_missing_directory(self, tmp_path):
        with pytest.raises(ImageIOError):
            write_report(BenchReport(), tmp_path / "missing" / "report.json")

    def test_run_synthetic(self, scene):
        sharp = scene(48, seed=1)
        config = DeblurConfig(kernel_size=5, iterations_per_scale=2)
        spec = SynthSpec.parse("line:3:0", seed=1)
        record, blurry, deblurred = run_synthetic(sharp, spec, config, "rects")
        assert record.image_id == "rects"
        assert record.ksize == 5
        assert record.seconds > 0
        assert blurry.shape == deblurred.shape == sharp.shape
        assert record.rmse_blurry == pytest.approx(rmse(blurry, sharp))

    def test_evaluate_restricted_to_a_mask(self, rng):
        sharp = rng.random((8, 8))
        blurry = sharp.copy()
        blurry[:, :4] += 0.2
        mask = np.zeros((8, 8), dtype=bool)
        mask[:, 4:] = True
        record = evaluate(sharp, blurry, sharp, mask=mask)
        assert record.rmse_blurry == 0.0
        assert evaluate(sharp, blurry, sharp, mask=~mask).rmse_blurry == pytest.approx(0.2)


class TestSpatiallyVariantBench:
    def test_central_foreground(self):
        mask = central_foreground(50, 40, fraction=0.4)
        rows, cols = np.nonzero(mask)
        assert mask.sum() == 20 * 16
        assert (rows.min(), rows.max(), cols.min(), cols.max()) == (15, 34, 12, 27)

    @pytest.mark.parametrize("fraction", [0.0, 1.0, -0.2])
    def test_central_foreground_fraction(self, fraction):
        with pytest.raises(ParameterError):
            central_foreground(10, 10, fraction)

    def test_foreground_shape_must_match(self, scene):
        with pytest.raises(DimensionError):
            run_synthetic_spatially_variant(scene(32), SynthSpec.parse("line:3:0"), DeblurConfig(kernel_size=3),
                                            foreground=np.zeros((16, 16), dtype=bool))

    def test_run(self, scene):
        sharp = scene(64, seed=1)
        config = DeblurConfig(kernel_size=5, iterations_per_scale=2)
        spec = SynthSpec.parse("line:3:0", seed=1)
        record, composite, deblurred = run_synthetic_spatially_variant(sharp, spec, config, image_id="sv")

        foreground = central_foreground(64, 64)
        sharp3 = np.repeat(sharp[:, :, None], 3, axis=2)
        assert record.image_id == "sv"
        assert record.ksize == 5
        assert record.seconds > 0
        assert composite.shape == deblurred.shape == (64, 64, 3)
        np.testing.assert_array_equal(composite[foreground], sharp3[foreground])
        np.testing.assert_array_equal(deblurred[foreground], composite[foreground])
        assert record.rmse_blurry == pytest.approx(rmse(composite, sharp3, ~foreground))
        assert record.rmse_blurry > 0
