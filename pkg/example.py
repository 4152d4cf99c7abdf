#!/usr/bin/env python3
"""Example usage of the deblurring library on synthetic data."""

import numpy as np

from saldeblur import DeblurConfig, DeblurPipeline, SynthSpec
from saldeblur.bench import kernel_ncc, rmse, synth_blur, synth_kernel
from saldeblur.exceptions import ConfigurationError


def make_scene(size: int = 128, seed: int = 0) -> np.ndarray:
    """Random rectangles on a gray field: plenty of straight edges."""
    rng = np.random.default_rng(seed)
    image = np.full((size, size), 0.5)
    for _ in range(24):
        x, y = rng.integers(0, size - 16, size=2)
        w, h = rng.integers(6, 32, size=2)
        image[y:y + h, x:x + w] = rng.uniform(0.0, 1.0)
    return image


def main():
    print("=== Example 1: Uniform blind deblurring ===")
    sharp = make_scene()
    spec = SynthSpec.parse("line:9:30", noise=0.005, seed=1, kernel_size=9)
    kernel_true = synth_kernel(spec)
    blurry = synth_blur(sharp, spec, kernel=kernel_true)

    pipeline = DeblurPipeline(DeblurConfig(kernel_size=9))
    deblurred, kernel = pipeline.deblur_uniform(blurry)

    print(f"RMSE blurry:    {rmse(blurry, sharp):.4f}")
    print(f"RMSE deblurred: {rmse(deblurred, sharp):.4f}")
    print(f"Kernel NCC:     {kernel_ncc(kernel, kernel_true):.3f}")
    print()

    print("=== Example 2: Shock-filter baseline ===")
    config = DeblurConfig(kernel_size=9, steps=["shock_predict", "threshold", "estimate", "denoise", "deconvolve"])
    _, shock_kernel = DeblurPipeline(config).deblur_uniform(blurry)
    print(f"Kernel NCC (shock prediction): {kernel_ncc(shock_kernel, kernel_true):.3f}")
    print()

    print("=== Example 3: Error Handling ===")
    try:
        DeblurPipeline({"kernel_size": 9, "iterations_per_scale": 0}).deblur_uniform(blurry)
    except ConfigurationError as e:
        print(f"Configuration error (expected): {e}")
    print()

    print("=== Example 4: Statistics ===")
    stats = pipeline.get_statistics()
    print(f"Total steps executed: {stats['step_count']}")
    print(f"Success rate: {stats['success_rate']:.2%}")
    print(f"Total execution time: {stats['total_execution_time']:.4f}s")


if __name__ == '__main__':
    main()
