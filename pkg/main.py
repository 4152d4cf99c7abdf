#!/usr/bin/env python3
"""Command-line entry point for the deblurring library."""

import functools
import sys
from pathlib import Path

import click
from rich.console import Console
from rich.table import Table

from saldeblur.bench.metrics import psnr
from saldeblur.bench.report import evaluate, run_synthetic, run_synthetic_spatially_variant, write_report
from saldeblur.bench.synth import synth_blur, synth_kernel
from saldeblur.core.pipeline import DeblurPipeline, configure_logging
from saldeblur.exceptions import DeblurError
from saldeblur.imaging.color import rgb_to_gray
from saldeblur.imaging.io import (
    edge_map_to_image,
    load,
    load_kernel,
    load_mask,
    save,
    save_kernel_image,
    save_mask,
)
from saldeblur.latent.pde import predict_latent
from saldeblur.latent.shock import predict_shock
from saldeblur.models.config import load_config
from saldeblur.models.data import BenchReport, SynthSpec
from saldeblur.saliency.detection import binarize_and_dilate, saliency_map
from saldeblur.saliency.rectangle import largest_background_rectangle

console = Console()

MODES = {"sharp-fg": "sharp_foreground", "blurry-fg": "blurry_foreground"}


def config_options(func):
    """Options shared by every command that runs the deblurring pipeline."""
    options = [
        click.option('--config', '-c', 'config_path', type=click.Path(exists=True, dir_okay=False),
                     help='Configuration file (JSON or key = value)'),
        click.option('--ksize', '-k', type=int, help='Kernel size (odd)'),
        click.option('--alpha0', type=float, help='Initial gradient-similarity weight'),
        click.option('--mu', type=float, help='Per-iteration alpha decay'),
        click.option('--beta', type=float, help='Sparsity weight'),
        click.option('--inner-iters', type=int, help='Inner (v, L) alternations of the final deconvolution'),
        click.option('--iterations', type=int, help='Iterations per pyramid scale'),
        click.option('--threads', type=int, help='Threads for per-channel deconvolution'),
        click.option('--verbose', '-v', is_flag=True, help='Verbose output'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _load_config(config_path=None, ksize=None, alpha0=None, mu=None, beta=None, inner_iters=None,
                 iterations=None, threads=None, verbose=False):
    """Load the configuration file and apply command-line overrides, then set up logging."""
    config = load_config(
        config_path,
        kernel_size=ksize,
        alpha0=alpha0,
        mu=mu,
        beta=beta,
        inner_iterations=inner_iters,
        iterations_per_scale=iterations,
        threads=threads,
    )
    configure_logging("DEBUG" if verbose else config.logging_level)
    return config


def handle_errors(func):
    """Report library errors in red and exit with status 1."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except DeblurError as e:
            console.print(f"[red]Error: {e}[/red]")
            sys.exit(1)
    return wrapper


def _display_record(record) -> None:
    table = Table(title="Evaluation", show_header=True, header_style="bold magenta")
    table.add_column("Metric", style="cyan")
    table.add_column("Value", style="green")
    for key, value in record.model_dump(by_alias=True).items():
        if value is not None:
            table.add_row(key, f"{value:.6g}" if isinstance(value, float) else str(value))
    console.print(table)


@click.group()
def cli():
    """Blind motion deblurring with saliency-based compensate fusion."""


@cli.command()
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--output', '-o', required=True, type=click.Path(dir_okay=False), help='Deblurred image')
@click.option('--dump-kernel', type=click.Path(dir_okay=False), help='Write the kernel (.txt text, else PNG)')
@click.option('--trace', type=click.Path(dir_okay=False), help='Write the per-iteration CSV trace')
@click.option('--dump-dir', type=click.Path(file_okay=False), help='Directory for per-iteration diagnostics')
@config_options
@handle_errors
def deblur(input_path, output, dump_kernel, trace, dump_dir, **options):
    """Uniform blind deblurring."""
    config = _load_config(**options)
    pipeline = DeblurPipeline(config, dump_dir=dump_dir)
    image = load(input_path)

    deblurred, kernel = pipeline.deblur_uniform(image)

    save(deblurred, output)
    if dump_kernel:
        save_kernel_image(kernel, dump_kernel)
    if trace:
        pipeline.statistics.write_trace_csv(trace)
    console.print(f"[green]Wrote {output}[/green] ({pipeline.get_statistics()['iterations']} iterations)")


@cli.command('deblur-sv')
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--output', '-o', required=True, type=click.Path(dir_okay=False), help='Deblurred image')
@click.option('--mode', type=click.Choice(list(MODES)), default='sharp-fg', help='Which side carries the blur')
@click.option('--mask', 'mask_path', type=click.Path(exists=True, dir_okay=False), help='Mask overriding saliency')
@click.option('--mask-out', type=click.Path(dir_okay=False), help='Write the mask that was used')
@click.option('--dump-kernel', type=click.Path(dir_okay=False), help='Write the kernel (.txt text, else PNG)')
@click.option('--no-compensate', is_flag=True, help='Deconvolve without first blurring the sharp side')
@config_options
@handle_errors
def deblur_sv(input_path, output, mode, mask_path, mask_out, dump_kernel, no_compensate, **options):
    """Spatially-variant deblurring of a sharp/blurred foreground-background split."""
    config = _load_config(**options)
    pipeline = DeblurPipeline(config)
    image = load(input_path)
    mask = load_mask(mask_path) if mask_path else None

    deblurred, kernel, used_mask = pipeline.deblur_spatially_variant(
        image, MODES[mode], mask, compensate=not no_compensate)

    save(deblurred, output)
    if mask_out:
        save_mask(used_mask, mask_out)
    if dump_kernel:
        save_kernel_image(kernel, dump_kernel)
    console.print(f"[green]Wrote {output}[/green]")


@cli.command('deblur-multi')
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--mask', 'mask_paths', multiple=True, type=click.Path(exists=True, dir_okay=False),
              help='Mask of one blurred region (repeatable)')
@click.option('--output', '-o', required=True, type=click.Path(dir_okay=False), help='Deblurred image')
@config_options
@handle_errors
def deblur_multi(input_path, mask_paths, output, **options):
    """Deblur several regions, each with its own kernel."""
    config = _load_config(**options)
    image = load(input_path)
    masks = [load_mask(path) for path in mask_paths]

    deblurred = DeblurPipeline(config).deblur_multi_region(image, masks)

    save(deblurred, output)
    console.print(f"[green]Wrote {output}[/green] ({len(masks)} regions)")


@cli.command()
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--output', '-o', required=True, type=click.Path(dir_okay=False), help='Saliency map image')
@click.option('--mask-out', type=click.Path(dir_okay=False), help='Binary mask (PGM)')
@config_options
@handle_errors
def saliency(input_path, output, mask_out, **options):
    """Saliency map, binary mask and the largest background rectangle."""
    config = _load_config(**options)
    params = config.saliency_params()
    image = load(input_path)

    smap = saliency_map(image)
    mask = binarize_and_dilate(smap, params.threshold_scale, params.dilate_radius)

    save(smap, output)
    if mask_out:
        save_mask(mask, mask_out)
    try:
        rect = largest_background_rectangle(mask, params.min_side)
        click.echo(str(rect))
    except DeblurError as e:
        console.print(f"[yellow]{e}[/yellow]")


@cli.command()
@click.argument('sharp_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--kernel', 'kernel_spec', required=True, help='line:LEN:ANGLE, gaussian:SIGMA or disk:RADIUS')
@click.option('--ksize', '-k', type=int, help='Kernel size (odd); derived from the family when omitted')
@click.option('--noise', type=float, default=0.0, show_default=True, help='Gaussian noise sigma')
@click.option('--seed', type=int, default=0, show_default=True, help='Noise seed')
@click.option('--output', '-o', required=True, type=click.Path(dir_okay=False), help='Blurred image')
@click.option('--kernel-out', type=click.Path(dir_okay=False), help='Write the ground-truth kernel')
@handle_errors
def synth(sharp_path, kernel_spec, ksize, noise, seed, output, kernel_out):
    """Generate a synthetically blurred image with a known kernel."""
    try:
        spec = SynthSpec.parse(kernel_spec, noise=noise, seed=seed, kernel_size=ksize)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--kernel")
    sharp = load(sharp_path)
    kernel = synth_kernel(spec)

    save(synth_blur(sharp, spec, kernel=kernel), output)
    if kernel_out:
        save_kernel_image(kernel, kernel_out)
    console.print(f"[green]Wrote {output}[/green] ({kernel.shape[0]}x{kernel.shape[0]} kernel)")


@cli.command('eval')
@click.option('--sharp', 'sharp_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--blurry', 'blurry_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--deblurred', 'deblurred_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--kernel-true', type=click.Path(exists=True, dir_okay=False), help='Ground-truth kernel file')
@click.option('--kernel-est', type=click.Path(exists=True, dir_okay=False), help='Estimated kernel file')
@click.option('--image-id', default=None, help='Record id (defaults to the sharp file stem)')
@click.option('--json', 'json_path', type=click.Path(dir_okay=False), help='Write the report as JSON')
@handle_errors
def evaluate_command(sharp_path, blurry_path, deblurred_path, kernel_true, kernel_est, image_id, json_path):
    """Score a deblurred image against its sharp ground truth."""
    record = evaluate(
        load(sharp_path),
        load(blurry_path),
        load(deblurred_path),
        image_id=image_id or Path(sharp_path).stem,
        kernel_true=load_kernel(kernel_true) if kernel_true else None,
        kernel_est=load_kernel(kernel_est) if kernel_est else None,
    )
    _display_record(record)
    if json_path:
        write_report(BenchReport(records=[record]), json_path)


@cli.command()
@click.argument('sharp_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--kernel', 'kernel_spec', default='line:15:30', show_default=True, help='Ground-truth kernel spec')
@click.option('--noise', type=float, default=0.005, show_default=True, help='Gaussian noise sigma')
@click.option('--seed', type=int, default=1, show_default=True, help='Noise seed')
@click.option('--mode', type=click.Choice(['uniform', 'sv']), default='uniform', show_default=True,
              help='Blur the whole image, or only the background around a sharp foreground')
@click.option('--mask', 'mask_path', type=click.Path(exists=True, dir_okay=False),
              help='Sharp foreground for --mode sv (defaults to a centered box)')
@click.option('--no-compensate', is_flag=True, help='Skip compensate fusion in --mode sv')
@click.option('--json', 'json_path', type=click.Path(dir_okay=False), help='Write the report as JSON')
@click.option('--no-timing', is_flag=True, help='Leave wall-clock seconds out of the JSON report')
@click.option('--output', '-o', type=click.Path(dir_okay=False), help='Write the deblurred image')
@config_options
@handle_errors
def bench(sharp_path, kernel_spec, noise, seed, mode, mask_path, no_compensate, json_path, no_timing, output,
          **options):
    """Synthesize, deblur and score in one run; only the deblur call is timed.

    In sv mode the RMSE columns cover the blurred background only.
    """
    config = _load_config(**options)
    try:
        spec = SynthSpec.parse(kernel_spec, noise=noise, seed=seed, kernel_size=config.kernel_size)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--kernel")

    sharp = load(sharp_path)
    image_id = Path(sharp_path).stem
    if mode == 'sv':
        foreground = load_mask(mask_path) if mask_path else None
        record, blurry, deblurred = run_synthetic_spatially_variant(
            sharp, spec, config, foreground, image_id=image_id, compensate=not no_compensate)
        _display_record(record)
    else:
        record, blurry, deblurred = run_synthetic(sharp, spec, config, image_id=image_id)
        _display_record(record)
        console.print(f"PSNR blurry {psnr(blurry, sharp):.2f} dB, deblurred {psnr(deblurred, sharp):.2f} dB")
    if output:
        save(deblurred, output)
    if json_path:
        write_report(BenchReport(records=[record]), json_path, include_timing=not no_timing)


@cli.command()
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--output', '-o', required=True, type=click.Path(dir_okay=False), help='Predicted latent image')
@click.option('--edge-out', type=click.Path(dir_okay=False), help='Edge map -lambda * trace(TH) (PDE method only)')
@click.option('--method', type=click.Choice(['pde', 'shock']), default='pde', show_default=True)
@click.option('--lam', type=float, default=None, help='Edge-enhancement strength (defaults to lambda0)')
@config_options
@handle_errors
def predict(input_path, output, edge_out, method, lam, **options):
    """Latent-image prediction on the grayscale input."""
    config = _load_config(**options)
    gray = rgb_to_gray(load(input_path))

    if method == 'pde':
        predicted, edge_map = predict_latent(
            gray, config.predict_params(config.lambda0 if lam is None else lam), return_edge_map=True)
        if edge_out:
            save(edge_map_to_image(edge_map), edge_out)
    else:
        predicted = predict_shock(gray, config.shock_params())

    save(predicted, output)
    console.print(f"[green]Wrote {output}[/green]")


if __name__ == '__main__':
    cli()
