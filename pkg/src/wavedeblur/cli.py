"""Command-line interface.

One binary, eight subcommands: dwt, idwt, deblur, blur, binarize,
stats, sweep, batch. Flag values win over an optional flat TOML config
file (``--config``), which wins over environment fallbacks
(``WAVEDEBLUR_THREADS``) and built-in defaults. Diagnostics go to
stderr; data goes to files only. Every command is deterministic given
its flags, so re-runs produce byte-identical outputs.
"""

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analysis import (
    level_sweep,
    sharpness,
    stats_report,
    write_stats_csv,
    write_sweep_csv,
)
from .blur import BlurSpec, apply_blur, sample_blur
from .image import l1_distance, load_image, psnr, save_image
from .packet import index_to_path, packet_decompose, packet_reconstruct, path_text
from .transfer import (
    BINARIZE_METHODS,
    STYLE_MODES,
    TransferConfig,
    binarize,
    deblur_idwt,
)
from .wpk import read_wpk, write_wpk

SUMMARY_HEADER = ("row", "status", "l1_blurry", "psnr", "sharpness_in", "sharpness_out")
MANIFEST_HEADER = ("blurry", "style", "output")


@dataclass
class RunConfig:
    level: int = 3
    style_mode: str = "binarized"
    eps: float = 1e-8
    seed: int = 0
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    binarize_method: str = "otsu"
    window: int = 15
    offset: float = 0.0

    def transfer_config(self) -> TransferConfig:
        return TransferConfig(
            level=self.level,
            eps=self.eps,
            style_mode=self.style_mode,
            binarize_method=self.binarize_method,
            binarize_window=self.window,
            binarize_offset=self.offset,
        )


_RUN_FIELDS = {
    "level": int,
    "style_mode": str,
    "eps": float,
    "seed": int,
    "threads": int,
    "binarize_method": str,
    "window": int,
    "offset": float,
}


def _parse_config_file(path: str) -> dict:
    """Flat TOML subset: ``key = value`` lines with strings, numbers, and
    booleans. Sections are rejected rather than silently ignored."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("["):
                raise ValueError(f"{path}:{lineno}: config sections are not supported")
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key = key.strip()
            value = value.split("#", 1)[0].strip()
            if value.startswith('"') and value.endswith('"') and len(value) >= 2:
                values[key] = value[1:-1]
            elif value in ("true", "false"):
                values[key] = value == "true"
            else:
                try:
                    values[key] = int(value)
                except ValueError:
                    try:
                        values[key] = float(value)
                    except ValueError:
                        raise ValueError(f"{path}:{lineno}: cannot parse value {value!r}") from None
    return values


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    file_values = {}
    if getattr(args, "config", None):
        file_values = _parse_config_file(args.config)
        unknown = set(file_values) - set(_RUN_FIELDS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
    chosen = {}
    for name, cast in _RUN_FIELDS.items():
        flag = getattr(args, name, None)
        if flag is not None:
            chosen[name] = cast(flag)
        elif name in file_values:
            chosen[name] = cast(file_values[name])
        elif name == "threads" and os.environ.get("WAVEDEBLUR_THREADS"):
            chosen[name] = int(os.environ["WAVEDEBLUR_THREADS"])
    return RunConfig(**chosen)


def _add_transfer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--level", type=int, help="decomposition level (default 3)")
    p.add_argument("--style-mode", dest="style_mode", choices=STYLE_MODES,
                   help="use the style image raw or binarized (default binarized)")
    p.add_argument("--eps", type=float, help="std floor for constant bands (default 1e-8)")
    _add_binarize_flags(p)


def _add_binarize_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--binarize-method", dest="binarize_method", choices=BINARIZE_METHODS,
                   help="binarization algorithm (default otsu)")
    p.add_argument("--window", type=int, help="adaptive-mean window, odd >= 3 (default 15)")
    p.add_argument("--offset", type=float, help="adaptive-mean offset (default 0)")


def _info(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_dwt(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    img = load_image(args.input)
    packet = packet_decompose(img, cfg.level)
    write_wpk(packet, args.output)
    if args.dump_bands:
        os.makedirs(args.dump_bands, exist_ok=True)
        digits = len(str(packet.band_count - 1))
        for i in range(packet.band_count):
            band = packet.bands[i]
            span = band.max() - band.min()
            normalized = (band - band.min()) / span if span > 0 else np.zeros_like(band)
            name = f"band_{i:0{digits}d}_{path_text(index_to_path(i, packet.level))}.png"
            save_image(normalized, os.path.join(args.dump_bands, name), bit_depth=8)
    return 0


def cmd_idwt(args: argparse.Namespace) -> int:
    packet = read_wpk(args.input)
    save_image(packet_reconstruct(packet), args.output, bit_depth=args.bit_depth)
    return 0


def cmd_deblur(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    blurry = load_image(args.blurry)
    style = load_image(args.style)
    out = deblur_idwt(blurry, style, cfg.transfer_config())
    save_image(out, args.output, bit_depth=args.bit_depth)
    parts = [
        f"l1_blurry={l1_distance(out, blurry):.6g}",
        f"psnr_blurry={psnr(out, blurry):.6g}",
        f"sharpness_in={sharpness(blurry):.6g}",
        f"sharpness_out={sharpness(out):.6g}",
    ]
    if args.truth:
        truth = load_image(args.truth)
        parts.append(f"l1_truth={l1_distance(out, truth):.6g}")
        parts.append(f"psnr_truth={psnr(out, truth):.6g}")
    _info(" ".join(parts))
    return 0


def cmd_blur(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    if args.spec:
        spec = BlurSpec.from_text(args.spec)
    else:
        spec = sample_blur(cfg.seed)
    img = load_image(args.input)
    save_image(apply_blur(img, spec), args.output, bit_depth=args.bit_depth)
    _info(f"spec={spec.to_text()}")
    return 0


def cmd_binarize(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    img = load_image(args.input)
    out = binarize(img, method=cfg.binarize_method, window=cfg.window, offset=cfg.offset)
    save_image(out, args.output, bit_depth=args.bit_depth)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    if args.labels:
        labels = [s.strip() for s in args.labels.split(",")]
        if len(labels) != len(args.images):
            raise ValueError(
                f"got {len(labels)} labels for {len(args.images)} images"
            )
    else:
        labels = [os.path.splitext(os.path.basename(p))[0] for p in args.images]
    images = [(label, load_image(path)) for label, path in zip(labels, args.images)]
    write_stats_csv(stats_report(images, cfg.level), args.output)
    return 0


def _parse_levels(text: str) -> list[int]:
    levels: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if "-" in chunk:
            lo, hi = chunk.split("-", 1)
            levels.extend(range(int(lo), int(hi) + 1))
        else:
            levels.append(int(chunk))
    if not levels:
        raise ValueError(f"no levels in {text!r}")
    return levels


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    blurry = load_image(args.blurry)
    style = load_image(args.style)
    if args.output_dir:
        os.makedirs(args.output_dir, exist_ok=True)
    entries = level_sweep(
        blurry,
        style,
        cfg.transfer_config(),
        levels=_parse_levels(args.levels),
        save_dir=args.output_dir,
    )
    write_sweep_csv(entries, args.output)
    return 0


@dataclass(frozen=True)
class ManifestRow:
    blurry: str
    style: str
    output: str
    blur_text: str = ""


def _read_manifest(path: str) -> list[ManifestRow]:
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for fields in csv.reader(fh):
            fields = [f.strip() for f in fields]
            if not fields or not any(fields):
                continue
            if not rows and tuple(f.lower() for f in fields[:3]) == MANIFEST_HEADER:
                continue  # optional header line
            if len(fields) not in (3, 4) or not all(fields[:3]):
                raise ValueError(f"bad manifest row: {fields}")
            rows.append(ManifestRow(*fields))
    return rows


def _run_manifest_row(row: ManifestRow, cfg: RunConfig) -> dict:
    blurry = load_image(row.blurry)
    if row.blur_text:
        blurry = apply_blur(blurry, BlurSpec.from_text(row.blur_text))
    style = load_image(row.style)
    out = deblur_idwt(blurry, style, cfg.transfer_config())
    save_image(out, row.output, bit_depth=8)
    return {
        "l1_blurry": l1_distance(out, blurry),
        "psnr": psnr(out, blurry),
        "sharpness_in": sharpness(blurry),
        "sharpness_out": sharpness(out),
    }


def cmd_batch(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    if cfg.threads < 1:
        raise ValueError(f"threads must be >= 1, got {cfg.threads}")
    rows = _read_manifest(args.manifest)

    def worker(row: ManifestRow):
        try:
            return "ok", _run_manifest_row(row, cfg)
        except (ValueError, OSError) as exc:
            return f"error: {exc}", None

    if rows:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(worker, rows))
    else:
        results = []

    failures = 0
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for i, (status, metrics) in enumerate(results, 1):
            if metrics is None:
                failures += 1
                writer.writerow([i, status, "", "", "", ""])
            else:
                writer.writerow(
                    [i, status]
                    + [f"{metrics[k]:.17g}" for k in SUMMARY_HEADER[2:]]
                )
    if failures:
        _info(f"{failures} of {len(rows)} rows failed")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavedeblur",
        description="Wavelet-packet style transfer for image deblurring",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dwt", help="decompose an image into a WPK1 container")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True, help="output .wpk path")
    p.add_argument("--level", type=int)
    p.add_argument("--dump-bands", metavar="DIR",
                   help="also write each band as a min-max normalized PNG")
    p.add_argument("--config")
    p.set_defaults(func=cmd_dwt)

    p = sub.add_parser("idwt", help="reconstruct an image from a WPK1 container")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=8)
    p.set_defaults(func=cmd_idwt)

    p = sub.add_parser("deblur", help="transfer sub-band statistics from a style image")
    p.add_argument("blurry")
    p.add_argument("style")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--truth", help="ground-truth image for extra metrics")
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=8)
    _add_transfer_flags(p)
    p.add_argument("--config")
    p.set_defaults(func=cmd_deblur)

    p = sub.add_parser("blur", help="apply a synthetic blur")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--spec", help="blur spec kind:sigma:angle:seed")
    group.add_argument("--seed", type=int, help="sample a spec from this seed")
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=8)
    p.add_argument("--config")
    p.set_defaults(func=cmd_blur)

    p = sub.add_parser("binarize", help="threshold an image to {0, 1}")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    _add_binarize_flags(p)
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=8)
    p.add_argument("--config")
    p.set_defaults(func=cmd_binarize)

    p = sub.add_parser("stats", help="per-band mean/std CSV for one or more images")
    p.add_argument("images", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--level", type=int)
    p.add_argument("--labels", help="comma-separated labels (default: file stems)")
    p.add_argument("--config")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", help="run the pipeline across levels, CSV of metrics")
    p.add_argument("blurry")
    p.add_argument("style")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--levels", default="1-8", help="e.g. 1-8 or 1,3,8 (default 1-8)")
    p.add_argument("--output-dir", help="save per-level reconstructions here")
    _add_transfer_flags(p)
    p.add_argument("--config")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("batch", help="process a manifest of blurry/style/output rows")
    p.add_argument("manifest")
    p.add_argument("-o", "--output", required=True, help="summary CSV path")
    p.add_argument("--threads", type=int)
    _add_transfer_flags(p)
    p.add_argument("--config")
    p.set_defaults(func=cmd_batch)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        _info(f"wavedeblur: error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
