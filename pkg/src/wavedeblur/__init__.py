"""Wavelet-packet style transfer for image deblurring.

Decompose a blurry image and a sharp (optionally binarized) style image
into full Haar wavelet packets, transfer per-band mean/std statistics
from style to blurry, and invert the transform to recover a sharpened
image. Ships blur synthesis, binarization, analysis tooling, and a CLI.
"""

from .analysis import (
    StatsRow,
    SweepEntry,
    detail_energy,
    level_sweep,
    sharpness,
    stats_report,
    write_stats_csv,
    write_sweep_csv,
)
from .backend import available_backends, get_backend, set_backend
from .blur import BLUR_KINDS, BlurSpec, apply_blur, build_kernel, sample_blur
from .image import (
    ImageMeta,
    clamp01,
    image_info,
    l1_distance,
    load_image,
    psnr,
    save_image,
)
from .packet import (
    FILTER_NAMES,
    WaveletPacket,
    haar_analysis_step,
    haar_synthesis_step,
    index_to_path,
    max_level,
    packet_decompose,
    packet_reconstruct,
    parse_path_text,
    path_text,
    path_to_index,
)
from .transfer import (
    SubbandStats,
    TransferConfig,
    binarize,
    deblur_idwt,
    prepare_style,
    subband_stats,
    wst_band,
    wst_packet,
    wst_reconstruct,
)
from .wpk import read_wpk, write_wpk

__version__ = "0.1.0"
