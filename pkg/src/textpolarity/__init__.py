"""Text polarity detection from the MBCV-versus-gamma curve of Otsu's method."""

from .conditions import ConditionConfig, ConditionReport, check_conditions
from .errors import (DegenerateHistogramError, DomainError, EmptyHistogramError,
                     FormatError, PolarityError, UnsupportedFormatError)
from .histogram import Histogram, build_histogram, from_counts
from .imageio import (LEVELS, BinaryImage, GrayImage, read_gray, rgb_to_gray,
                      write_binary, write_gray)
from .otsu import (ClassStats, OtsuResult, Polarity, binarize, class_stats,
                   otsu_threshold)
from .powerlaw import Gamma, transform_histogram, transform_image, transform_level
from .sweep import (DEFAULT_GAMMAS, GammaCurve, PolarityReport, SweepConfig,
                    Trend, classify_trend, detect_polarity, sweep_mbcv)
from .synth import (SynthSpec, case_i_spec, case_ii_spec, generate,
                    unimodal_spec)

__version__ = "0.1.0"
