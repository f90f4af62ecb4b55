"""Heavy hexagonal code workbench: layouts, noise, canonicalization, decoding."""

from heavyhex._core import (
    __version__,
    canonical_bitflip,
    canonical_phaseflip,
    class_count,
    effective_cycle_prob,
    generate_dataset,
    layout,
    logical_error_rate,
    lookup_decode,
    mwpm_decode,
    syndrome,
)

__all__ = [
    "__version__",
    "canonical_bitflip",
    "canonical_phaseflip",
    "class_count",
    "effective_cycle_prob",
    "generate_dataset",
    "layout",
    "logical_error_rate",
    "lookup_decode",
    "mwpm_decode",
    "syndrome",
]
