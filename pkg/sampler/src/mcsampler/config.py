from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SamplerConfig:
    """Generation settings for one sampling run.

    ``dropout_enabled`` controls the N candidate passes only: True for MC
    sampling, False for a baseline run whose candidates all coincide. The
    ``deterministic`` field of each record is always produced with dropout
    off.
    """

    model: str
    n_samples: int = 10
    num_beams: int = 8
    dropout_enabled: bool = True
    split: str = "validation"
    max_docs: Optional[int] = None
    seed: int = 0
    device: str = "cpu"
    max_input_tokens: Optional[int] = None
    max_summary_tokens: Optional[int] = None
    include_document: bool = False

    def __post_init__(self):
        if self.n_samples < 2:
            raise ValueError(f"n_samples must be >= 2, got {self.n_samples}")
        if self.num_beams < 1:
            raise ValueError(f"num_beams must be >= 1, got {self.num_beams}")
