"""Stochastic summary sampling from seq2seq checkpoints."""

from .config import SamplerConfig
from .documents import Document, load_documents
from .sampling import ModelLoadError, load_checkpoint, sample, summarize_document

__all__ = [
    "Document",
    "ModelLoadError",
    "SamplerConfig",
    "load_checkpoint",
    "load_documents",
    "sample",
    "summarize_document",
]
