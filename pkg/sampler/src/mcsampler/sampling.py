"""Stochastic summary generation with dropout active at inference.

Per document: N candidate summaries decoded with beam search while the
whole model sits in train mode (dropout live in every encoder and decoder
block), batched as N copies of the same input so each batch row sees its
own dropout masks; plus one deterministic summary with dropout off. Output
lines follow the shared JSONL corpus schema (doc_id, candidates,
reference, deterministic[, document]) and are flushed per document so an
interrupted run can resume.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from typing import Iterable, Iterator, Optional, TextIO

import torch

from .config import SamplerConfig
from .documents import Document

logger = logging.getLogger(__name__)


class ModelLoadError(RuntimeError):
    pass


def load_checkpoint(model_id: str, device: str = "cpu"):
    from transformers import AutoModelForSeq2SeqLM, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModelForSeq2SeqLM.from_pretrained(model_id)
    except Exception as exc:
        raise ModelLoadError(f"cannot load checkpoint {model_id!r}: {exc}") from exc
    model.to(device)
    model.eval()
    return tokenizer, model


def _doc_seed(base_seed: int, doc_id: str) -> int:
    digest = hashlib.sha256(doc_id.encode("utf-8")).digest()
    return (base_seed + int.from_bytes(digest[:4], "big")) % (2**31)


def _encode(tokenizer, document: Document, max_input_tokens: Optional[int], device: str):
    limit = max_input_tokens or getattr(tokenizer, "model_max_length", None)
    raw_length = len(tokenizer(document.text, truncation=False)["input_ids"])
    if limit is not None and raw_length > limit:
        logger.warning(
            "document %s has %d tokens, truncating to %d", document.doc_id, raw_length, limit
        )
    encoded = tokenizer(
        document.text,
        return_tensors="pt",
        truncation=limit is not None,
        max_length=limit,
    )
    return {key: value.to(device) for key, value in encoded.items()}


def _generate(model, tokenizer, encoded, copies: int, config: SamplerConfig) -> list[str]:
    batch = {key: value.repeat(copies, 1) for key, value in encoded.items()}
    kwargs = {"num_beams": config.num_beams, "do_sample": False}
    if config.max_summary_tokens is not None:
        kwargs["max_new_tokens"] = config.max_summary_tokens
        kwargs["min_new_tokens"] = 1
    with torch.no_grad():
        output = model.generate(**batch, **kwargs)
    return tokenizer.batch_decode(output, skip_special_tokens=True)


def summarize_document(model, tokenizer, document: Document, config: SamplerConfig) -> dict:
    """One corpus record: N candidates plus the deterministic baseline."""
    encoded = _encode(tokenizer, document, config.max_input_tokens, config.device)

    model.eval()
    deterministic = _generate(model, tokenizer, encoded, copies=1, config=config)[0]

    if config.dropout_enabled:
        model.train()  # dropout live in every encoder/decoder block
    torch.manual_seed(_doc_seed(config.seed, document.doc_id))
    candidates = _generate(model, tokenizer, encoded, copies=config.n_samples, config=config)
    model.eval()

    record = {
        "doc_id": document.doc_id,
        "candidates": candidates,
        "reference": document.reference,
        "deterministic": deterministic,
    }
    if config.include_document:
        record["document"] = document.text
    return record


def _existing_doc_ids(path: str) -> set[str]:
    done = set()
    if not os.path.exists(path):
        return done
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                done.add(json.loads(line)["doc_id"])
    return done


def sample(
    config: SamplerConfig,
    documents: Iterable[Document],
    out_path: str,
    resume: bool = False,
) -> int:
    """Run the sampling protocol over *documents*, appending JSONL records.

    Returns the number of records written. With ``resume`` set, documents
    whose doc_id already appears in the output file are skipped.
    """
    tokenizer, model = load_checkpoint(config.model, config.device)
    done = _existing_doc_ids(out_path) if resume else set()
    mode = "a" if resume and os.path.exists(out_path) else "w"
    written = 0
    with open(out_path, mode, encoding="utf-8", newline="\n") as fh:
        for document in documents:
            if document.doc_id in done:
                logger.info("skipping %s (already sampled)", document.doc_id)
                continue
            record = summarize_document(model, tokenizer, document, config)
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
            fh.flush()
            written += 1
    return written
