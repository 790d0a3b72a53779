"""Document sources: a local JSONL file or a Hugging Face dataset name."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterator, Optional

# dataset name -> (source text field, reference summary field)
HUB_FIELDS = {
    "xsum": ("document", "summary"),
    "cnn_dailymail": ("article", "highlights"),
    "aeslc": ("email_body", "subject_line"),
}


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    reference: str


def _load_jsonl(path: str, max_docs: Optional[int]) -> Iterator[Document]:
    with open(path, encoding="utf-8") as fh:
        count = 0
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if max_docs is not None and count >= max_docs:
                return
            obj = json.loads(line)
            if "document" not in obj or "reference" not in obj:
                raise ValueError(
                    f"{path} line {line_no}: records need 'document' and 'reference' fields"
                )
            yield Document(
                doc_id=str(obj.get("doc_id", f"doc-{line_no - 1:05d}")),
                text=obj["document"],
                reference=obj["reference"],
            )
            count += 1


def _load_hub(name: str, split: str, max_docs: Optional[int]) -> Iterator[Document]:
    try:
        from datasets import load_dataset
    except ImportError as exc:  # pragma: no cover - environment dependent
        raise RuntimeError(
            "loading hub datasets requires the 'datasets' package "
            "(pip install mc-summary-sampler[datasets]); "
            "alternatively pass a local JSONL file of documents"
        ) from exc
    dataset_name, _, dataset_config = name.partition(":")
    if dataset_name not in HUB_FIELDS:
        raise ValueError(
            f"unknown dataset {dataset_name!r}; known: {sorted(HUB_FIELDS)} "
            "(or pass a local JSONL file)"
        )
    text_field, ref_field = HUB_FIELDS[dataset_name]
    dataset = load_dataset(dataset_name, dataset_config or None, split=split)
    for index, example in enumerate(dataset):
        if max_docs is not None and index >= max_docs:
            return
        yield Document(
            doc_id=str(example.get("id", index)),
            text=example[text_field],
            reference=example[ref_field],
        )


def load_documents(source: str, split: str = "validation", max_docs: Optional[int] = None) -> Iterator[Document]:
    if source.endswith(".jsonl") or os.path.exists(source):
        return _load_jsonl(source, max_docs)
    return _load_hub(source, split, max_docs)
