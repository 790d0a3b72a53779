"""Deterministic synthetic sample-set generator.

Stands in for stochastic decoding at desk scale: each document's candidates
are independent noisy copies of its reference, with the noise level
controlling the expected fraction of perturbed tokens. Substreams are
derived per (seed, doc_id, draw_index) with PCG64 behind a SeedSequence,
so corpora are reproducible regardless of generation order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .textnorm import TokenSequence, tokenize
from .uncertainty import SampleSet

OPERATIONS = ("token-drop", "adjacent-swap", "synonym-substitute", "token-duplicate")


def _key(text: str) -> int:
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "big")


def _substream(seed: int, doc_id: str, draw_index: int, purpose: str = "draw") -> np.random.Generator:
    return np.random.default_rng([seed, _key(doc_id), draw_index, _key(purpose)])


@dataclass(frozen=True)
class NoiseSpec:
    """Perturbation intensity and the operations allowed to realize it."""

    level: float
    rng_seed: int
    operations: tuple[str, ...] = OPERATIONS
    synonyms: Optional[Mapping[str, tuple[str, ...]]] = None

    def __post_init__(self):
        if not 0.0 <= self.level <= 1.0:
            raise ValueError(f"noise level must lie in [0, 1], got {self.level}")
        unknown = set(self.operations) - set(OPERATIONS)
        if unknown:
            raise ValueError(f"unknown operations: {sorted(unknown)}")

    def enabled(self) -> tuple[str, ...]:
        ops = self.operations
        if self.synonyms is None:
            ops = tuple(op for op in ops if op != "synonym-substitute")
        return ops


def perturb(reference: TokenSequence, spec: NoiseSpec, draw_index: int, doc_id: str = "") -> str:
    """One independently perturbed copy of *reference*, joined with spaces.

    Deterministic given (rng_seed, doc_id, draw_index). Each token is
    perturbed with probability ``spec.level`` by one uniformly chosen
    enabled operation.
    """
    rng = _substream(spec.rng_seed, doc_id, draw_index)
    ops = spec.enabled()
    out: list[str] = []
    i = 0
    tokens = list(reference)
    while i < len(tokens):
        token = tokens[i]
        if not ops or rng.random() >= spec.level:
            out.append(token)
            i += 1
            continue
        op = ops[int(rng.integers(len(ops)))]
        if op == "token-drop":
            i += 1
        elif op == "adjacent-swap":
            if i + 1 < len(tokens):
                out.extend([tokens[i + 1], token])
                i += 2
            else:
                out.append(token)
                i += 1
        elif op == "synonym-substitute":
            choices = spec.synonyms.get(token, ()) if spec.synonyms else ()
            if choices:
                out.append(choices[int(rng.integers(len(choices)))])
            else:
                out.append(token)
            i += 1
        else:  # token-duplicate
            out.extend([token, token])
            i += 1
    return " ".join(out)


def uniform_levels(count: int, seed: int) -> tuple[float, ...]:
    """Per-document noise levels drawn uniformly from [0, 1)."""
    rng = _substream(seed, "level-schedule", 0, purpose="levels")
    return tuple(float(x) for x in rng.random(count))


def generate_corpus(
    base_references: Sequence[str],
    n_samples: int,
    levels: Sequence[float],
    seed: int,
    operations: tuple[str, ...] = OPERATIONS,
    synonyms: Optional[Mapping[str, tuple[str, ...]]] = None,
    doc_id_prefix: str = "synth",
) -> list[SampleSet]:
    """One SampleSet per reference with N perturbed candidates.

    The ``deterministic`` field holds one additional perturbed draw at the
    same level, so comparisons between the selected median candidate and
    the deterministic baseline are fair. The noise level is echoed in the
    ``document`` metadata field.
    """
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    if len(levels) != len(base_references):
        raise ValueError(
            f"need one noise level per reference ({len(base_references)}), got {len(levels)}"
        )
    sample_sets = []
    for index, (reference, level) in enumerate(zip(base_references, levels)):
        doc_id = f"{doc_id_prefix}-{index:04d}"
        spec = NoiseSpec(level=level, rng_seed=seed, operations=operations, synonyms=synonyms)
        tokens = tokenize(reference)
        candidates = tuple(
            perturb(tokens, spec, draw_index=draw, doc_id=doc_id) for draw in range(n_samples)
        )
        sample_sets.append(
            SampleSet(
                doc_id=doc_id,
                candidates=candidates,
                reference=reference,
                deterministic=perturb(tokens, spec, draw_index=n_samples, doc_id=doc_id),
                document=f"noise_level={level:.6f}",
            )
        )
    return sample_sets


def load_synonyms(path) -> dict[str, tuple[str, ...]]:
    """Two-column TSV: token<TAB>synonym, one pair per line."""
    table: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ValueError(f"synonym table line {line_no}: expected two tab-separated columns")
            table.setdefault(parts[0], []).append(parts[1])
    return {token: tuple(values) for token, values in table.items()}
