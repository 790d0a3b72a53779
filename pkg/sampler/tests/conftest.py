import json

import pytest
import torch
from tokenizers import Tokenizer
from tokenizers.models import WordLevel
from tokenizers.pre_tokenizers import Whitespace
from transformers import BartConfig, BartForConditionalGeneration, PreTrainedTokenizerFast

WORDS = [
    "the", "a", "council", "approved", "budget", "after", "hearing", "on",
    "tuesday", "evening", "researchers", "reported", "decline", "seabird",
    "populations", "over", "decade", "match", "was", "postponed", "rain",
    "flooded", "stadium", "pitch", "farmers", "expect", "harvest", "this",
    "season", "museum", "unveiled", "manuscript", "archives",
]

DOCS = [
    {
        "doc_id": "tiny-000",
        "document": "the council approved the budget after a hearing on tuesday evening",
        "reference": "council approved budget on tuesday",
    },
    {
        "doc_id": "tiny-001",
        "document": "researchers reported a decline over the decade on seabird populations",
        "reference": "researchers reported seabird decline",
    },
    {
        "doc_id": "tiny-002",
        "document": "the match was postponed after rain flooded the stadium pitch this season",
        "reference": "match postponed after rain",
    },
]


@pytest.fixture(scope="session")
def tiny_checkpoint(tmp_path_factory):
    """Word-level tokenizer plus a small random-weight seq2seq model, saved
    locally so everything loads offline."""
    directory = tmp_path_factory.mktemp("tiny-checkpoint")
    vocab = {"<pad>": 0, "<s>": 1, "</s>": 2, "<unk>": 3}
    for word in WORDS:
        vocab[word] = len(vocab)
    backend = Tokenizer(WordLevel(vocab, unk_token="<unk>"))
    backend.pre_tokenizer = Whitespace()
    tokenizer = PreTrainedTokenizerFast(
        tokenizer_object=backend,
        pad_token="<pad>",
        bos_token="<s>",
        eos_token="</s>",
        unk_token="<unk>",
        model_max_length=48,
    )
    config = BartConfig(
        vocab_size=len(vocab),
        d_model=32,
        encoder_layers=2,
        decoder_layers=2,
        encoder_attention_heads=2,
        decoder_attention_heads=2,
        encoder_ffn_dim=64,
        decoder_ffn_dim=64,
        max_position_embeddings=64,
        dropout=0.3,
        attention_dropout=0.1,
        activation_dropout=0.1,
        pad_token_id=0,
        bos_token_id=1,
        eos_token_id=2,
        decoder_start_token_id=2,
        forced_bos_token_id=None,
        forced_eos_token_id=None,
    )
    torch.manual_seed(1234)
    model = BartForConditionalGeneration(config)
    model.save_pretrained(directory)
    tokenizer.save_pretrained(directory)
    return str(directory)


@pytest.fixture(scope="session")
def docs_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("docs") / "docs.jsonl"
    path.write_text(
        "".join(json.dumps(doc) + "\n" for doc in DOCS), encoding="utf-8"
    )
    return str(path)
