"""Code-provision indexing and retrieval for grounded compliance QA.

Provisions are chunked one-to-one (a provision is a chunk, so citations
map directly to section labels), scored with Okapi BM25 (k1=1.2, b=0.75),
and assembled into a fixed prompt template under a whitespace-token
budget. Generation is delegated to any LlmClient.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .llm import LlmClient

DEFAULT_K = 4
DEFAULT_BUDGET = 2048

_CONTEXT_HEADER = (
    "You are a building-code compliance assistant. Answer the question"
    " using only the code provisions quoted below, and cite their section"
    " labels."
)
_NO_PROVISIONS_MARKER = "(no provisions found)"


class RetrievalError(Exception):
    pass


class DuplicateId(RetrievalError):
    pass


class EmptyIndex(RetrievalError):
    pass


class BudgetTooSmall(RetrievalError):
    pass


@dataclass(frozen=True)
class Provision:
    id: str
    section_label: str
    heading: str
    body: str


@dataclass(frozen=True)
class RetrievalResult:
    provision_id: str
    score: float
    rank: int  # 1-based


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumerics, drop empties."""
    return [t for t in re.split(r"[^a-z0-9]+", text.lower()) if t]


@dataclass
class ProvisionIndex:
    provisions: dict[str, Provision] = field(default_factory=dict)
    chunks: dict[str, Counter] = field(default_factory=dict)  # id -> term counts
    chunk_lengths: dict[str, int] = field(default_factory=dict)
    document_frequencies: Counter = field(default_factory=Counter)
    average_chunk_length: float = 0.0
    k1: float = 1.2
    b: float = 0.75

    def __len__(self) -> int:
        return len(self.chunks)

    def to_dict(self) -> dict:
        return {
            "params": {"k1": self.k1, "b": self.b},
            "average_chunk_length": self.average_chunk_length,
            "document_frequencies": dict(self.document_frequencies),
            "provisions": [
                {
                    "id": p.id,
                    "section_label": p.section_label,
                    "heading": p.heading,
                    "body": p.body,
                }
                for p in self.provisions.values()
            ],
            "chunks": {pid: dict(counts) for pid, counts in self.chunks.items()},
            "chunk_lengths": dict(self.chunk_lengths),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ProvisionIndex":
        index = cls(k1=raw["params"]["k1"], b=raw["params"]["b"])
        index.average_chunk_length = raw["average_chunk_length"]
        index.document_frequencies = Counter(raw["document_frequencies"])
        index.provisions = {
            p["id"]: Provision(p["id"], p["section_label"], p["heading"], p["body"])
            for p in raw["provisions"]
        }
        index.chunks = {pid: Counter(c) for pid, c in raw["chunks"].items()}
        index.chunk_lengths = dict(raw["chunk_lengths"])
        return index


def ingest_provisions(provisions: Sequence[Provision]) -> ProvisionIndex:
    """Build a BM25 index, one chunk per provision.

    The heading is prepended to the body before tokenization so heading
    terms are searchable. Raises DuplicateId on repeated provision ids.
    """
    index = ProvisionIndex()
    for provision in provisions:
        if provision.id in index.provisions:
            raise DuplicateId(provision.id)
        index.provisions[provision.id] = provision
        tokens = tokenize(f"{provision.heading} {provision.body}")
        index.chunks[provision.id] = Counter(tokens)
        index.chunk_lengths[provision.id] = len(tokens)
        for term in set(tokens):
            index.document_frequencies[term] += 1
    if index.chunks:
        index.average_chunk_length = sum(index.chunk_lengths.values()) / len(
            index.chunks
        )
    return index


def _idf(index: ProvisionIndex, term: str) -> float:
    df = index.document_frequencies.get(term, 0)
    if df == 0:
        return 0.0
    n = len(index.chunks)
    return math.log((n - df + 0.5) / (df + 0.5) + 1.0)


def score(index: ProvisionIndex, provision_id: str, query: str) -> float:
    """BM25 score of one chunk against a query."""
    counts = index.chunks[provision_id]
    length = index.chunk_lengths[provision_id]
    total = 0.0
    for term in tokenize(query):
        tf = counts.get(term, 0)
        if tf == 0:
            continue
        denom = tf + index.k1 * (1 - index.b + index.b * length / index.average_chunk_length)
        total += _idf(index, term) * tf * (index.k1 + 1) / denom
    return total


def retrieve(index: ProvisionIndex, query: str, k: int = DEFAULT_K) -> list[RetrievalResult]:
    """Top-k provisions by BM25 score, descending; ties by ascending id.

    Only positive-score matches are returned, so a query sharing no terms
    with the corpus yields an empty list.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not index.chunks:
        raise EmptyIndex("index has no chunks")
    scored = [
        (pid, score(index, pid, query))
        for pid in index.chunks
    ]
    positive = [(pid, s) for pid, s in scored if s > 0.0]
    positive.sort(key=lambda item: (-item[1], item[0]))
    return [
        RetrievalResult(provision_id=pid, score=s, rank=i + 1)
        for i, (pid, s) in enumerate(positive[:k])
    ]


def assemble_context(
    results: Sequence[RetrievalResult],
    index: ProvisionIndex,
    query: str,
    budget: int = DEFAULT_BUDGET,
) -> str:
    """Deterministic prompt: header, provisions in rank order, question.

    Provisions are included whole, in rank order, while they fit the
    whitespace-token budget; a provision that does not fit is omitted
    entirely (later, shorter ones are not promoted past it). With no
    included provisions the prompt carries an explicit marker instead.
    """
    from .llm import approx_tokens

    question_block = f"Question: {query}"
    base_tokens = approx_tokens(_CONTEXT_HEADER) + approx_tokens(question_block)
    if budget < base_tokens:
        raise BudgetTooSmall(
            f"budget {budget} cannot fit the template and query ({base_tokens} tokens)"
        )
    blocks: list[str] = []
    remaining = budget - base_tokens
    for result in sorted(results, key=lambda r: r.rank):
        provision = index.provisions[result.provision_id]
        block = f"[{provision.section_label}] {provision.heading}\n{provision.body}"
        cost = approx_tokens(block)
        if cost <= remaining:
            blocks.append(block)
            remaining -= cost
        else:
            break
    if not blocks:
        blocks = [_NO_PROVISIONS_MARKER]
    return "\n\n".join([_CONTEXT_HEADER, *blocks, question_block])


def context_provision_ids(context: str, index: ProvisionIndex) -> list[str]:
    """Ids of provisions present in an assembled context, in context order."""
    found = []
    for pid, p in index.provisions.items():
        position = context.find(f"[{p.section_label}] {p.heading}")
        if position >= 0:
            found.append((position, pid))
    return [pid for _, pid in sorted(found)]


def answer_with_rag(
    index: ProvisionIndex,
    query: str,
    generator: LlmClient,
    k: int = DEFAULT_K,
    budget: int = DEFAULT_BUDGET,
) -> tuple[str, list[str]]:
    """retrieve -> assemble -> generate; returns (answer, cited ids).

    Cited ids are the provisions included in the generation context. An
    empty corpus still generates, with the no-provisions marker.
    """
    try:
        results = retrieve(index, query, k)
    except EmptyIndex:
        results = []
    context = assemble_context(results, index, query, budget)
    answer = generator.generate([{"role": "user", "content": context}])
    return answer, context_provision_ids(context, index)


def load_corpus(path: str | Path) -> list[Provision]:
    """Read a provision corpus: a JSON array of provision objects."""
    raw = json.loads(Path(path).read_text())
    return [
        Provision(
            id=item["id"],
            section_label=item["section_label"],
            heading=item.get("heading", ""),
            body=item["body"],
        )
        for item in raw
    ]
