"""Readers for the graph-file and vocab formats of the codegraphs pipeline.

A graph file is line-delimited JSON with fields sample_id, variant, label,
nodes and edges; node arrays are [id, class, name-or-null, type-or-null,
token_count] plus, in code-token builds, a sixth element holding the raw
token list. A vocab file is ``<id>\t<token>`` lines whose first three ids are
the pad, unknown and blank tokens. This package only consumes those files;
it never imports the pipeline that writes them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import torch

EDGE_KINDS = ("AST_CHILD", "NAME_DEP", "CFLOW", "DATA_DEP")
RESERVED = ("<pad>", "<unk>", "-")
PAD_ID = 0
UNK_ID = 1
BLANK = "-"

THREE_PROP = "3prop"
CODE = "code"


class VocabMismatch(ValueError):
    """The vocab file does not carry the expected reserved prefix or ids."""


class SchemaError(ValueError):
    """A graph record does not match the published schema."""


def load_vocab(path) -> dict[str, int]:
    mapping: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                ident, token = line.split("\t", 1)
                ident = int(ident)
            except ValueError as exc:
                raise VocabMismatch(f"bad vocab line: {line!r}") from exc
            if ident != len(mapping):
                raise VocabMismatch("vocab ids must be dense and ordered")
            mapping[token] = ident
    for i, token in enumerate(RESERVED):
        if mapping.get(token) != i:
            raise VocabMismatch(f"reserved token {token!r} must have id {i}")
    return mapping


@dataclass
class GraphSample:
    sample_id: str
    label: int
    token_ids: torch.Tensor    # (N, T) long, pad id 0
    token_mask: torch.Tensor   # (N, T) float
    adjacency: torch.Tensor    # (K, N, N) float, adjacency[k][src, dst] = 1
    n_nodes: int


def _check_record(record: dict) -> None:
    for key in ("sample_id", "variant", "label", "nodes", "edges"):
        if key not in record:
            raise SchemaError(f"record is missing {key!r}")
    if not record["nodes"]:
        raise SchemaError(f"{record['sample_id']}: record has no nodes")
    for i, node in enumerate(record["nodes"]):
        if not isinstance(node, list) or len(node) < 5 or node[0] != i:
            raise SchemaError(f"{record['sample_id']}: bad node row {i}")
    for edge in record["edges"]:
        if len(edge) != 3 or edge[2] not in EDGE_KINDS:
            raise SchemaError(f"{record['sample_id']}: bad edge {edge!r}")


def _node_tokens(record: dict, encoding: str) -> list[list[str]]:
    if encoding == THREE_PROP:
        return [[node[1], node[2] if node[2] is not None else BLANK,
                 node[3] if node[3] is not None else BLANK]
                for node in record["nodes"]]
    if encoding == CODE:
        lists = []
        for node in record["nodes"]:
            if len(node) < 6 or not isinstance(node[5], list):
                raise SchemaError(
                    f"{record['sample_id']}: code encoding needs token lists "
                    "(build the graph file with --encoding code)")
            lists.append(node[5] if node[5] else [BLANK])
        return lists
    raise ValueError(f"unknown encoding {encoding!r}")


def sample_from_record(record: dict, vocab: dict[str, int],
                       encoding: str) -> GraphSample:
    _check_record(record)
    tokens = _node_tokens(record, encoding)
    n = len(tokens)
    # Code mode pads every node to the widest node of this graph before the
    # masked average; 3-prop is a constant three.
    width = 3 if encoding == THREE_PROP else max(len(t) for t in tokens)
    ids = torch.zeros((n, width), dtype=torch.long)
    mask = torch.zeros((n, width))
    for i, toks in enumerate(tokens):
        for j, tok in enumerate(toks):
            ids[i, j] = vocab.get(tok, UNK_ID)
            mask[i, j] = 1.0
    adjacency = torch.zeros((len(EDGE_KINDS), n, n))
    kind_index = {kind: k for k, kind in enumerate(EDGE_KINDS)}
    for src, dst, kind in record["edges"]:
        adjacency[kind_index[kind], src, dst] = 1.0
    label = record["label"] if record["label"] is not None else 0
    return GraphSample(record["sample_id"], label, ids, mask, adjacency, n)


def load_graphs(graph_file, vocab: dict[str, int],
                encoding: str = THREE_PROP) -> list[GraphSample]:
    """All samples of a graph file as tensors ready for the model."""
    samples = []
    with open(graph_file, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            samples.append(sample_from_record(json.loads(line), vocab, encoding))
    return samples
