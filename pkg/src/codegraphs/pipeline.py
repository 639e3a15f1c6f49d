"""Corpus I/O: manifests, line-delimited graph records, corpus statistics and
the memory-comparison table.

A graph file holds one JSON record per line, in manifest order, with the
fields ``sample_id``, ``variant``, ``label``, ``nodes`` and ``edges``. Node
arrays are ``[id, class, name-or-null, type-or-null, token_count]`` carrying
the encoded tokens (null stands for the blank property); when the corpus is
built with the code-token encoding each node array gains a sixth element,
the raw token list, which is what the model side averages. Identical inputs
and flags always produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .encoding import (
    BLANK, EncodedGraph, EncodedNode, EmptyCorpus, build_vocab, encode_graph,
    estimate_memory, format_bytes, CODE_BASED, THREE_PROP,
)
from .graphs import EDGE_KINDS, VARIANTS, CodeGraph, build_variant
from .lexer import LexError
from .parser import ParseError
from .resolver import DuplicateDeclaration

ENCODING_3PROP = "3prop"
ENCODING_CODE = "code"


class ManifestError(ValueError):
    """The manifest violates its schema (header, unique ids, existing paths)."""


class SchemaError(ValueError):
    """A graph record does not match the published schema."""


class MissingTokenCounts(ValueError):
    """A record lacks the per-node token counts the memory table needs."""


@dataclass(frozen=True)
class ManifestRow:
    sample_id: str
    path: Path
    label: int


def load_manifest(path) -> list[ManifestRow]:
    """Read a ``sample_id,path,label`` manifest; paths resolve against the
    manifest's directory and must exist."""
    path = Path(path)
    rows: list[ManifestRow] = []
    seen: set[str] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["sample_id", "path", "label"]:
            raise ManifestError(f"bad manifest header: {header!r}")
        for record in reader:
            if not record:
                continue
            if len(record) != 3:
                raise ManifestError(f"bad manifest row: {record!r}")
            sample_id, rel, label = record
            if sample_id in seen:
                raise ManifestError(f"duplicate sample_id {sample_id!r}")
            seen.add(sample_id)
            target = Path(rel)
            if not target.is_absolute():
                target = path.parent / target
            if not target.exists():
                raise ManifestError(f"source file missing: {target}")
            if label not in ("0", "1"):
                raise ManifestError(f"label must be 0 or 1, got {label!r}")
            rows.append(ManifestRow(sample_id, target, int(label)))
    return rows


# ---------------------------------------------------------------------------
# Records


def _null_if_blank(token: str) -> Optional[str]:
    return None if token == BLANK else token


def record_from_graph(sample_id: str, graph: CodeGraph, encoded: EncodedGraph,
                      include_tokens: bool = False) -> dict:
    nodes = []
    for graph_node, enc in zip(graph.nodes, encoded.nodes):
        row = [graph_node.id, enc.class_token, _null_if_blank(enc.name_token),
               _null_if_blank(enc.type_token), graph_node.token_count]
        if include_tokens:
            assert encoded.token_lists is not None
            row.append(encoded.token_lists[graph_node.id])
        nodes.append(row)
    return {
        "sample_id": sample_id,
        "variant": graph.variant,
        "label": graph.label,
        "nodes": nodes,
        "edges": [[src, dst, kind] for src, dst, kind in graph.edges],
    }


def validate_record(record: dict) -> None:
    """Raise SchemaError unless ``record`` matches the published schema."""
    expected = ["sample_id", "variant", "label", "nodes", "edges"]
    if list(record.keys()) != expected:
        raise SchemaError(f"record fields must be exactly {expected}")
    if not isinstance(record["sample_id"], str):
        raise SchemaError("sample_id must be a string")
    if record["variant"] not in VARIANTS:
        raise SchemaError(f"unknown variant {record['variant']!r}")
    if record["label"] not in (0, 1, None):
        raise SchemaError("label must be 0, 1 or null")
    nodes = record["nodes"]
    if not isinstance(nodes, list):
        raise SchemaError("nodes must be an array")
    for i, node in enumerate(nodes):
        if not isinstance(node, list) or len(node) not in (5, 6):
            raise SchemaError(f"node {i} must be a 5- or 6-element array")
        nid, cls, name, dtype, count = node[:5]
        if nid != i:
            raise SchemaError("node ids must be dense from 0")
        if not isinstance(cls, str):
            raise SchemaError("node class must be a string")
        for val in (name, dtype):
            if val is not None and not isinstance(val, str):
                raise SchemaError("name/type must be strings or null")
        if not isinstance(count, int) or count < 0:
            raise SchemaError("token_count must be a non-negative integer")
        if len(node) == 6 and not isinstance(node[5], list):
            raise SchemaError("node token list must be an array")
    for edge in record["edges"]:
        if (not isinstance(edge, list) or len(edge) != 3
                or not isinstance(edge[0], int) or not isinstance(edge[1], int)):
            raise SchemaError(f"bad edge {edge!r}")
        if not (0 <= edge[0] < len(nodes) and 0 <= edge[1] < len(nodes)):
            raise SchemaError(f"edge endpoint out of range: {edge!r}")
        if edge[2] not in EDGE_KINDS:
            raise SchemaError(f"unknown edge kind {edge[2]!r}")


def write_records(records: Iterable[dict], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, separators=(",", ":")) + "\n")


def read_graph_file(path) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            validate_record(record)
            records.append(record)
    return records


def record_to_encoded(record: dict) -> EncodedGraph:
    """Rehydrate the encoded graph of a record (token lists included when
    the record carries them)."""
    nodes = [EncodedNode(n[1], n[2] if n[2] is not None else BLANK,
                         n[3] if n[3] is not None else BLANK)
             for n in record["nodes"]]
    token_lists = None
    if record["nodes"] and len(record["nodes"][0]) == 6:
        token_lists = [n[5] for n in record["nodes"]]
    return EncodedGraph(record["variant"], nodes,
                        [tuple(e) for e in record["edges"]],
                        record["label"], token_lists)


# ---------------------------------------------------------------------------
# Corpus build


@dataclass
class BuildSummary:
    built: int
    failed: int
    out: Path
    report: Path
    vocab: Optional[Path]


def build_corpus(manifest_path, variant: str, out, report=None, vocab=None,
                 normalize: str = "flat", keep_literals: bool = False,
                 encoding: str = ENCODING_3PROP) -> BuildSummary:
    """Build one graph record per manifest row, skipping bad samples.

    Diagnostics go to the sidecar report (one JSON object per failed
    sample); a failure never aborts the rest of the corpus. Output order is
    manifest order, so reruns are byte-identical.
    """
    rows = load_manifest(manifest_path)
    if not rows:
        raise EmptyCorpus("manifest lists no samples")
    out = Path(out)
    report = Path(report) if report else out.with_suffix(out.suffix + ".report.jsonl")
    vocab = Path(vocab) if vocab else out.with_suffix(out.suffix + ".vocab")

    records: list[dict] = []
    encoded_graphs: list[EncodedGraph] = []
    diagnostics: list[dict] = []
    include_tokens = encoding == ENCODING_CODE
    for row in rows:
        source = row.path.read_text(encoding="utf-8")
        try:
            graph = build_variant(source, variant)
        except (LexError, ParseError, DuplicateDeclaration) as exc:
            diagnostics.append({
                "sample_id": row.sample_id,
                "error": type(exc).__name__,
                "message": str(exc),
            })
            continue
        graph.label = row.label
        encoded = encode_graph(graph, normalize, keep_literals,
                               with_code_tokens=include_tokens)
        encoded_graphs.append(encoded)
        records.append(record_from_graph(row.sample_id, graph, encoded,
                                         include_tokens))
    write_records(records, out)
    write_records(diagnostics, report)
    vocab_path: Optional[Path] = None
    if encoded_graphs:
        build_vocab(encoded_graphs).save(vocab)
        vocab_path = vocab
    return BuildSummary(len(records), len(diagnostics), out, report, vocab_path)


# ---------------------------------------------------------------------------
# Stats and the memory table


def stats_block(records: list[dict]) -> str:
    """Deterministic corpus statistics."""
    classes: dict[str, int] = {}
    kinds: dict[str, int] = {}
    tokens: set[str] = set()
    bad = good = 0
    for record in records:
        if record["label"] == 1:
            bad += 1
        elif record["label"] == 0:
            good += 1
        for node in record["nodes"]:
            classes[node[1]] = classes.get(node[1], 0) + 1
            tokens.update(t for t in node[1:4] if t is not None)
        for edge in record["edges"]:
            kinds[edge[2]] = kinds.get(edge[2], 0) + 1
    total = len(records)
    lines = [f"samples: {total}"]
    labeled = bad + good
    if labeled:
        lines.append(f"labels: bad {100 * bad / labeled:.2f}% ({bad}), "
                     f"good {100 * good / labeled:.2f}% ({good})")
    lines.append("nodes by class: " + ", ".join(
        f"{cls}={classes[cls]}" for cls in sorted(classes)))
    lines.append("edges by kind: " + ", ".join(
        f"{kind}={kinds[kind]}" for kind in sorted(kinds)))
    lines.append(f"vocab size: {len(tokens) + 3} ({len(tokens)} content + 3 reserved)")
    return "\n".join(lines)


def memcmp_rows(records: list[dict], embed_dim: int = 100,
                bytes_per_scalar: int = 4) -> list[tuple]:
    """(sample_id, nodes, max_tokens, code bytes, 3-prop bytes, ratio) rows."""
    rows = []
    for record in records:
        if not record["nodes"]:
            continue
        counts = [node[4] for node in record["nodes"]]
        if any(c is None for c in counts):
            raise MissingTokenCounts(record["sample_id"])
        node_count = len(record["nodes"])
        max_tokens = max(counts)
        if max_tokens <= 0:
            raise MissingTokenCounts(record["sample_id"])
        code = estimate_memory(node_count, max_tokens, CODE_BASED,
                               embed_dim, bytes_per_scalar)
        prop = estimate_memory(node_count, max_tokens, THREE_PROP,
                               embed_dim, bytes_per_scalar)
        rows.append((record["sample_id"], node_count, max_tokens,
                     code.total_bytes, prop.total_bytes,
                     round(code.total_bytes / prop.total_bytes)))
    return rows


def memcmp_table(records: list[dict], embed_dim: int = 100,
                 bytes_per_scalar: int = 4) -> str:
    rows = memcmp_rows(records, embed_dim, bytes_per_scalar)
    header = (f"{'sample_id':<24} {'nodes':>8} {'max_tokens':>10} "
              f"{'code-based':>12} {'3-prop':>10} {'ratio':>8}")
    lines = [header]
    total_code = total_prop = 0
    for sample_id, nodes, max_tokens, code, prop, ratio in rows:
        total_code += code
        total_prop += prop
        lines.append(f"{sample_id:<24} {nodes:>8} {max_tokens:>10} "
                     f"{format_bytes(code):>12} {format_bytes(prop):>10} "
                     f"{ratio:>8}")
    if rows:
        lines.append(f"{'TOTAL':<24} {'':>8} {'':>10} "
                     f"{format_bytes(total_code):>12} "
                     f"{format_bytes(total_prop):>10} "
                     f"{round(total_code / total_prop):>8}")
    return "\n".join(lines)
