"""Node encodings: the 3-property scheme, the code-token baseline, vocabulary
construction and the memory estimator.

Every node is encoded as exactly three tokens: construct class, construct
name and data type, with the reserved blank token "-" filling absent
properties. In nameless mode (the ASG variants) declaration and parameter
names become blank, resolved identifier uses become the token VAR, literal
values are erased (unless literal retention is requested) and sized array
types are normalized; with-names mode keeps names, literal lexemes and the
concrete array spelling. Math, comparison and logic operators carry their
uppercase name token in both modes.

The baseline encoding is the raw token list of a node's source slice; the
model side pads those lists to the longest node of a graph, which is what
makes its memory footprint scale with the largest construct instead of the
constant three.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graphs import ASG, ASG_PLUS, CodeGraph, Edge, GraphNode
from .lexer import tokenize
from .syntax import IDENT, LITERAL, PARAM, VAR_DECL, TypeExpr

BLANK = "-"
PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"
VAR_TOKEN = "VAR"
RESERVED_TOKENS = (PAD_TOKEN, UNK_TOKEN, BLANK)

PAD_ID = 0
UNK_ID = 1
BLANK_ID = 2

WITH_NAMES = "with_names"
NAMELESS = "nameless"

FLAT = "flat"
BUCKETED = "bucketed"


class EmptyCorpus(ValueError):
    """A corpus-level operation received no samples."""


@dataclass(frozen=True)
class EncodedNode:
    class_token: str
    name_token: str
    type_token: str

    def tokens(self) -> tuple[str, str, str]:
        return (self.class_token, self.name_token, self.type_token)


@dataclass
class EncodedGraph:
    """Per-node token records plus the edge list and optional label.

    ``nodes`` holds the 3-token records; in baseline mode ``token_lists``
    additionally holds each node's raw code tokens.
    """

    variant: str
    nodes: list[EncodedNode]
    edges: list[Edge]
    label: Optional[int] = None
    token_lists: Optional[list[list[str]]] = None


def normalize_type(t: TypeExpr, mode: str = FLAT) -> str:
    """Collapse sized array types to a finite set of type tokens.

    Flat mode maps every sized array to ``base[N]``; bucketed mode keys the
    token on the size: [0,256) -> ``base[int8]``, [256,65536) ->
    ``base[int16]``, larger -> ``base[int32]``. Scalars pass through.
    """
    if not t.is_array:
        return t.base
    if mode == FLAT:
        return f"{t.base}[N]"
    if mode == BUCKETED:
        size = t.array_len or 0
        if size < 256:
            bucket = "int8"
        elif size < 65536:
            bucket = "int16"
        else:
            bucket = "int32"
        return f"{t.base}[{bucket}]"
    raise ValueError(f"unknown normalization mode {mode!r}")


def encode_3prop(node: GraphNode, mode: str, normalize: str = FLAT,
                 keep_literals: bool = False) -> EncodedNode:
    """Encode one graph node as its (class, name, type) token triple."""
    if mode not in (WITH_NAMES, NAMELESS):
        raise ValueError(f"unknown mode {mode!r}")
    cls = node.construct_class
    name = node.name_token
    dtype = node.data_type

    if mode == NAMELESS:
        if cls in (VAR_DECL, PARAM):
            name = BLANK            # erased declaration name
        elif cls == IDENT and name is None:
            name = VAR_TOKEN        # resolved use; unresolved keep their name
        elif cls == LITERAL and not keep_literals:
            name = BLANK            # erased value, type retained
        type_token = normalize_type(dtype, normalize) if dtype else BLANK
    else:
        type_token = dtype.spelling() if dtype else BLANK

    return EncodedNode(cls, name if name is not None else BLANK, type_token)


def encode_code_based(node: GraphNode) -> list[str]:
    """The raw token texts of the node's source slice."""
    return [t.text for t in tokenize(node.code_text)]


def mode_for_variant(variant: str) -> str:
    return NAMELESS if variant in (ASG, ASG_PLUS) else WITH_NAMES


def encode_graph(graph: CodeGraph, normalize: str = FLAT,
                 keep_literals: bool = False,
                 with_code_tokens: bool = False) -> EncodedGraph:
    """Encode a whole graph; the mode follows the variant (nameless for ASG)."""
    mode = mode_for_variant(graph.variant)
    nodes = [encode_3prop(n, mode, normalize, keep_literals) for n in graph.nodes]
    token_lists = [encode_code_based(n) for n in graph.nodes] if with_code_tokens else None
    return EncodedGraph(graph.variant, nodes, list(graph.edges), graph.label,
                        token_lists)


# ---------------------------------------------------------------------------
# Vocabulary


class Vocab:
    """Bijection between tokens and dense integer ids.

    Ids 0, 1 and 2 are pinned to the pad, unknown and blank tokens; content
    tokens follow in lexicographic order, so identical corpora always yield
    identical vocabularies.
    """

    def __init__(self, content_tokens: Iterable[str]):
        ordered = sorted(set(content_tokens) - set(RESERVED_TOKENS))
        self.id_to_token: list[str] = list(RESERVED_TOKENS) + ordered
        self.token_to_id: dict[str, int] = {
            tok: i for i, tok in enumerate(self.id_to_token)}

    def __len__(self) -> int:
        return len(self.id_to_token)

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_id

    def id_of(self, token: str) -> int:
        """Id of ``token``, falling back to the unknown id."""
        return self.token_to_id.get(token, UNK_ID)

    @property
    def content_tokens(self) -> list[str]:
        return self.id_to_token[len(RESERVED_TOKENS):]

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for i, tok in enumerate(self.id_to_token):
                fh.write(f"{i}\t{tok}\n")

    @classmethod
    def load(cls, path) -> "Vocab":
        tokens: list[str] = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                ident, tok = line.split("\t", 1)
                assert int(ident) == len(tokens), "vocab ids must be dense"
                tokens.append(tok)
        if tokens[:len(RESERVED_TOKENS)] != list(RESERVED_TOKENS):
            raise ValueError("vocab file is missing the reserved tokens")
        return cls(tokens[len(RESERVED_TOKENS):])


def build_vocab(corpus: list[EncodedGraph]) -> Vocab:
    """Deterministic vocabulary over a corpus of encoded graphs."""
    if not corpus:
        raise EmptyCorpus("cannot build a vocabulary from an empty corpus")
    tokens: set[str] = set()
    for graph in corpus:
        for node in graph.nodes:
            tokens.update(node.tokens())
        if graph.token_lists is not None:
            for toks in graph.token_lists:
                tokens.update(toks)
    return Vocab(tokens)


# ---------------------------------------------------------------------------
# Memory estimation


CODE_BASED = "code_based"
THREE_PROP = "three_prop"


@dataclass(frozen=True)
class MemoryEstimate:
    node_count: int
    max_tokens_per_node: int
    embed_dim: int
    bytes_per_scalar: int

    @property
    def total_bytes(self) -> int:
        return (self.node_count * self.max_tokens_per_node
                * self.embed_dim * self.bytes_per_scalar)


def estimate_memory(node_count: int, max_tokens_per_node: int, scheme: str,
                    embed_dim: int = 100, bytes_per_scalar: int = 4) -> MemoryEstimate:
    """Embedding-matrix footprint of one graph under either encoding.

    The 3-property scheme always stores three tokens per node; the code-based
    scheme pads every node to the graph's maximal token count.
    """
    for val in (node_count, max_tokens_per_node, embed_dim, bytes_per_scalar):
        if val <= 0:
            raise ValueError("all sizes must be positive")
    if scheme == THREE_PROP:
        max_tokens_per_node = 3
    elif scheme != CODE_BASED:
        raise ValueError(f"unknown scheme {scheme!r}")
    return MemoryEstimate(node_count, max_tokens_per_node, embed_dim,
                          bytes_per_scalar)


def memory_ratio(max_tokens_per_node: int) -> float:
    """code-based over 3-property bytes; reduces to max tokens over three."""
    return max_tokens_per_node / 3


def format_bytes(n: int) -> str:
    """Humanize byte counts the way the memory tables print them:
    whole gigabytes, tenths below that."""
    if n >= 10**9:
        return f"{round(n / 10**9)}G"
    if n >= 10**6:
        return f"{n / 10**6:.1f}M"
    if n >= 10**3:
        return f"{n / 10**3:.1f}K"
    return str(n)
