"""MiniC source-to-graph pipeline.

Parses a small C subset, resolves identifier uses to their declarations as
explicit name-dependence edges, builds four graph variants (AST, AST+, ASG,
ASG+), encodes nodes as constant-width 3-token records and decides
alpha-equivalence of programs through canonical forms. Includes a synthetic
labeled-corpus generator and a line-delimited dataset pipeline.
"""

from .canonical import MalformedAsg, alpha_equivalent, canonical_form, reconstruct
from .encoding import (
    BLANK, CODE_BASED, THREE_PROP, VAR_TOKEN, EmptyCorpus, EncodedGraph,
    EncodedNode, MemoryEstimate, Vocab, build_vocab, encode_3prop,
    encode_code_based, encode_graph, estimate_memory, format_bytes,
    memory_ratio, normalize_type,
)
from .genprog import (
    ConfigError, GenConfig, generate_corpus, random_program, random_rename,
    rename_variables,
)
from .graphs import (
    ASG, ASG_PLUS, AST, AST_CHILD, AST_PLUS, CFLOW, DATA_DEP, EDGE_KINDS,
    NAME_DEP, VARIANTS, CodeGraph, GraphNode, build_ast_graph, build_cfg_edges,
    build_data_dep_edges, build_flow_model, build_variant, data_deps_from_model,
)
from .lexer import LexError, Token, tokenize
from .parser import ParseError, parse, parse_source
from .pipeline import (
    BuildSummary, ManifestError, MissingTokenCounts, SchemaError, build_corpus,
    load_manifest, memcmp_table, read_graph_file, record_to_encoded,
    stats_block, validate_record,
)
from .resolver import (
    DuplicateDeclaration, NameDepEdge, ScopeTree, build_scope_tree, decl_map,
    resolve_names,
)
from .syntax import AstNode, TypeExpr, classify, walk_preorder

__version__ = "0.1.0"
