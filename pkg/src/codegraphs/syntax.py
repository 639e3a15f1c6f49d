"""AST node and type definitions shared by the parser and the graph builders.

The construct class spellings double as class tokens in the 3-property
encoding, so they are part of the public vocabulary and must stay stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

FUNC = "func"
PARAM = "param"
VAR_DECL = "varDecl"
BLOCK = "block"
CONTROL = "control"
MATH_OP = "mathOp"
CMP_OP = "cmpOp"
LOGIC_OP = "logicOp"
ASSIGN = "assign"
CALL = "call"
IDENT = "ident"
LITERAL = "literal"
INDEX = "index"

CONSTRUCT_CLASSES = frozenset({
    FUNC, PARAM, VAR_DECL, BLOCK, CONTROL, MATH_OP, CMP_OP, LOGIC_OP,
    ASSIGN, CALL, IDENT, LITERAL, INDEX,
})

# Operator spellings to fixed name tokens. Unary minus reuses SUB with a
# single child; unary '!' is NOT.
MATH_OP_NAMES = {"+": "ADD", "-": "SUB", "*": "MUL", "/": "DIV", "%": "MOD"}
CMP_OP_NAMES = {"<": "LT", ">": "GT", "<=": "LE", ">=": "GE", "==": "EQ", "!=": "NE"}
LOGIC_OP_NAMES = {"&&": "AND", "||": "OR", "!": "NOT"}
OP_SYMBOLS = {name: sym for sym, name in
              list(MATH_OP_NAMES.items()) + list(CMP_OP_NAMES.items()) + list(LOGIC_OP_NAMES.items())}

CONTROL_NAMES = frozenset({"IF", "WHILE", "FOR", "RETURN"})
ASSIGN_NAME = "ASSIGN"
INDEX_NAME = "INDEX"

BASE_TYPES = ("int", "float", "char", "str", "void")


@dataclass(frozen=True)
class TypeExpr:
    """A MiniC data type: a scalar base or a sized array of a base."""

    base: str
    array_len: Optional[int] = None

    @property
    def is_array(self) -> bool:
        return self.array_len is not None

    def spelling(self) -> str:
        if self.is_array:
            return f"{self.base}[{self.array_len}]"
        return self.base


@dataclass
class AstNode:
    """One syntactic construct.

    ``id`` equals the node's DFS pre-order position once the tree is
    numbered; ``children`` keeps source order. ``span`` is
    (start line, start col, end line, end col); the offset pair addresses the
    exact source slice. ``name_span`` marks the offsets of the defining or
    using name token for ident, varDecl and param nodes (used by renaming).
    """

    construct_class: str
    name: Optional[str] = None
    data_type: Optional[TypeExpr] = None
    children: list["AstNode"] = field(default_factory=list)
    span: tuple[int, int, int, int] = (0, 0, 0, 0)
    start_offset: int = 0
    end_offset: int = 0
    id: int = -1
    name_span: Optional[tuple[int, int]] = None

    @property
    def children_ids(self) -> list[int]:
        return [c.id for c in self.children]


def walk_preorder(root: AstNode) -> Iterator[AstNode]:
    """Yield nodes in DFS pre-order (the id order)."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def assign_ids(root: AstNode) -> list[AstNode]:
    """Number the tree in DFS pre-order; returns the node table (index = id)."""
    nodes = list(walk_preorder(root))
    for i, node in enumerate(nodes):
        node.id = i
    return nodes


def node_table(root: AstNode) -> list[AstNode]:
    """The already-numbered nodes of ``root`` indexed by id."""
    nodes = list(walk_preorder(root))
    assert all(n.id == i for i, n in enumerate(nodes)), "tree is not numbered"
    return nodes


def classify(node: AstNode) -> tuple[str, Optional[str], Optional[TypeExpr]]:
    """The (class, name, type) triple of a parsed construct."""
    return node.construct_class, node.name, node.data_type
