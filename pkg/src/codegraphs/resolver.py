"""Lexical scopes and name-dependence resolution.

Every identifier use is linked to the innermost visible declaration of its
name (a varDecl or a param). Parameters live in the function's scope, and a
function body shares that scope; every other brace block opens a fresh one.
A declaration is visible from its own node to the end of its scope, so a use
that precedes the declaration in the same scope stays unresolved rather than
erroring. Call targets are never treated as identifier nodes, so they are
never resolved to variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import BLOCK, FUNC, IDENT, VAR_DECL, AstNode, walk_preorder


class DuplicateDeclaration(Exception):
    """The same name is declared twice in one scope."""

    def __init__(self, name: str, span: tuple[int, int, int, int]):
        super().__init__(f"{span[0]}:{span[1]}: duplicate declaration of {name!r}")
        self.name = name
        self.span = span


@dataclass
class Scope:
    id: int
    parent: int | None
    owner: int                       # owning AstNode id
    bindings: dict[str, int] = field(default_factory=dict)  # name -> decl node id


@dataclass
class ScopeTree:
    scopes: list[Scope]
    node_scope: dict[int, int]       # AstNode id -> id of the scope it sits in

    @property
    def root(self) -> Scope:
        return self.scopes[0]

    def lookup(self, scope_id: int, name: str, use_id: int) -> int | None:
        """Innermost binding of ``name`` visible at node ``use_id``, or None."""
        current: int | None = scope_id
        while current is not None:
            scope = self.scopes[current]
            decl = scope.bindings.get(name)
            if decl is not None and decl < use_id:
                return decl
            current = scope.parent
        return None


@dataclass(frozen=True)
class NameDepEdge:
    use_node: int   # ident node
    decl_node: int  # varDecl or param node


def build_scope_tree(ast: AstNode) -> ScopeTree:
    """Build the scope tree of a numbered AST.

    Raises DuplicateDeclaration when one scope binds a name twice (this
    includes a body declaration colliding with a parameter).
    """
    scopes = [Scope(0, None, ast.id)]
    node_scope: dict[int, int] = {}

    def bind(scope: Scope, node: AstNode) -> None:
        assert node.name is not None
        if node.name in scope.bindings:
            raise DuplicateDeclaration(node.name, node.span)
        scope.bindings[node.name] = node.id

    def enter(node: AstNode, scope_id: int) -> None:
        node_scope[node.id] = scope_id
        scope = scopes[scope_id]
        if node.construct_class == FUNC:
            child_scope = Scope(len(scopes), scope_id, node.id)
            scopes.append(child_scope)
            for child in node.children[:-1]:
                node_scope[child.id] = child_scope.id
                bind(child_scope, child)
            body = node.children[-1]
            # The body block shares the function scope instead of opening one.
            node_scope[body.id] = child_scope.id
            for stmt in body.children:
                enter(stmt, child_scope.id)
            return
        if node.construct_class == BLOCK:
            child_scope = Scope(len(scopes), scope_id, node.id)
            scopes.append(child_scope)
            for stmt in node.children:
                enter(stmt, child_scope.id)
            return
        if node.construct_class == VAR_DECL:
            bind(scope, node)
        for child in node.children:
            enter(child, scope_id)

    if ast.construct_class == BLOCK:
        # Multi-function program: the wrapper owns the root scope directly.
        for func in ast.children:
            enter(func, 0)
        node_scope[ast.id] = 0
    else:
        enter(ast, 0)
    return ScopeTree(scopes, node_scope)


def resolve_names(ast: AstNode, scopes: ScopeTree) -> tuple[set[NameDepEdge], set[int]]:
    """Resolve every ident node against the scope tree.

    Returns the set of name-dependence edges plus the ids of ident nodes with
    no visible binding (externals such as ``stdout``). The two sets partition
    the ident nodes.
    """
    edges: set[NameDepEdge] = set()
    unresolved: set[int] = set()
    for node in walk_preorder(ast):
        if node.construct_class != IDENT:
            continue
        assert node.name is not None
        decl = scopes.lookup(scopes.node_scope[node.id], node.name, node.id)
        if decl is None:
            unresolved.add(node.id)
        else:
            edges.add(NameDepEdge(node.id, decl))
    return edges, unresolved


def decl_map(edges: set[NameDepEdge]) -> dict[int, int]:
    """use-node id -> decl-node id, for downstream consumers."""
    return {e.use_node: e.decl_node for e in edges}
