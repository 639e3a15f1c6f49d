"""The four code-graph variants: AST, AST+, ASG and ASG+.

AST is the parse tree with parent-child edges. AST+ adds statement-level
control flow and def-use data dependence. ASG adds name-dependence edges and
erases the names of declarations, parameters and resolved identifier uses;
ASG+ is ASG plus the flow edges.

Control-flow model: CFG nodes are statements. Sequential statements chain;
an if forks to its branches, which rejoin at the successor; while and for
headers get a back edge from the body end and an exit edge; return has no
successor; a statement that falls off the end of the body gets an edge to
its func node (the implicit return). Condition expressions belong to their
control statement's node, and a for header evaluates its init, condition and
step parts on every pass through it in this model.

Data dependence is classic reaching definitions with kill sets at statement
granularity. Writing any element of an array defines the whole array.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Optional

from .lexer import Token, tokenize
from .parser import parse
from .resolver import NameDepEdge, build_scope_tree, decl_map, resolve_names
from .syntax import (
    ASSIGN, BLOCK, CONTROL, FUNC, IDENT, INDEX, PARAM, VAR_DECL, AstNode,
    TypeExpr, node_table, walk_preorder,
)

AST = "ast"
AST_PLUS = "ast+"
ASG = "asg"
ASG_PLUS = "asg+"
VARIANTS = (AST, AST_PLUS, ASG, ASG_PLUS)

AST_CHILD = "AST_CHILD"
NAME_DEP = "NAME_DEP"
CFLOW = "CFLOW"
DATA_DEP = "DATA_DEP"
EDGE_KINDS = (AST_CHILD, NAME_DEP, CFLOW, DATA_DEP)

_KIND_RANK = {kind: i for i, kind in enumerate(EDGE_KINDS)}

Edge = tuple[int, int, str]


@dataclass
class GraphNode:
    id: int
    construct_class: str
    name_token: Optional[str]
    data_type: Optional[TypeExpr]
    code_text: str
    token_count: int

    @property
    def type_token(self) -> Optional[str]:
        return self.data_type.spelling() if self.data_type else None


@dataclass
class CodeGraph:
    variant: str
    nodes: list[GraphNode]
    edges: list[Edge]
    label: Optional[int] = None

    def edges_of_kind(self, kind: str) -> list[Edge]:
        return [e for e in self.edges if e[2] == kind]

    def edge_kinds(self) -> set[str]:
        return {e[2] for e in self.edges}


def _sorted_edges(edges: set[Edge] | list[Edge]) -> list[Edge]:
    return sorted(set(edges), key=lambda e: (_KIND_RANK[e[2]], e[0], e[1]))


def build_ast_graph(ast: AstNode, source: str) -> CodeGraph:
    """One GraphNode per AstNode plus AST_CHILD edges in child order."""
    tokens = tokenize(source)
    return _ast_graph(ast, source, tokens)


def _ast_graph(ast: AstNode, source: str, tokens: list[Token]) -> CodeGraph:
    starts = [t.offset for t in tokens]
    nodes: list[GraphNode] = []
    edges: list[Edge] = []
    for node in node_table(ast):
        lo = bisect.bisect_left(starts, node.start_offset)
        hi = bisect.bisect_left(starts, node.end_offset)
        nodes.append(GraphNode(
            id=node.id,
            construct_class=node.construct_class,
            name_token=node.name,
            data_type=node.data_type,
            code_text=source[node.start_offset:node.end_offset],
            token_count=hi - lo,
        ))
        for child in node.children:
            edges.append((node.id, child.id, AST_CHILD))
    return CodeGraph(AST, nodes, _sorted_edges(edges))


# ---------------------------------------------------------------------------
# Control flow


@dataclass
class FunctionFlow:
    func_id: int
    entry: Optional[int]                      # first statement, None if empty body
    param_defs: list[tuple[int, int]]         # (decl id, defining node id)
    events: dict[int, list[tuple]] = field(default_factory=dict)


@dataclass
class FlowModel:
    """Shared semantic model consumed by the dataflow pass and its oracle."""

    edges: list[tuple[int, int]]              # CFLOW successor pairs
    functions: list[FunctionFlow]
    loop_headers: set[int]                    # while/for nodes (back-edge targets)


def _functions_of(ast: AstNode) -> list[AstNode]:
    if ast.construct_class == FUNC:
        return [ast]
    return [c for c in ast.children if c.construct_class == FUNC]


class _CfgBuilder:
    """Wires one function's statements into successor edges."""

    def __init__(self) -> None:
        self.edges: list[tuple[int, int]] = []
        self.headers: set[int] = set()
        self.stmts: dict[int, AstNode] = {}

    def chain(self, stmts: list[AstNode], incoming: list[int]) -> list[int]:
        """Wire a statement sequence; returns the dangling exits."""
        current = incoming
        for stmt in stmts:
            entry, exits = self.wire(stmt)
            if entry is None:          # transparent (empty block)
                continue
            for src in current:
                self.edges.append((src, entry))
            current = exits
        return current

    def wire(self, stmt: AstNode) -> tuple[Optional[int], list[int]]:
        cls = stmt.construct_class
        if cls == BLOCK:
            exits = self.chain(stmt.children, [])
            entry = self.entry_of(stmt.children)
            if entry is None:
                return None, []        # empty block: pass-through
            return entry, exits
        self.stmts[stmt.id] = stmt
        if cls == CONTROL and stmt.name == "IF":
            cond_exits: list[int] = []
            branches = stmt.children[1:]
            for branch in branches:
                entry, exits = self.wire(branch)
                if entry is None:
                    cond_exits.append(stmt.id)
                else:
                    self.edges.append((stmt.id, entry))
                    cond_exits.extend(exits)
            if len(branches) == 1:     # no else: fall through the header
                cond_exits.append(stmt.id)
            return stmt.id, cond_exits
        if cls == CONTROL and stmt.name in ("WHILE", "FOR"):
            self.headers.add(stmt.id)
            body = stmt.children[-1]
            entry, exits = self.wire(body)
            if entry is None:
                self.edges.append((stmt.id, stmt.id))
            else:
                self.edges.append((stmt.id, entry))
                for src in exits:
                    self.edges.append((src, stmt.id))
            return stmt.id, [stmt.id]
        if cls == CONTROL and stmt.name == "RETURN":
            return stmt.id, []
        return stmt.id, [stmt.id]

    def entry_of(self, stmts: list[AstNode]) -> Optional[int]:
        """First non-transparent statement of a sequence."""
        for s in stmts:
            if s.construct_class == BLOCK:
                nested = self.entry_of(s.children)
                if nested is not None:
                    return nested
                continue
            return s.id
        return None


def _uses_in(expr: AstNode, skip: Optional[AstNode] = None) -> list[AstNode]:
    """Ident nodes read inside ``expr``, skipping the ``skip`` subtree root."""
    found: list[AstNode] = []
    for node in walk_preorder(expr):
        if node is skip:
            continue
        if node.construct_class == IDENT:
            found.append(node)
    return found


def _stmt_events(stmt: AstNode, decl_of: dict[int, int]) -> list[tuple]:
    """Ordered use/def events of one CFG node.

    Events are ("use", decl_id, ident_id) or ("def", decl_id, def_node_id);
    unresolved identifiers produce no events.
    """
    events: list[tuple] = []

    def use_all(expr: AstNode, skip: Optional[AstNode] = None) -> None:
        for ident in _uses_in(expr, skip):
            decl = decl_of.get(ident.id)
            if decl is not None:
                events.append(("use", decl, ident.id))

    def simple(node: AstNode) -> None:
        cls = node.construct_class
        if cls == VAR_DECL:
            if node.children:
                use_all(node.children[0])
                events.append(("def", node.id, node.id))
            return
        if cls == ASSIGN:
            lhs, rhs = node.children
            use_all(rhs)
            if lhs.construct_class == INDEX:
                base, sub = lhs.children
                use_all(sub)
                target = base
            else:
                target = lhs
            decl = decl_of.get(target.id)
            if decl is not None:
                events.append(("def", decl, node.id))
            return
        use_all(node)

    cls = stmt.construct_class
    if cls == CONTROL and stmt.name == "IF":
        use_all(stmt.children[0])
    elif cls == CONTROL and stmt.name == "WHILE":
        use_all(stmt.children[0])
    elif cls == CONTROL and stmt.name == "FOR":
        init, cond, step, _body = stmt.children
        simple(init)
        use_all(cond)
        simple(step)
    elif cls == CONTROL and stmt.name == "RETURN":
        if stmt.children:
            use_all(stmt.children[0])
    else:
        simple(stmt)
    return events


def build_flow_model(ast: AstNode, name_deps: set[NameDepEdge]) -> FlowModel:
    """CFG edges plus per-statement use/def events for every function."""
    decl_of = decl_map(name_deps)
    edges: list[tuple[int, int]] = []
    headers: set[int] = set()
    functions: list[FunctionFlow] = []
    for func in _functions_of(ast):
        body = func.children[-1]
        builder = _CfgBuilder()
        exits = builder.chain(body.children, [])
        for src in exits:
            builder.edges.append((src, func.id))   # implicit return
        flow = FunctionFlow(
            func_id=func.id,
            entry=builder.entry_of(body.children),
            param_defs=[(p.id, p.id) for p in func.children[:-1]],
            events={nid: _stmt_events(stmt, decl_of)
                    for nid, stmt in sorted(builder.stmts.items())},
        )
        edges.extend(builder.edges)
        headers |= builder.headers
        functions.append(flow)
    return FlowModel(sorted(set(edges)), functions, headers)


def build_cfg_edges(ast: AstNode) -> list[Edge]:
    """Statement-level CFLOW edges (see the module docstring for the shape)."""
    model = build_flow_model(ast, set())
    return _sorted_edges([(s, d, CFLOW) for s, d in model.edges])


def _reachable(entry: int, succ: dict[int, list[int]]) -> set[int]:
    seen = {entry}
    stack = [entry]
    while stack:
        for nxt in succ.get(stack.pop(), []):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def data_deps_from_model(model: FlowModel) -> set[tuple[int, int]]:
    """Reaching-definitions def-use pairs (def node id, use ident id)."""
    succ: dict[int, list[int]] = {}
    pred: dict[int, list[int]] = {}
    for src, dst in model.edges:
        succ.setdefault(src, []).append(dst)
        pred.setdefault(dst, []).append(src)

    result: set[tuple[int, int]] = set()
    for fn in model.functions:
        if fn.entry is None:
            continue
        reachable = _reachable(fn.entry, succ)
        reachable.discard(fn.func_id)
        seed = frozenset(fn.param_defs)

        gen: dict[int, frozenset] = {}
        kill_decls: dict[int, set[int]] = {}
        for nid in reachable:
            last: dict[int, int] = {}
            for ev in fn.events.get(nid, []):
                if ev[0] == "def":
                    last[ev[1]] = ev[2]
            gen[nid] = frozenset(last.items())
            kill_decls[nid] = set(last)

        live_in: dict[int, frozenset] = {nid: frozenset() for nid in reachable}
        changed = True
        while changed:
            changed = False
            for nid in sorted(reachable):
                acc: set[tuple[int, int]] = set(seed) if nid == fn.entry else set()
                for p in pred.get(nid, []):
                    if p not in reachable:
                        continue
                    out = {(d, n) for d, n in live_in[p]
                           if d not in kill_decls[p]} | set(gen[p])
                    acc |= out
                frozen = frozenset(acc)
                if frozen != live_in[nid]:
                    live_in[nid] = frozen
                    changed = True

        for nid in reachable:
            local: dict[int, int] = {}
            for ev in fn.events.get(nid, []):
                if ev[0] == "use":
                    _, decl, ident = ev
                    if decl in local:
                        result.add((local[decl], ident))
                    else:
                        for d, def_node in live_in[nid]:
                            if d == decl:
                                result.add((def_node, ident))
                else:
                    _, decl, def_node = ev
                    local[decl] = def_node
    return result


def build_data_dep_edges(ast: AstNode, cfg: list[Edge],
                         name_deps: set[NameDepEdge]) -> list[Edge]:
    """DATA_DEP edges def-node -> using ident node. ``cfg`` documents the
    dependency on the flow pass; the model is rebuilt from the AST here."""
    model = build_flow_model(ast, name_deps)
    pairs = data_deps_from_model(model)
    return _sorted_edges([(src, dst, DATA_DEP) for src, dst in pairs])


# ---------------------------------------------------------------------------
# Variants


def build_variant(source: str, variant: str) -> CodeGraph:
    """Parse ``source`` and materialize the requested graph variant.

    Identifier nodes take the data type of their declaration in every
    variant. ASG and ASG+ erase the names of declarations, parameters and
    resolved identifier uses; unresolved identifiers, call targets and
    function names survive.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    tokens = tokenize(source)
    ast = parse(tokens)
    scopes = build_scope_tree(ast)
    name_deps, _unresolved = resolve_names(ast, scopes)
    graph = _ast_graph(ast, source, tokens)
    graph.variant = variant

    decl_of = decl_map(name_deps)
    by_id = {n.id: n for n in graph.nodes}
    for use, decl in decl_of.items():
        by_id[use].data_type = by_id[decl].data_type

    edges: list[Edge] = list(graph.edges)
    if variant in (ASG, ASG_PLUS):
        edges += [(e.use_node, e.decl_node, NAME_DEP) for e in name_deps]
        resolved = set(decl_of)
        for node in graph.nodes:
            if node.construct_class in (VAR_DECL, PARAM):
                node.name_token = None
            elif node.construct_class == IDENT and node.id in resolved:
                node.name_token = None
    if variant in (AST_PLUS, ASG_PLUS):
        model = build_flow_model(ast, name_deps)
        edges += [(s, d, CFLOW) for s, d in model.edges]
        edges += [(s, d, DATA_DEP) for s, d in data_deps_from_model(model)]
    graph.edges = _sorted_edges(edges)
    return graph
