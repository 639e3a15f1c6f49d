"""Canonical serialization, alpha-equivalence and source reconstruction.

Two programs that differ only by an injective renaming of their declared
variables and parameters build identical ASGs after encoding, so string
equality of the canonical form decides alpha-equivalence. Reconstruction
walks an ASG back to compilable MiniC by inventing fresh declaration names
and following name-dependence edges for the erased uses.
"""

from __future__ import annotations

from .encoding import EncodedGraph, encode_graph
from .graphs import (
    ASG, ASG_PLUS, AST_CHILD, NAME_DEP, CodeGraph, GraphNode, build_variant,
)
from .syntax import (
    ASSIGN, BLOCK, CALL, CMP_OP, CONTROL, FUNC, IDENT, INDEX, LITERAL,
    LOGIC_OP, MATH_OP, OP_SYMBOLS, PARAM, VAR_DECL,
)


class MalformedAsg(Exception):
    """The graph violates an ASG invariant (e.g. a nameless use without a
    name-dependence edge)."""


def canonical_form(g: EncodedGraph) -> str:
    """Deterministic linearization: node lines in id order, then edges sorted
    by (kind, src, dst). Equal strings mean identical encoded graphs."""
    lines = [f"{i}|{n.class_token}|{n.name_token}|{n.type_token}"
             for i, n in enumerate(g.nodes)]
    for src, dst, kind in sorted(g.edges, key=lambda e: (e[2], e[0], e[1])):
        lines.append(f"{kind}|{src}|{dst}")
    return "\n".join(lines)


def alpha_equivalent(src_a: str, src_b: str, variant: str = ASG,
                     normalize: str = "flat") -> bool:
    """True iff both sources build the same canonical encoded graph."""
    if variant not in (ASG, ASG_PLUS):
        raise ValueError("alpha equivalence is defined on the asg variants")
    form_a = canonical_form(encode_graph(build_variant(src_a, variant), normalize))
    form_b = canonical_form(encode_graph(build_variant(src_b, variant), normalize))
    return form_a == form_b


# ---------------------------------------------------------------------------
# Reconstruction

_PLACEHOLDERS = {"int": "0", "float": "0.0", "char": "'?'", "str": '""'}


class _Printer:
    def __init__(self, g: CodeGraph, keep_literals: bool):
        self.nodes: dict[int, GraphNode] = {n.id: n for n in g.nodes}
        self.children: dict[int, list[int]] = {n.id: [] for n in g.nodes}
        for src, dst, kind in g.edges:
            if kind == AST_CHILD:
                self.children[src].append(dst)
        for kids in self.children.values():
            kids.sort()
        self.decl_of = {src: dst for src, dst, kind in g.edges if kind == NAME_DEP}
        self.keep_literals = keep_literals
        # Fresh names for nameless declarations, in id order.
        self.fresh: dict[int, str] = {}
        for node in sorted(g.nodes, key=lambda n: n.id):
            if node.construct_class in (VAR_DECL, PARAM) and node.name_token is None:
                self.fresh[node.id] = f"v{len(self.fresh)}"

    def decl_name(self, decl_id: int) -> str:
        if decl_id in self.fresh:
            return self.fresh[decl_id]
        name = self.nodes[decl_id].name_token
        assert name is not None
        return name

    def type_of(self, node: GraphNode) -> str:
        assert node.data_type is not None, "declaration without a type"
        return node.data_type.spelling()

    # -- expressions ---------------------------------------------------

    def expr(self, nid: int) -> str:
        node = self.nodes[nid]
        cls = node.construct_class
        kids = self.children[nid]
        if cls == IDENT:
            if node.name_token is not None:
                return node.name_token
            decl = self.decl_of.get(nid)
            if decl is None:
                raise MalformedAsg(f"nameless ident {nid} has no name-dependence edge")
            return self.decl_name(decl)
        if cls == LITERAL:
            if self.keep_literals and node.name_token is not None:
                return node.name_token
            base = node.data_type.base if node.data_type else "int"
            return _PLACEHOLDERS[base]
        if cls == CALL:
            assert node.name_token is not None
            args = ", ".join(self.expr(k) for k in kids)
            return f"{node.name_token}({args})"
        if cls == INDEX:
            return f"{self.expr(kids[0])}[{self.expr(kids[1])}]"
        if cls in (MATH_OP, CMP_OP, LOGIC_OP):
            sym = OP_SYMBOLS[node.name_token]
            if len(kids) == 1:
                return f"({sym}{self.expr(kids[0])})"
            return f"({self.expr(kids[0])} {sym} {self.expr(kids[1])})"
        raise MalformedAsg(f"unexpected {cls} node in expression position")

    # -- statements ----------------------------------------------------

    def inline_stmt(self, nid: int) -> str:
        """Statement without trailing ';' (for headers)."""
        node = self.nodes[nid]
        kids = self.children[nid]
        if node.construct_class == VAR_DECL:
            text = f"{self.type_of(node)} {self.decl_name(nid)}"
            if kids:
                text += f" = {self.expr(kids[0])}"
            return text
        if node.construct_class == ASSIGN:
            return f"{self.expr(kids[0])} = {self.expr(kids[1])}"
        raise MalformedAsg("for headers must hold declarations or assignments")

    def stmt(self, nid: int, indent: str) -> list[str]:
        node = self.nodes[nid]
        cls = node.construct_class
        kids = self.children[nid]
        if cls in (VAR_DECL, ASSIGN):
            return [f"{indent}{self.inline_stmt(nid)};"]
        if cls == BLOCK:
            return self.block(nid, indent)
        if cls == CONTROL:
            if node.name_token == "IF":
                lines = [f"{indent}if ({self.expr(kids[0])})"]
                lines += self.stmt(kids[1], indent + "  ")
                if len(kids) == 3:
                    lines.append(f"{indent}else")
                    lines += self.stmt(kids[2], indent + "  ")
                return lines
            if node.name_token == "WHILE":
                return ([f"{indent}while ({self.expr(kids[0])})"]
                        + self.stmt(kids[1], indent + "  "))
            if node.name_token == "FOR":
                header = (f"{indent}for ({self.inline_stmt(kids[0])}; "
                          f"{self.expr(kids[1])}; {self.inline_stmt(kids[2])})")
                return [header] + self.stmt(kids[3], indent + "  ")
            if node.name_token == "RETURN":
                if kids:
                    return [f"{indent}return {self.expr(kids[0])};"]
                return [f"{indent}return;"]
        return [f"{indent}{self.expr(nid)};"]

    def block(self, nid: int, indent: str) -> list[str]:
        lines = [f"{indent}{{"]
        for kid in self.children[nid]:
            lines += self.stmt(kid, indent + "  ")
        lines.append(f"{indent}}}")
        return lines

    def func(self, nid: int) -> list[str]:
        node = self.nodes[nid]
        kids = self.children[nid]
        params = ", ".join(
            f"{self.type_of(self.nodes[k])} {self.decl_name(k)}"
            for k in kids[:-1])
        header = f"{self.type_of(node)} {node.name_token}({params})"
        return [header] + self.block(kids[-1], "")


def reconstruct(g: CodeGraph, keep_literals: bool = False) -> str:
    """Rebuild compilable MiniC from an ASG.

    Declarations get fresh names v0, v1, ... in node-id order and erased uses
    are named through their name-dependence edges. Erased literal values
    print as type defaults unless ``keep_literals`` finds the original
    lexemes still on the nodes. Raises MalformedAsg when a nameless use has
    no edge to follow.
    """
    printer = _Printer(g, keep_literals)
    roots = [n.id for n in g.nodes
             if not any(dst == n.id for _src, dst, kind in g.edges
                        if kind == AST_CHILD)]
    assert len(roots) == 1, "graph must contain exactly one tree root"
    root = printer.nodes[roots[0]]
    if root.construct_class == FUNC:
        return "\n".join(printer.func(root.id)) + "\n"
    chunks = ["\n".join(printer.func(k)) for k in printer.children[root.id]]
    return "\n\n".join(chunks) + "\n"
