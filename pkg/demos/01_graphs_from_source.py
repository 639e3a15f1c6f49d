"""Walk one MiniC function through the four graph variants.

Run:  python3 demos/01_graphs_from_source.py
"""

from codegraphs import build_variant, tokenize

SOURCE = """int clamp_add(int x, int limit) {
  int total = x + 1;
  if (total >= limit) {
    total = limit;
  }
  log_value(total, stdout);
  return total;
}
"""

print("source:")
print(SOURCE)
print("tokens:", len(tokenize(SOURCE)))

# The AST variant is the bare parse tree: one node per construct, tree edges
# only, every name still in place.
ast = build_variant(SOURCE, "ast")
print("\nast nodes:")
for node in ast.nodes:
    print(f"  {node.id:>2} {node.construct_class:<8}"
          f" name={node.name_token!r} type={node.type_token!r}"
          f" tokens={node.token_count}")
print("ast edge kinds:", sorted(ast.edge_kinds()))

# AST+ layers statement-level control flow and def-use data dependence on
# top; names are still kept. This is the conventional code-property-graph
# style input.
ast_plus = build_variant(SOURCE, "ast+")
for kind in ("CFLOW", "DATA_DEP"):
    print(f"\n{kind} edges:")
    for src, dst, _ in ast_plus.edges_of_kind(kind):
        print(f"  {src:>2} -> {dst}")

# The ASG replaces variable names with explicit name-dependence edges: every
# resolved use points at its declaration, and the names of declarations,
# parameters and resolved uses are erased. External names survive (the call
# target log_value, the undeclared stdout), because they carry API meaning.
asg = build_variant(SOURCE, "asg")
print("\nname-dependence edges (use -> declaration):")
for src, dst, _ in asg.edges_of_kind("NAME_DEP"):
    print(f"  {src:>2} -> {dst}")
erased = [n.id for n in asg.nodes if n.name_token is None
          and n.construct_class in ("ident", "varDecl", "param")]
print("nodes with erased names:", erased)
kept = {n.name_token for n in asg.nodes
        if n.construct_class in ("call", "ident") and n.name_token}
print("kept external names:", sorted(kept))

# ASG+ is the union of both extensions.
asg_plus = build_variant(SOURCE, "asg+")
print("\nedge counts per variant:")
for graph in (ast, ast_plus, asg, asg_plus):
    kinds = {k: len(graph.edges_of_kind(k)) for k in sorted(graph.edge_kinds())}
    print(f"  {graph.variant:<5} {kinds}")
