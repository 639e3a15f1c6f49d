import pytest

from codegraphs.parser import parse_source
from codegraphs.resolver import (
    DuplicateDeclaration, NameDepEdge, build_scope_tree, decl_map,
    resolve_names,
)
from codegraphs.syntax import node_table, walk_preorder


def resolve(source):
    ast = parse_source(source)
    scopes = build_scope_tree(ast)
    edges, unresolved = resolve_names(ast, scopes)
    return ast, scopes, edges, unresolved


def test_param_and_local_share_function_scope():
    ast = parse_source("void g(int a){ int b; }")
    scopes = build_scope_tree(ast)
    assert len(scopes.scopes) == 2           # root plus g
    g = scopes.scopes[1]
    nodes = node_table(ast)
    assert set(g.bindings) == {"a", "b"}
    assert nodes[g.bindings["a"]].construct_class == "param"
    assert nodes[g.bindings["b"]].construct_class == "varDecl"


def test_empty_function_scope():
    scopes = build_scope_tree(parse_source("void g(){ }"))
    assert len(scopes.scopes) == 2
    assert scopes.scopes[1].bindings == {}


def test_shadowing_is_two_distinct_bindings():
    ast = parse_source("void t(){ int a; { int a; } }")
    scopes = build_scope_tree(ast)
    decls = [n.id for n in node_table(ast) if n.construct_class == "varDecl"]
    bound = sorted(decl for s in scopes.scopes for decl in s.bindings.values())
    assert bound == sorted(decls)
    assert len(set(bound)) == 2


def test_use_binds_to_declaration():
    ast, _, edges, unresolved = resolve("void t(){ int a; f(a); }")
    nodes = node_table(ast)
    use = next(n for n in nodes if n.construct_class == "ident")
    decl = next(n for n in nodes if n.construct_class == "varDecl")
    assert edges == {NameDepEdge(use.id, decl.id)}
    # The call target is not an ident node, so it is neither resolved nor
    # unresolved; only variable identifiers partition.
    assert unresolved == set()


def test_undeclared_identifier_is_unresolved():
    ast, _, edges, unresolved = resolve("void t(){ f(stdout); }")
    nodes = node_table(ast)
    use = next(n for n in nodes if n.construct_class == "ident")
    assert use.name == "stdout"
    assert unresolved == {use.id}
    assert edges == set()


def test_shadowed_use_binds_to_inner_declaration():
    ast, _, edges, _ = resolve("void t(){ int a; { int a; a = 0; } }")
    nodes = node_table(ast)
    decls = [n for n in nodes if n.construct_class == "varDecl"]
    inner = max(decls, key=lambda n: n.id)
    use = next(n for n in nodes if n.construct_class == "ident")
    assert decl_map(edges)[use.id] == inner.id


def test_use_before_declaration_is_unresolved():
    ast, _, edges, unresolved = resolve("void t(){ f(a); int a; }")
    use = next(n for n in walk_preorder(ast) if n.construct_class == "ident")
    assert use.id in unresolved
    assert not edges


def test_use_before_decl_falls_back_to_outer_scope():
    ast, _, edges, _ = resolve("void t(){ int a; { f(a); int a; } }")
    nodes = node_table(ast)
    outer = min(n.id for n in nodes if n.construct_class == "varDecl")
    use = next(n for n in nodes if n.construct_class == "ident")
    assert decl_map(edges)[use.id] == outer


@pytest.mark.parametrize("source", [
    "void t(){ int a; int a; }",
    "void t(int a){ int a; }",           # param collides with local
    "void t(int a, int a){ }",
])
def test_duplicate_declaration(source):
    with pytest.raises(DuplicateDeclaration) as err:
        build_scope_tree(parse_source(source))
    assert err.value.name == "a"


def test_same_scope_names_in_sibling_blocks_are_fine():
    ast, _, edges, unresolved = resolve(
        "void t(){ { int a; a = 1; } { int a; a = 2; } }")
    assert len(edges) == 2
    assert not unresolved
    targets = {e.decl_node for e in edges}
    assert len(targets) == 2


def test_resolution_partition_and_uniqueness():
    src = """int t(int n) {
      int total = 0;
      for (int i = 0; i < n; i = i + 1) {
        total = total + probe(i, missing_ext);
      }
      return total;
    }
    """
    ast, _, edges, unresolved = resolve(src)
    idents = {n.id for n in walk_preorder(ast) if n.construct_class == "ident"}
    resolved = {e.use_node for e in edges}
    assert resolved | unresolved == idents
    assert resolved & unresolved == set()
    assert len(edges) == len(resolved)   # exactly one edge per resolved use


def test_call_targets_never_resolve_to_variables():
    ast, _, edges, unresolved = resolve("void t(){ int f; f = 1; f(2); }")
    nodes = node_table(ast)
    call = next(n for n in nodes if n.construct_class == "call")
    assert call.name == "f"
    assert all(e.use_node != call.id for e in edges)
    assert call.id not in unresolved


def test_innermost_binding_perturbation():
    # Renaming only the inner shadowing declaration moves the inner uses to
    # the outer binding and changes nothing else.
    shadowed = "void t(){ int a; f(a); { int a; a = 0; } }"
    fresh = "void t(){ int a; f(a); { int w; w = 0; } }"
    _, _, e1, _ = resolve(shadowed)
    _, _, e2, _ = resolve(fresh)
    assert {(e.use_node, e.decl_node) for e in e1} == \
        {(e.use_node, e.decl_node) for e in e2}
    unshadowed = "void t(){ int a; f(a); { int w; a = 0; } }"
    _, _, e3, _ = resolve(unshadowed)
    ast = parse_source(unshadowed)
    outer = min(n.id for n in node_table(ast) if n.construct_class == "varDecl")
    inner_use = max(e.use_node for e in e3)
    assert decl_map(e3)[inner_use] == outer


def test_rename_stability_of_edge_positions():
    from codegraphs.genprog import random_program, random_rename
    import random as _random
    rng = _random.Random(8)
    for seed in (0, 5, 9):
        src = random_program(seed)
        renamed, _ = random_rename(src, rng)
        _, _, e1, u1 = resolve(src)
        _, _, e2, u2 = resolve(renamed)
        assert {(e.use_node, e.decl_node) for e in e1} == \
            {(e.use_node, e.decl_node) for e in e2}
        assert u1 == u2


def test_multi_function_scopes_are_independent():
    ast, scopes, edges, unresolved = resolve(
        "void a(){ int x; x = 1; } void b(){ x = 2; }")
    nodes = node_table(ast)
    uses = [n for n in nodes if n.construct_class == "ident"]
    assert len(uses) == 2
    resolved = decl_map(edges)
    assert uses[0].id in resolved          # first function sees its x
    assert uses[1].id in unresolved        # second function does not
