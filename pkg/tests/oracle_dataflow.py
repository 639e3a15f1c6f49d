"""Brute-force oracle for the reaching-definitions pass.

Enumerates every control-flow path from the function entry, allowing each
back edge (an edge into a while/for header from a node at or after it) to be
taken at most once, i.e. loops unrolled once. Along a path it replays the
statement events and records (last definition -> use) facts. The production
pass must produce exactly this set on small fixtures.
"""

from __future__ import annotations

from codegraphs.graphs import FlowModel


def brute_force_data_deps(model: FlowModel) -> set[tuple[int, int]]:
    succ: dict[int, list[int]] = {}
    for s, d in model.edges:
        succ.setdefault(s, []).append(d)

    facts: set[tuple[int, int]] = set()
    for fn in model.functions:
        if fn.entry is None:
            continue

        def walk(node: int, lastdef: dict[int, int],
                 used_back: frozenset) -> None:
            lastdef = dict(lastdef)
            for ev in fn.events.get(node, []):
                if ev[0] == "use":
                    _tag, decl, ident = ev
                    if decl in lastdef:
                        facts.add((lastdef[decl], ident))
                else:
                    _tag, decl, def_node = ev
                    lastdef[decl] = def_node
            for nxt in succ.get(node, []):
                if nxt == fn.func_id:
                    continue
                if nxt in model.loop_headers and nxt <= node:
                    edge = (node, nxt)
                    if edge in used_back:
                        continue
                    walk(nxt, lastdef, used_back | {edge})
                else:
                    walk(nxt, lastdef, used_back)

        walk(fn.entry, dict(fn.param_defs), frozenset())
    return facts
