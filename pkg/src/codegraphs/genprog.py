"""Synthetic MiniC corpora and random programs for property testing.

The labeled generator plants an out-of-bounds shape: label 1 functions index
a sized array at a position that is never compared against the array length,
label 0 functions wrap the same write in a bounds check. Everything else
(names, sizes, literals, filler) is drawn identically for both labels, so
variable naming carries no label signal. Names come from a large random
pool and are derived only from (seed, rename_salt, index), which makes two
corpora that differ only in the salt alpha-equivalent sample by sample.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from pathlib import Path

from .lexer import KEYWORDS, tokenize
from .parser import parse_source
from .resolver import build_scope_tree, resolve_names
from .syntax import PARAM, VAR_DECL, TypeExpr, walk_preorder

EXTERNAL_CALLS = ("log_value", "emit", "checksum", "notify")
EXTERNAL_IDENTS = ("stdout", "stderr", "env_limit")


class ConfigError(ValueError):
    """A generator configuration violates its preconditions."""


@dataclass(frozen=True)
class GenConfig:
    seed: int
    sample_count: int
    flaw_rate: float
    max_stmts: int = 12
    rename_salt: int = 0


# ---------------------------------------------------------------------------
# Names


def _fresh_name(rng: random.Random, taken: set[str]) -> str:
    while True:
        length = rng.randint(2, 9)
        name = rng.choice(string.ascii_lowercase) + "".join(
            rng.choice(string.ascii_lowercase + string.digits)
            for _ in range(length))
        if name not in taken and name not in KEYWORDS:
            taken.add(name)
            return name


# ---------------------------------------------------------------------------
# Labeled corpus


def _flaw_sample(index: int, label: int, cfg: GenConfig) -> str:
    """One labeled function.

    Both labels carry the same filler, including bounds-checked array writes,
    so neither the mere presence of a guard nor of an indexed write separates
    the classes; only the planted write differs, bare (label 1) or wrapped in
    a comparison against the array length (label 0). The structure stream
    never depends on the label, so the drawn names and filler are identical
    for both variants of a sample index.
    """
    struct = random.Random(f"{cfg.seed}:{index}:struct")
    names = random.Random(f"{cfg.seed}:{cfg.rename_salt}:{index}:names")
    taken: set[str] = set(EXTERNAL_CALLS) | set(EXTERNAL_IDENTS)
    name = lambda: _fresh_name(names, taken)

    n = name()
    buf = name()
    idx = name()
    val = name()
    size = struct.choice((4, 8, 12, 16, 24, 32, 48, 64))

    lines = [f"int fn{index}(int {n}) {{"]
    declared = [n]
    arrays: list[tuple[str, int]] = []

    def filler_block(count: int) -> None:
        for _ in range(count):
            kind = struct.random()
            if kind < 0.3:
                v = name()
                lines.append(f"  int {v} = {struct.randint(0, 9999)} "
                             f"{struct.choice('+-*')} {n};")
                declared.append(v)
            elif kind < 0.45:
                v = name()
                k = struct.choice((4, 8, 12, 16, 24, 32, 48, 64))
                lines.append(f"  int[{k}] {v};")
                arrays.append((v, k))
            elif kind < 0.6 and declared:
                v = struct.choice(declared)
                lines.append(f"  {v} = {v} {struct.choice('+-')} "
                             f"{struct.randint(1, 99)};")
            elif kind < 0.8:
                # A harmless guard so that if-nodes appear in both classes;
                # guarded writes to filler arrays keep bracket tokens there
                # too.
                v = struct.choice(declared)
                bound = struct.randint(1, 9999)
                if arrays and struct.random() < 0.6:
                    arr, k = struct.choice(arrays)
                    lines.append(f"  if ({v} < {k}) {{")
                    lines.append(f"    {arr}[{v}] = {struct.randint(0, 999)};")
                    lines.append("  }")
                else:
                    lines.append(f"  if ({v} > {bound}) {{")
                    lines.append(f"    {struct.choice(EXTERNAL_CALLS)}({v});")
                    lines.append("  }")
            else:
                callee = struct.choice(EXTERNAL_CALLS)
                arg = struct.choice(declared) if struct.random() < 0.7 \
                    else str(struct.randint(0, 99))
                lines.append(f"  {callee}({arg});")

    pre = struct.randint(2, max(2, cfg.max_stmts // 2))
    post = struct.randint(1, max(1, cfg.max_stmts // 3))
    filler_block(pre)
    lines.append(f"  int[{size}] {buf};")
    lines.append(f"  int {idx};")
    lines.append(f"  {idx} = {n} {struct.choice('+-')} {struct.randint(0, 9999)};")
    lines.append(f"  int {val} = {idx} {struct.choice('+-')} {struct.randint(0, 9999)};")
    declared += [idx, val]
    if label == 1:
        lines.append(f"  {buf}[{idx}] = {val};")
    else:
        lines.append(f"  if ({idx} < {size}) {{")
        lines.append(f"    {buf}[{idx}] = {val};")
        lines.append("  }")
    filler_block(post)
    lines.append(f"  return {buf}[0];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def generate_corpus(cfg: GenConfig, out_dir) -> tuple[Path, list[Path]]:
    """Write sources plus a ``manifest.csv`` into ``out_dir``.

    Returns (manifest path, sample paths). The same config always produces a
    byte-identical corpus.
    """
    if cfg.sample_count < 2:
        raise ConfigError("sample_count must be at least 2")
    if not 0 < cfg.flaw_rate < 1:
        raise ConfigError("flaw_rate must lie strictly between 0 and 1")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    n_flawed = int(round(cfg.sample_count * cfg.flaw_rate))
    labels = [1] * n_flawed + [0] * (cfg.sample_count - n_flawed)
    random.Random(f"{cfg.seed}:labels").shuffle(labels)

    paths: list[Path] = []
    rows = ["sample_id,path,label"]
    for i, label in enumerate(labels):
        sample_id = f"sample_{i:05d}"
        path = out / f"{sample_id}.mc"
        path.write_text(_flaw_sample(i, label, cfg), encoding="utf-8")
        rows.append(f"{sample_id},{path.name},{label}")
        paths.append(path)
    manifest = out / "manifest.csv"
    manifest.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return manifest, paths


# ---------------------------------------------------------------------------
# Random programs for property tests


class _ProgramBuilder:
    def __init__(self, rng: random.Random, max_stmts: int):
        self.rng = rng
        self.budget = max_stmts
        self.taken: set[str] = set(EXTERNAL_CALLS) | set(EXTERNAL_IDENTS)
        self.scopes: list[dict[str, TypeExpr]] = []

    # -- scope bookkeeping -----------------------------------------

    def declare(self, dtype: TypeExpr, shadow_ok: bool = True) -> str:
        rng = self.rng
        outer = [n for s in self.scopes[:-1] for n in s
                 if n not in self.scopes[-1]]
        if shadow_ok and outer and rng.random() < 0.3:
            name = rng.choice(sorted(outer))   # shadow an outer binding
        else:
            name = _fresh_name(rng, self.taken)
        self.scopes[-1][name] = dtype
        return name

    def visible(self, arrays: bool | None = None) -> list[tuple[str, TypeExpr]]:
        seen: dict[str, TypeExpr] = {}
        for scope in reversed(self.scopes):
            for name, dtype in scope.items():
                seen.setdefault(name, dtype)
        items = sorted(seen.items())
        if arrays is None:
            return items
        return [(n, t) for n, t in items if t.is_array == arrays]

    # -- expressions -----------------------------------------------

    def literal(self) -> str:
        rng = self.rng
        pick = rng.random()
        if pick < 0.6:
            return str(rng.randint(0, 999))
        if pick < 0.8:
            return f"{rng.randint(0, 99)}.{rng.randint(0, 99):02d}"
        if pick < 0.9:
            return f"'{rng.choice(string.ascii_letters)}'"
        return f'"{rng.choice(("ok", "hi", "go", "no"))}"'

    def expr(self, depth: int = 0) -> str:
        rng = self.rng
        scalars = self.visible(arrays=False)
        arrays = self.visible(arrays=True)
        if depth >= 2 or rng.random() < 0.35:
            pick = rng.random()
            if scalars and pick < 0.5:
                return rng.choice(scalars)[0]
            if arrays and pick < 0.6:
                return f"{rng.choice(arrays)[0]}[{rng.randint(0, 9)}]"
            if pick < 0.65:
                return rng.choice(EXTERNAL_IDENTS)
            return self.literal()
        pick = rng.random()
        if pick < 0.15:
            args = ", ".join(self.expr(depth + 1)
                             for _ in range(rng.randint(0, 2)))
            return f"{rng.choice(EXTERNAL_CALLS)}({args})"
        if pick < 0.25:
            return f"(-{self.expr(depth + 1)})"
        op = rng.choice("+-*/%")
        return f"({self.expr(depth + 1)} {op} {self.expr(depth + 1)})"

    def cond(self) -> str:
        rng = self.rng
        cmp_op = rng.choice(("<", ">", "<=", ">=", "==", "!="))
        left = f"({self.expr(1)} {cmp_op} {self.expr(1)})"
        if rng.random() < 0.25:
            logic = rng.choice(("&&", "||"))
            return f"({left} {logic} (!{self.expr(1)}))"
        return left

    # -- statements ------------------------------------------------

    def decl_stmt(self, indent: str) -> str:
        rng = self.rng
        if rng.random() < 0.25:
            dtype = TypeExpr(rng.choice(("int", "float", "char")),
                             rng.choice((4, 8, 16, 256, 70000)))
            name = self.declare(dtype)
            return f"{indent}{dtype.spelling()} {name};"
        dtype = TypeExpr(rng.choice(("int", "int", "float", "char", "str")))
        init = f" = {self.expr()}" if rng.random() < 0.7 else ""
        name = self.declare(dtype)
        return f"{indent}{dtype.spelling()} {name}{init};"

    def stmt(self, indent: str, depth: int) -> list[str]:
        rng = self.rng
        self.budget -= 1
        pick = rng.random()
        scalars = self.visible(arrays=False)
        arrays = self.visible(arrays=True)
        if pick < 0.3:
            return [self.decl_stmt(indent)]
        if pick < 0.45 and scalars:
            return [f"{indent}{rng.choice(scalars)[0]} = {self.expr()};"]
        if pick < 0.5 and arrays:
            name = rng.choice(arrays)[0]
            return [f"{indent}{name}[{self.expr(1)}] = {self.expr()};"]
        if pick < 0.62:
            args = ", ".join(self.expr(1) for _ in range(rng.randint(0, 3)))
            return [f"{indent}{rng.choice(EXTERNAL_CALLS)}({args});"]
        if depth >= 2 or self.budget <= 1:
            return [self.decl_stmt(indent)]
        if pick < 0.74:
            lines = [f"{indent}if ({self.cond()})"]
            lines += self.nested_block(indent, depth)
            if rng.random() < 0.4:
                lines.append(f"{indent}else")
                lines += self.nested_block(indent, depth)
            return lines
        if pick < 0.82:
            return ([f"{indent}while ({self.cond()})"]
                    + self.nested_block(indent, depth))
        if pick < 0.9:
            # The loop variable binds in the enclosing scope, so keep it fresh.
            var = _fresh_name(rng, self.taken)
            self.scopes[-1][var] = TypeExpr("int")
            header = (f"{indent}for (int {var} = 0; {var} < "
                      f"{rng.randint(2, 20)}; {var} = {var} + 1)")
            return [header] + self.nested_block(indent, depth)
        return self.nested_block(indent, depth)

    def nested_block(self, indent: str, depth: int) -> list[str]:
        rng = self.rng
        self.scopes.append({})
        lines = [f"{indent}{{"]
        for _ in range(rng.randint(1, 3)):
            if self.budget <= 0:
                break
            lines += self.stmt(indent + "  ", depth + 1)
        lines.append(f"{indent}}}")
        self.scopes.pop()
        return lines

    def function(self) -> str:
        rng = self.rng
        self.scopes.append({})
        params = []
        for _ in range(rng.randint(0, 2)):
            dtype = TypeExpr(rng.choice(("int", "int", "float")))
            params.append(f"{dtype.spelling()} {self.declare(dtype, shadow_ok=False)}")
        lines = [f"int prog({', '.join(params)}) {{"]
        while self.budget > 0:
            lines += self.stmt("  ", 0)
        lines.append(f"  return {self.expr(1)};")
        lines.append("}")
        self.scopes.pop()
        return "\n".join(lines) + "\n"


def random_program(seed: int, max_stmts: int = 10) -> str:
    """A parseable, resolvable MiniC program; same seed, same program."""
    rng = random.Random(f"prog:{seed}")
    return _ProgramBuilder(rng, max_stmts).function()


# ---------------------------------------------------------------------------
# Renaming


def rename_variables(source: str, mapping: dict[str, str]) -> str:
    """Apply an injective rename to declared variables and parameters.

    Only binding occurrences and their resolved uses are rewritten, so
    unresolved identifiers keep their spelling even when they share a name
    with some declaration. Targets must be fresh: not keywords, not any
    identifier already appearing in the source, and pairwise distinct.
    """
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        raise ValueError("rename mapping must be injective")
    ast = parse_source(source)
    present = {t.text for t in tokenize(source) if t.kind == "ident"}
    for target in targets:
        if target in KEYWORDS or target in present:
            raise ValueError(f"rename target {target!r} is not fresh")

    scopes = build_scope_tree(ast)
    edges, _ = resolve_names(ast, scopes)
    nodes = {n.id: n for n in walk_preorder(ast)}
    spans: list[tuple[int, int, str]] = []
    for node in nodes.values():
        if node.construct_class in (VAR_DECL, PARAM) and node.name in mapping:
            assert node.name_span is not None
            spans.append((*node.name_span, mapping[node.name]))
    for edge in edges:
        use = nodes[edge.use_node]
        decl = nodes[edge.decl_node]
        if decl.name in mapping:
            assert use.name_span is not None
            spans.append((*use.name_span, mapping[decl.name]))

    out = source
    for start, end, text in sorted(spans, reverse=True):
        out = out[:start] + text + out[end:]
    return out


def random_rename(source: str, rng: random.Random) -> tuple[str, dict[str, str]]:
    """Rename every declared variable/param to a fresh random name."""
    ast = parse_source(source)
    declared = sorted({n.name for n in walk_preorder(ast)
                       if n.construct_class in (VAR_DECL, PARAM) and n.name})
    present = {t.text for t in tokenize(source) if t.kind == "ident"}
    taken = set(present) | set(KEYWORDS)
    mapping = {name: _fresh_name(rng, taken) for name in declared}
    return rename_variables(source, mapping), mapping
