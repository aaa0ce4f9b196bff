"""Panel formulas and their rewrite calculus.

A panel is a nested formula describing an iterated dilatation: a leaf
``X_k`` (with ``X_0`` the ambient space) or a node listing divisor-indexed
entries over a base panel.  The panelization rewrite splits a node's entries
into a kept part and a part pushed into the base; exhaustive closure under
the rewrite yields a finite poset of formulas (1, 1, 3, 19 panels for
n = 0..3).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class PanelError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    index: int  # X_index; index 0 is the ambient space


@dataclass(frozen=True)
class DNode:
    entries: tuple  # pairs (divisor index, sub-panel), strictly decreasing
    base: "Leaf | DNode"


def initial_panel(n: int):
    """The root formula: all n entries at one node over the ambient leaf."""
    if n < 0:
        raise PanelError("negative index count")
    if n == 0:
        return Leaf(0)
    return DNode(tuple((k, Leaf(k)) for k in range(n, 0, -1)), Leaf(0))


def canonicalize(expr):
    """Sort entries by decreasing divisor index and collapse empty nodes."""
    if isinstance(expr, Leaf):
        return expr
    if not isinstance(expr, DNode):
        raise PanelError("not a panel expression")
    entries = tuple(sorted(((k, canonicalize(sub)) for k, sub in expr.entries),
                           key=lambda e: -e[0]))
    base = canonicalize(expr.base)
    if not entries:
        return base
    return DNode(entries, base)


def to_string(expr) -> str:
    if isinstance(expr, Leaf):
        return "X%d" % expr.index
    inner = ",".join("(D%d,%s)" % (k, to_string(sub)) for k, sub in expr.entries)
    return "D[%s|%s]" % (inner, to_string(expr.base))


def validate(expr, n: int, _used=frozenset()):
    """Well-formedness over indices 1..n: entry indices strictly decreasing
    and no divisor index repeated along a nesting chain."""
    if isinstance(expr, Leaf):
        if not 0 <= expr.index <= n:
            raise PanelError("leaf index %d out of range" % expr.index)
        return
    ks = [k for k, _ in expr.entries]
    if ks != sorted(ks, reverse=True) or len(set(ks)) != len(ks):
        raise PanelError("entry indices must be strictly decreasing")
    for k, sub in expr.entries:
        if not 1 <= k <= n:
            raise PanelError("divisor index %d out of range" % k)
        if k in _used:
            raise PanelError("divisor index %d repeated along a chain" % k)
        validate(sub, n, _used | {k})
    validate(expr.base, n, _used | set(ks))


def _descend(expr, path):
    node = expr
    for step in path:
        if not isinstance(node, DNode):
            raise PanelError("path runs through a leaf")
        if step == "base":
            node = node.base
        else:
            matches = [sub for k, sub in node.entries if k == step]
            if not matches:
                raise PanelError("no entry with divisor index %r" % (step,))
            node = matches[0]
    return node


def _rebuild(expr, path, replacement):
    if not path:
        return replacement
    step, rest = path[0], path[1:]
    if step == "base":
        return DNode(expr.entries, _rebuild(expr.base, rest, replacement))
    entries = tuple((k, _rebuild(sub, rest, replacement) if k == step else sub)
                    for k, sub in expr.entries)
    return DNode(entries, expr.base)


def _rewrite_node(node: DNode, S: frozenset) -> DNode:
    indices = [k for k, _ in node.entries]
    if len(indices) < 2:
        raise PanelError("panelization needs a node with at least two entries")
    if not S or not S < set(indices):
        raise PanelError("S must be a nonempty proper subset of the node's indices")
    s_entries = [(k, sub) for k, sub in node.entries if k in S]
    new_base = DNode(tuple(s_entries), node.base)
    new_entries = []
    for k, sub in node.entries:
        if k in S:
            continue
        above = tuple((s, ssub) for s, ssub in s_entries if s > k)
        new_sub = DNode(above, sub) if above else sub
        new_entries.append((k, new_sub))
    return DNode(tuple(new_entries), new_base)


def panelize(expr, path: Sequence, S: Iterable[int]):
    """Apply the panelization rewrite at the node addressed by path.

    Path steps are divisor indices (descend into that entry) or the string
    "base".  S picks the entries moved into the new base."""
    node = _descend(expr, tuple(path))
    if not isinstance(node, DNode):
        raise PanelError("path must address a node")
    return canonicalize(_rebuild(expr, tuple(path), _rewrite_node(node, frozenset(S))))


@dataclass(frozen=True)
class Polyptych:
    n: int
    panels: tuple          # canonical PanelExprs in discovery order
    strings: tuple         # canonical strings, same order
    edges: tuple           # (parent string, child string, sorted S tuple)


def _node_paths(expr, prefix=()):
    """Paths to every node with at least two entries, in a stable order."""
    if isinstance(expr, Leaf):
        return
    if len(expr.entries) >= 2:
        yield prefix
    for k, sub in expr.entries:
        yield from _node_paths(sub, prefix + (k,))
    yield from _node_paths(expr.base, prefix + ("base",))


def _proper_subsets(indices):
    indices = sorted(indices)
    m = len(indices)
    for mask in range(1, (1 << m) - 1):
        yield frozenset(indices[i] for i in range(m) if mask >> i & 1)


def enumerate_polyptych(n: int) -> Polyptych:
    """Breadth-first closure of the initial panel under panelization at every
    eligible node, deduplicated by canonical string."""
    root = canonicalize(initial_panel(n))
    order = [root]
    strings = [to_string(root)]
    seen = {strings[0]}
    edges = []
    edge_seen = set()
    queue = [root]
    while queue:
        panel = queue.pop(0)
        pstr = to_string(panel)
        for path in _node_paths(panel):
            node = _descend(panel, path)
            for S in _proper_subsets([k for k, _ in node.entries]):
                child = panelize(panel, path, S)
                cstr = to_string(child)
                if cstr not in seen:
                    seen.add(cstr)
                    order.append(child)
                    strings.append(cstr)
                    queue.append(child)
                key = (pstr, cstr, tuple(sorted(S)))
                if key not in edge_seen:
                    edge_seen.add(key)
                    edges.append(key)
    return Polyptych(n, tuple(order), tuple(strings), tuple(edges))


def emit_dot(p: Polyptych) -> str:
    """DOT digraph with nodes in discovery order and edges labeled by S."""
    names = {s: "p%d" % (i + 1) for i, s in enumerate(p.strings)}
    lines = ["digraph polyptych {"]
    for i, s in enumerate(p.strings):
        lines.append('  p%d [label="p%d: %s"];' % (i + 1, i + 1, s))
    for parent, child, S in p.edges:
        label = "{%s}" % ",".join(str(k) for k in S)
        lines.append('  %s -> %s [label="%s"];' % (names[parent], names[child], label))
    lines.append("}")
    return "\n".join(lines)
