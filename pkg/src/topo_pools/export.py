"""JSON and Graphviz DOT rendering of complexes."""
from __future__ import annotations

import json
from typing import Any

from .complex_core import (
    AbstractComplex,
    Complex,
    components,
    order_key,
    sorted_vertices,
    vertex_label,
    vertex_payload,
)

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def complex_to_dict(c: AbstractComplex) -> dict:
    cx = c if isinstance(c, Complex) else c.materialize()
    facets = [[vertex_label(v) for v in sorted_vertices(f)] for f in cx.facets]
    vertices = {vertex_label(v): vertex_payload(v) for v in cx.vertices}
    return {"facets": facets, "vertices": vertices}


def dumps(obj: Any) -> str:
    """Deterministic JSON text (insertion order preserved, trailing newline)."""
    if isinstance(obj, AbstractComplex):
        obj = complex_to_dict(obj)
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def complex_from_dict(data: dict) -> Complex:
    """Rebuild a complex from its JSON form.

    Pool payloads come back as pool vertices; every other vertex is restored
    as its string key.
    """
    from .pool_tasks import PoolVertex

    table = {}
    for key, payload in data.get("vertices", {}).items():
        if isinstance(payload, dict) and "pool" in payload and "index" in payload:
            table[key] = PoolVertex.from_payload(payload)
        else:
            table[key] = key
    return Complex([[table.get(k, k) for k in facet] for facet in data["facets"]])


def _dot_id(label: str) -> str:
    return json.dumps(label, ensure_ascii=False)


def to_dot(c: AbstractComplex, name: str = "complex") -> str:
    """1-skeleton of the complex, one cluster per path component.

    Vertices that carry a chromatic ``color`` attribute are filled with a
    palette color indexed by that color.
    """
    cx = c if isinstance(c, Complex) else c.materialize()
    colors = {}
    for v in cx.vertices:
        col = getattr(v, "chromatic_color", None)
        if col is not None:
            colors.setdefault(col, None)
    palette_of = {col: PALETTE[i % len(PALETTE)] for i, col in enumerate(sorted(colors, key=order_key))}

    lines = [f"graph {_dot_id(name)} {{", "  node [shape=circle, fontsize=10];"]
    for i, comp in enumerate(components(cx)):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={_dot_id(f'component {i}')};")
        for v in comp.vertices:
            attrs = [f"label={_dot_id(vertex_label(v))}"]
            col = getattr(v, "chromatic_color", None)
            if col is not None:
                attrs.append(f"style=filled, fillcolor={_dot_id(palette_of[col])}")
            lines.append(f"    {_dot_id(vertex_label(v))} [{', '.join(attrs)}];")
        for a, b in comp.faces(1):
            x, y = sorted_vertices((a, b))
            lines.append(f"    {_dot_id(vertex_label(x))} -- {_dot_id(vertex_label(y))};")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
