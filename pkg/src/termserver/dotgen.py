"""DOT-language diagrams of concept neighborhoods.

The emitted digraph is the authoritative artifact: byte-deterministic,
left-to-right flow, center concept filled yellow, hierarchy edges red.
Rasterization is delegated to an external renderer binary.
"""

from __future__ import annotations

import shutil
import subprocess
from typing import NamedTuple

from .query import Neighborhood


class RendererUnavailable(Exception):
    def __init__(self, path: str):
        self.path = path
        super().__init__(f"renderer not found: {path}")


class RendererFailed(Exception):
    def __init__(self, returncode: int, stderr: str):
        self.returncode = returncode
        self.stderr = stderr
        super().__init__(f"renderer exited {returncode}: {stderr.strip()}")


class DotDocument(NamedTuple):
    text: str


def _escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def neighborhood_diagram(n: Neighborhood) -> DotDocument:
    lines = [f"digraph concept_{n.concept_id} {{"]
    lines.append("  rankdir=LR;")
    lines.append("  node [shape=box, style=filled, fillcolor=white];")
    lines.append(
        f'  "{n.concept_id}" [label="{_escape(n.preferred_term)}", fillcolor=yellow];'
    )
    others: dict[int, str] = {}
    for e in n.outbound + n.inbound:
        others.setdefault(e.other_id, e.other_term)
    for other_id in sorted(others):
        lines.append(f'  "{other_id}" [label="{_escape(others[other_id])}"];')
    for e in n.outbound:
        attrs = f'label="{_escape(e.type_term)}"'
        if e.is_hierarchy:
            attrs += ", color=red"
        lines.append(f'  "{n.concept_id}" -> "{e.other_id}" [{attrs}];')
    for e in n.inbound:
        attrs = f'label="{_escape(e.type_term)}"'
        if e.is_hierarchy:
            attrs += ", color=red"
        lines.append(f'  "{e.other_id}" -> "{n.concept_id}" [{attrs}];')
    lines.append("}")
    return DotDocument("\n".join(lines) + "\n")


def render_external(dot: DotDocument, format: str, renderer_path: str) -> bytes:
    """Pipe DOT text through ``renderer -T<format>`` and return its stdout."""
    fmt = format.lower()
    if fmt not in ("svg", "png"):
        raise ValueError(f"unsupported format {format!r}")
    if shutil.which(renderer_path) is None:
        raise RendererUnavailable(renderer_path)
    proc = subprocess.run(
        [renderer_path, f"-T{fmt}"],
        input=dot.text.encode("utf-8"),
        capture_output=True,
    )
    if proc.returncode != 0:
        raise RendererFailed(proc.returncode, proc.stderr.decode("utf-8", "replace"))
    return proc.stdout
