"""Reading and writing edge sets.

Accepted inputs:

* line format: ``e <u> <v>`` for one edge, ``class <i>`` for a whole
  1-based Θ-class, ``#`` comments;
* the JSON printed by ``solve --json`` (its first witness is used);
* a bare JSON list of ``[u, v]`` pairs.
"""

from __future__ import annotations

import json
from typing import Optional

from .edgeset import EdgeSet
from .errors import GraphFormatError
from .graphs import Graph
from .metric import DistanceMatrix
from .theta import ThetaPartition, theta_partition


def _pairs_to_set(g: Graph, pairs) -> EdgeSet:
    out = EdgeSet.empty(g.size)
    for pair in pairs:
        try:
            u, v = (int(x) for x in pair)
        except (TypeError, ValueError):
            raise GraphFormatError(f"edge must be a [u, v] pair of integers, got {pair!r}") from None
        if not g.has_edge(u, v):
            raise GraphFormatError(f"({u}, {v}) is not an edge of the graph")
        out = out.add(g.edge_index(u, v))
    return out


def loads_edge_set(text: str, g: Graph, d: Optional[DistanceMatrix] = None,
                   part: Optional[ThetaPartition] = None) -> EdgeSet:
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"bad JSON edge set: {exc}") from None
        if isinstance(doc, dict):
            witnesses = doc.get("witnesses")
            if not witnesses:
                raise GraphFormatError("JSON object has no 'witnesses'")
            return _pairs_to_set(g, witnesses[0])
        return _pairs_to_set(g, doc)

    out = EdgeSet.empty(g.size)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *fields = line.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise GraphFormatError(f"expected integers after {tag!r}", lineno) from None
        if tag == "e" and len(nums) == 2:
            u, v = nums
            if not g.has_edge(u, v):
                raise GraphFormatError(f"({u}, {v}) is not an edge of the graph", lineno)
            out = out.add(g.edge_index(u, v))
        elif tag == "class" and len(nums) == 1:
            if part is None:
                part = theta_partition(g, d)
            if not 1 <= nums[0] <= len(part):
                raise GraphFormatError(f"class {nums[0]} outside 1..{len(part)}", lineno)
            out = out | part.theta(nums[0])
        else:
            raise GraphFormatError(f"expected 'e <u> <v>' or 'class <i>', got {line!r}", lineno)
    return out


def dumps_edge_set(g: Graph, x: EdgeSet) -> str:
    return "".join(f"e {u} {v}\n" for u, v in x.pairs(g))
