"""Hierarchical input data: parsing, validation, and normalization.

Two input formats are supported:

* json-tree: UTF-8 JSON, each node ``{"label": str, "value": number,
  "color": "#RRGGBB" (optional), "children": [...] (optional)}``.
* csv-edges: header ``parent_id,id,label,value,color``; exactly one row
  (the root) has an empty parent_id.

Layouts consume normalized trees whose root data value is exactly 1 and
whose node values are the fraction of the root total.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field

SUM_TOL = 1e-12

_COLOR_RE = re.compile(r"^#[0-9a-fA-F]{6}$")


class TreeInputError(ValueError):
    """Malformed or structurally invalid input data."""


class NormalizationError(ValueError):
    """Tree values cannot be normalized under the requested strategy."""


@dataclass
class TreeNode:
    """Raw input node; ``value`` is in application units."""

    id: str
    label: str
    value: float
    color: str | None = None
    children: list["TreeNode"] = field(default_factory=list)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def count(self) -> int:
        return sum(1 for _ in self.walk())


@dataclass
class NormalizedNode:
    """Node with ``data`` = value / root value, in [0, 1]; root data = 1."""

    id: str
    label: str
    data: float
    color: str | None = None
    children: list["NormalizedNode"] = field(default_factory=list)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def count(self) -> int:
        return sum(1 for _ in self.walk())


@dataclass(frozen=True)
class Violation:
    node_id: str
    rule: str
    message: str


def _check_color(color, where: str) -> str | None:
    if color is None or color == "":
        return None
    if not isinstance(color, str) or not _COLOR_RE.match(color):
        raise TreeInputError(f"{where}: color must look like #RRGGBB, got {color!r}")
    return color


def _node_from_json(obj, node_id: str) -> TreeNode:
    if not isinstance(obj, dict):
        raise TreeInputError(f"node {node_id}: expected an object, got {type(obj).__name__}")
    if "label" not in obj or not isinstance(obj["label"], str):
        raise TreeInputError(f"node {node_id}: missing or non-string label")
    if "value" not in obj or not isinstance(obj["value"], (int, float)) or isinstance(obj["value"], bool):
        raise TreeInputError(f"node {node_id} ({obj.get('label')}): missing or non-numeric value")
    color = _check_color(obj.get("color"), f"node {node_id}")
    children_obj = obj.get("children", [])
    if not isinstance(children_obj, list):
        raise TreeInputError(f"node {node_id}: children must be an array")
    node = TreeNode(id=node_id, label=obj["label"], value=float(obj["value"]), color=color)
    node.children = [
        _node_from_json(c, f"{node_id}.{i}") for i, c in enumerate(children_obj)
    ]
    return node


def _parse_json_tree(text: str) -> TreeNode:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeInputError(f"invalid JSON: {exc}") from exc
    return _node_from_json(obj, "0")


def _parse_csv_edges(text: str) -> TreeNode:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise TreeInputError("empty csv input") from None
    expected = ["parent_id", "id", "label", "value", "color"]
    if [h.strip() for h in header] != expected:
        raise TreeInputError(f"csv header must be {','.join(expected)}, got {header}")

    nodes: dict[str, TreeNode] = {}
    parents: dict[str, str] = {}
    order: list[str] = []
    roots: list[str] = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 5:
            raise TreeInputError(f"csv line {lineno}: expected 5 fields, got {len(row)}")
        # Labels keep their exact text; the structural fields are stripped.
        parent_id, node_id, value_s, color = (row[0].strip(), row[1].strip(),
                                              row[3].strip(), row[4].strip())
        label = row[2]
        if not node_id:
            raise TreeInputError(f"csv line {lineno}: empty id")
        if node_id in nodes:
            raise TreeInputError(f"csv line {lineno}: duplicate id {node_id!r}")
        try:
            value = float(value_s)
        except ValueError:
            raise TreeInputError(f"csv line {lineno}: bad value {value_s!r}") from None
        nodes[node_id] = TreeNode(
            id=node_id, label=label, value=value, color=_check_color(color, f"csv line {lineno}")
        )
        order.append(node_id)
        if parent_id:
            parents[node_id] = parent_id
        else:
            roots.append(node_id)

    if not roots:
        raise TreeInputError("no root row (empty parent_id) found")
    if len(roots) > 1:
        raise TreeInputError(f"multiple roots: {', '.join(roots)}")
    for node_id in order:
        parent_id = parents.get(node_id)
        if parent_id is None:
            continue
        if parent_id not in nodes:
            raise TreeInputError(f"node {node_id!r} references unknown parent {parent_id!r}")
        nodes[parent_id].children.append(nodes[node_id])

    root = nodes[roots[0]]
    reachable = {n.id for n in root.walk()}
    if len(reachable) != len(order):
        stray = [i for i in order if i not in reachable]
        raise TreeInputError(f"cycle detected: nodes unreachable from root: {', '.join(stray)}")
    return root


def parse_tree(data: bytes | str, fmt: str) -> TreeNode:
    """Parse a byte stream or string in the given format ("json-tree"/"csv-edges")."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if fmt == "json-tree":
        return _parse_json_tree(data)
    if fmt == "csv-edges":
        return _parse_csv_edges(data)
    raise ValueError(f"unknown tree format {fmt!r}")


def detect_format(filename: str) -> str:
    if filename.endswith(".csv"):
        return "csv-edges"
    return "json-tree"


def _node_to_json(node: TreeNode) -> dict:
    obj: dict = {"label": node.label, "value": node.value}
    if node.color is not None:
        obj["color"] = node.color
    if node.children:
        obj["children"] = [_node_to_json(c) for c in node.children]
    return obj


def serialize_tree(tree: TreeNode, fmt: str) -> str:
    if fmt == "json-tree":
        return json.dumps(_node_to_json(tree), indent=2)
    if fmt == "csv-edges":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["parent_id", "id", "label", "value", "color"])

        def emit(node: TreeNode, parent_id: str) -> None:
            writer.writerow([parent_id, node.id, node.label, repr(node.value), node.color or ""])
            for child in node.children:
                emit(child, node.id)

        emit(tree, "")
        return out.getvalue()
    raise ValueError(f"unknown tree format {fmt!r}")


def validate(tree: TreeNode) -> list[Violation]:
    """Check every node's value rules; violations are data, not errors."""
    violations: list[Violation] = []
    for node in tree.walk():
        if not math.isfinite(node.value):
            violations.append(
                Violation(node.id, "non-finite-value", f"value {node.value} is not finite")
            )
            continue
        if node.value < 0.0:
            violations.append(
                Violation(node.id, "negative-value", f"value {node.value} < 0")
            )
        if node.children:
            child_sum = sum(c.value for c in node.children)
            excess = child_sum - node.value
            if excess > SUM_TOL * max(1.0, abs(node.value)):
                violations.append(
                    Violation(
                        node.id,
                        "overfull-parent",
                        f"children sum {child_sum} exceeds parent value {node.value} "
                        f"by {excess}",
                    )
                )
    return violations


def normalize(tree: TreeNode, strategy: str = "strict") -> NormalizedNode:
    """Divide every value by the root value so the root maps to exactly 1.

    strict: raise if any parent's children sum past its own value.
    renormalize: scale the children of an overfull parent (and, implicitly,
    their whole subtrees) down proportionally so their sum equals the parent.
    """
    if strategy not in ("strict", "renormalize"):
        raise ValueError(f"unknown normalization strategy {strategy!r}")
    root_value = tree.value
    if not root_value > 0.0:
        raise NormalizationError(f"root value must be > 0, got {root_value}")

    def build(node: TreeNode, scale: float) -> NormalizedNode:
        data = scale * node.value / root_value
        child_scale = scale
        child_sum = sum(c.value for c in node.children)
        if node.children and child_sum > node.value:
            strict_breach = child_sum - node.value > SUM_TOL * max(1.0, abs(node.value))
            if strict_breach and strategy == "strict":
                raise NormalizationError(
                    f"node {node.id!r}: children sum {child_sum} exceeds value "
                    f"{node.value} by {child_sum - node.value}"
                )
            child_scale = scale * node.value / child_sum
        out = NormalizedNode(id=node.id, label=node.label, data=data, color=node.color)
        out.children = [build(c, child_scale) for c in node.children]
        return out

    return build(tree, 1.0)


def normalized_violations(tree: NormalizedNode) -> list[Violation]:
    """Invariant check for normalized trees (root=1, ranges, child sums)."""
    violations: list[Violation] = []
    if tree.data != 1.0:
        violations.append(Violation(tree.id, "root-not-unit", f"root data {tree.data} != 1"))
    for node in tree.walk():
        if not 0.0 <= node.data <= 1.0:
            violations.append(
                Violation(node.id, "data-range", f"data {node.data} outside [0, 1]")
            )
        if node.children:
            child_sum = sum(c.data for c in node.children)
            if child_sum > node.data + SUM_TOL:
                violations.append(
                    Violation(
                        node.id,
                        "overfull-parent",
                        f"children data sum {child_sum} exceeds {node.data}",
                    )
                )
    return violations
