"""Self-describing instance files.

A versioned JSON document with string vertex labels.  Arrays are serialized
in sorted order so that serialize(parse(text)) reproduces the bytes of any
canonically written file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .mec import BackgroundKnowledge, MecInstance, PartiallyDirectedGraph

FORMAT_NAME = "mec-count-instance"
FORMAT_VERSION = 1


class InstanceFormatError(ValueError):
    pass


@dataclass
class InstanceDocument:
    """An instance plus its label map and free-form metadata."""

    labels: tuple
    instance: MecInstance
    metadata: dict = field(default_factory=dict)

    def label_of(self, v: int) -> str:
        return self.labels[v]


def _expect(cond, msg):
    if not cond:
        raise InstanceFormatError(msg)


def _label_pairs(raw, key, label_ids, *, ordered):
    pairs = []
    _expect(isinstance(raw, list), f"'{key}' must be an array")
    for i, item in enumerate(raw):
        where = f"{key}[{i}]"
        _expect(
            isinstance(item, list) and len(item) == 2,
            f"{where} must be a pair of labels",
        )
        a, b = item
        for lab in (a, b):
            _expect(isinstance(lab, str), f"{where} must contain string labels")
            _expect(lab in label_ids, f"{where} references unknown label '{lab}'")
        _expect(a != b, f"{where} is a self-loop")
        u, v = label_ids[a], label_ids[b]
        pairs.append((u, v) if ordered else (min(u, v), max(u, v)))
    return pairs


def parse_instance_text(text: str) -> InstanceDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    _expect(isinstance(doc, dict), "document must be a JSON object")
    _expect(doc.get("format") == FORMAT_NAME, f"'format' must be '{FORMAT_NAME}'")
    _expect(doc.get("version") == FORMAT_VERSION, f"'version' must be {FORMAT_VERSION}")
    raw_labels = doc.get("vertices")
    _expect(isinstance(raw_labels, list) and raw_labels, "'vertices' must be a non-empty array")
    for i, lab in enumerate(raw_labels):
        _expect(isinstance(lab, str), f"vertices[{i}] must be a string label")
    labels = tuple(sorted(raw_labels))
    _expect(len(set(labels)) == len(labels), "'vertices' contains duplicate labels")
    label_ids = {lab: i for i, lab in enumerate(labels)}

    und = _label_pairs(doc.get("undirected_edges", []), "undirected_edges", label_ids, ordered=False)
    dire = _label_pairs(doc.get("directed_edges", []), "directed_edges", label_ids, ordered=True)
    know = _label_pairs(doc.get("knowledge", []), "knowledge", label_ids, ordered=True)
    metadata = doc.get("metadata", {})
    _expect(isinstance(metadata, dict), "'metadata' must be an object")
    try:
        graph = PartiallyDirectedGraph(len(labels), und, dire)
        knowledge = BackgroundKnowledge(know)
    except ValueError as e:
        raise InstanceFormatError(str(e)) from None
    return InstanceDocument(labels=labels, instance=MecInstance(graph, knowledge), metadata=metadata)


def load_instance(path) -> InstanceDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance_text(fh.read())


def serialize_instance(doc: InstanceDocument) -> str:
    labels = doc.labels
    g = doc.instance.graph
    body = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "vertices": sorted(labels),
        "undirected_edges": sorted([labels[u], labels[v]] for u, v in g.undirected),
        "directed_edges": sorted([labels[u], labels[v]] for u, v in g.directed),
        "knowledge": sorted([labels[u], labels[v]] for u, v in doc.instance.knowledge),
        "metadata": doc.metadata,
    }
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def save_instance(doc: InstanceDocument, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(doc))


def default_labels(n: int) -> tuple:
    width = len(str(n - 1)) if n > 1 else 1
    return tuple(f"v{i:0{width}d}" for i in range(n))
