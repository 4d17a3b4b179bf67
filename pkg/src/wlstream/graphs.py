"""Node-labeled directed graphs and the newline-delimited corpus format."""

import json
from dataclasses import dataclass, field
from typing import IO, Optional, Tuple

# Reserved by the WL label encoding (see wl.py); forbidden in node labels.
RESERVED_CHARS = ("\x1f", "\x1e")


class CorpusFormatError(ValueError):
    """Malformed corpus data. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class LabeledGraph:
    """Directed graph with string node labels, a day index and a class label.

    ``class_label`` is +1 (positive / malicious) or -1 (negative / benign).
    ``family`` is an optional tag used only by drift analysis; classification
    ignores it.
    """

    id: str
    day: int
    class_label: int
    nodes: Tuple[Tuple[int, str], ...]
    edges: Tuple[Tuple[int, int], ...]
    family: Optional[str] = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("graph id must be a non-empty string")
        if self.day < 0:
            raise ValueError(f"graph {self.id}: day must be >= 0, got {self.day}")
        if self.class_label not in (-1, 1):
            raise ValueError(
                f"graph {self.id}: class_label must be -1 or +1, got {self.class_label}"
            )
        node_ids = set()
        for nid, label in self.nodes:
            if nid in node_ids:
                raise ValueError(f"graph {self.id}: duplicate node id {nid}")
            node_ids.add(nid)
            if not label:
                raise ValueError(f"graph {self.id}: empty label on node {nid}")
            if any(c in label for c in RESERVED_CHARS):
                raise ValueError(
                    f"graph {self.id}: node {nid} label contains a reserved "
                    "separator character (U+001E/U+001F)"
                )
        for src, dst in self.edges:
            if src not in node_ids or dst not in node_ids:
                raise ValueError(
                    f"graph {self.id}: edge ({src},{dst}) references a missing node"
                )

    def out_neighbors(self):
        """Adjacency as {node_id: [out-neighbor ids]} (insertion order)."""
        adj = {nid: [] for nid, _ in self.nodes}
        for src, dst in self.edges:
            adj[src].append(dst)
        return adj

    def labels(self):
        return {nid: label for nid, label in self.nodes}


@dataclass(frozen=True)
class Corpus:
    graphs: Tuple[LabeledGraph, ...]
    name: str = "corpus"
    day_count: int = field(default=0)

    def __post_init__(self):
        max_day = max((g.day for g in self.graphs), default=-1)
        if self.day_count < max_day + 1:
            raise ValueError(
                f"day_count {self.day_count} < max graph day + 1 ({max_day + 1})"
            )
        seen = set()
        for g in self.graphs:
            if g.id in seen:
                raise ValueError(f"duplicate graph id {g.id!r} in corpus")
            seen.add(g.id)

    def __len__(self):
        return len(self.graphs)


def _parse_record(obj, line_no):
    if not isinstance(obj, dict):
        raise CorpusFormatError("record is not an object", line_no)
    try:
        gid = obj["id"]
        day = obj["day"]
        label = obj["label"]
        nodes = obj["nodes"]
        edges = obj["edges"]
    except KeyError as e:
        raise CorpusFormatError(f"missing field {e.args[0]!r}", line_no)
    if not isinstance(gid, str):
        raise CorpusFormatError("'id' must be a string", line_no)
    if not isinstance(day, int) or isinstance(day, bool):
        raise CorpusFormatError("'day' must be an integer", line_no)
    if label not in (-1, 1) or isinstance(label, bool):
        raise CorpusFormatError(f"'label' must be -1 or 1, got {label!r}", line_no)
    family = obj.get("family")
    if family is not None and not isinstance(family, str):
        raise CorpusFormatError("'family' must be a string when present", line_no)
    try:
        node_tuples = tuple((int(nid), str(lbl)) for nid, lbl in nodes)
        edge_tuples = tuple((int(s), int(d)) for s, d in edges)
    except (TypeError, ValueError):
        raise CorpusFormatError("'nodes'/'edges' must be pair lists", line_no)
    try:
        return LabeledGraph(
            id=gid,
            day=day,
            class_label=label,
            nodes=node_tuples,
            edges=edge_tuples,
            family=family,
        )
    except ValueError as e:
        raise CorpusFormatError(str(e), line_no)


def parse_corpus(source: IO) -> Corpus:
    """Parse a corpus from a text or binary stream.

    Line 1 is the metadata header ``{"name":..., "day_count":...}``; every
    following line is one graph record. Errors report the offending line.
    """
    lines = iter(source)
    try:
        header_line = next(lines)
    except StopIteration:
        raise CorpusFormatError("empty input: missing header line")
    if isinstance(header_line, bytes):
        decode = lambda b: b.decode("utf-8")
    else:
        decode = lambda s: s
    try:
        header = json.loads(decode(header_line))
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise CorpusFormatError(f"bad header: {e}", 1)
    if not isinstance(header, dict) or "name" not in header or "day_count" not in header:
        raise CorpusFormatError("header must carry 'name' and 'day_count'", 1)

    graphs = []
    for line_no, raw in enumerate(lines, start=2):
        text = decode(raw).strip("\n")
        if not text:
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise CorpusFormatError(f"bad record: {e}", line_no)
        graphs.append(_parse_record(obj, line_no))

    try:
        return Corpus(
            graphs=tuple(graphs),
            name=str(header["name"]),
            day_count=int(header["day_count"]),
        )
    except ValueError as e:
        raise CorpusFormatError(str(e))


def _record_json(g: LabeledGraph) -> str:
    # Field order is fixed so output is byte-stable.
    obj = {"id": g.id, "day": g.day, "label": g.class_label}
    if g.family is not None:
        obj["family"] = g.family
    obj["nodes"] = [[nid, lbl] for nid, lbl in g.nodes]
    obj["edges"] = [[s, d] for s, d in g.edges]
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def write_corpus(corpus: Corpus, sink: IO) -> None:
    """Write a corpus; ``parse_corpus`` on the result reproduces it exactly."""
    header = json.dumps(
        {"name": corpus.name, "day_count": corpus.day_count},
        separators=(",", ":"),
        ensure_ascii=True,
    )
    out = header + "\n" + "".join(_record_json(g) + "\n" for g in corpus.graphs)
    try:
        sink.write(out)
    except TypeError:
        sink.write(out.encode("utf-8"))


def corpus_to_bytes(corpus: Corpus) -> bytes:
    import io

    buf = io.BytesIO()
    write_corpus(corpus, buf)
    return buf.getvalue()


def corpus_from_bytes(data: bytes) -> Corpus:
    import io

    return parse_corpus(io.BytesIO(data))


def sort_by_day(corpus: Corpus) -> Corpus:
    """Stable sort by (day, id); the stream feed order."""
    ordered = tuple(sorted(corpus.graphs, key=lambda g: (g.day, g.id)))
    return Corpus(graphs=ordered, name=corpus.name, day_count=corpus.day_count)


def load_corpus(path) -> Corpus:
    with open(path, "rb") as f:
        return parse_corpus(f)


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "wb") as f:
        write_corpus(corpus, f)
