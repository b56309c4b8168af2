"""Text formats: edge lists, bipartite pair lists, size lists and clustering profiles.

Graph and bipartite files hold one record per line, two labels separated by
whitespace or a comma; ``#`` starts a comment. A line with a single label
declares a vertex without edges (or with an empty attribute set). Files
written by this package start with ``# clusterfn {json}`` carrying the kind
of data and the generation parameters.
"""

from __future__ import annotations

import io
import json
import re
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .clustering import ClusteringProfile, PairHistogram
from .graph import BipartiteIncidence, Graph, GraphError, build_graph, build_incidence

HEADER_TAG = "# clusterfn "
PROFILE_COLUMNS = ("r", "total_pairs", "adjacent_pairs", "cl", "Cl")
_SPLIT = re.compile(r"[,\s]+")


class DataError(ValueError):
    """Malformed input data."""


@contextmanager
def _open_text(path, mode="r"):
    if path in ("-", None):
        stream = sys.stdin if "r" in mode else sys.stdout
        yield stream
        if "w" in mode:
            stream.flush()
    elif isinstance(path, io.IOBase):
        yield path
    else:
        with open(path, mode, encoding="utf-8", newline="\n") as fh:
            yield fh


def _records(fh, meta: dict):
    """Yield ``(line_number, fields)`` for non-comment lines; header metadata goes into ``meta``."""
    for lineno, line in enumerate(fh, 1):
        if line.startswith(HEADER_TAG):
            try:
                meta.update(json.loads(line[len(HEADER_TAG):]))
            except json.JSONDecodeError as exc:
                raise DataError(f"line {lineno}: unreadable metadata header") from exc
            continue
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        fields = [f for f in _SPLIT.split(body) if f]
        if len(fields) not in (1, 2):
            raise DataError(f"line {lineno}: expected one or two labels, got {len(fields)}")
        yield lineno, fields


def read_metadata(path) -> dict:
    """The ``# clusterfn`` header of a file, or ``{}``."""
    with _open_text(path) as fh:
        first = fh.readline()
    if first.startswith(HEADER_TAG):
        return json.loads(first[len(HEADER_TAG):])
    return {}


class _Labeler:
    def __init__(self):
        self.ids: dict[str, int] = {}
        self.labels: list[str] = []

    def __call__(self, label: str) -> int:
        i = self.ids.get(label)
        if i is None:
            i = self.ids[label] = len(self.labels)
            self.labels.append(label)
        return i


def parse_edge_list(lines, *, allow_self_loops: bool = False) -> tuple[Graph, dict]:
    vid = _Labeler()
    edges = []
    meta: dict = {}
    for lineno, fields in _records(lines, meta):
        ids = [vid(f) for f in fields]
        if len(ids) == 2:
            if ids[0] == ids[1] and not allow_self_loops:
                raise DataError(f"line {lineno}: self-loop at {fields[0]!r}")
            edges.append(ids)
    if not vid.labels:
        raise DataError("no vertices in input")
    try:
        g = build_graph(len(vid.labels), edges, allow_self_loops=allow_self_loops, labels=vid.labels)
    except GraphError as exc:
        raise DataError(str(exc)) from exc
    return g, meta


def read_edge_list(path, *, allow_self_loops: bool = False) -> Graph:
    """Read an edge list; labels are numbered in first-seen order (kept in ``Graph.labels``)."""
    with _open_text(path) as fh:
        return parse_edge_list(fh, allow_self_loops=allow_self_loops)[0]


def parse_bipartite(lines) -> tuple[BipartiteIncidence, dict]:
    vid, aid = _Labeler(), _Labeler()
    pairs = []
    meta: dict = {}
    for lineno, fields in _records(lines, meta):
        v = vid(fields[0])
        if len(fields) == 2:
            pairs.append((v, aid(fields[1])))
    if not vid.labels:
        raise DataError("no vertices in input")
    inc = build_incidence(len(vid.labels), len(aid.labels), pairs,
                          vertex_labels=vid.labels, attribute_labels=aid.labels)
    return inc, meta


def read_bipartite(path) -> BipartiteIncidence:
    """Read ``vertex attribute`` pairs into an incidence with dense ids for both sides."""
    with _open_text(path) as fh:
        return parse_bipartite(fh)[0]


def bipartite_summary(inc: BipartiteIncidence) -> dict:
    """``n``, ``m``, ``M`` and the multisets of set sizes ``a_i`` and attribute degrees ``b_j``."""
    a, b = inc.set_sizes, inc.attribute_degrees
    av, ac = np.unique(a, return_counts=True)
    bv, bc = np.unique(b, return_counts=True)
    return {
        "n": inc.n,
        "m": inc.m,
        "M": inc.total_links,
        "a": {int(v): int(c) for v, c in zip(av, ac)},
        "b": {int(v): int(c) for v, c in zip(bv, bc)},
    }


def _header(meta: dict | None) -> str:
    if not meta:
        return ""
    return HEADER_TAG + json.dumps(meta, sort_keys=True) + "\n"


def write_edge_list(g: Graph, path, metadata: dict | None = None) -> None:
    """Write edges ``u v`` (labels when present), plus one line per isolated vertex."""
    lab = g.labels if g.labels is not None else [str(i) for i in range(g.n)]
    out = [_header(metadata)]
    e = g.edges()
    out.extend(f"{lab[u]} {lab[v]}\n" for u, v in e.tolist())
    out.extend(f"{lab[v]}\n" for v in np.flatnonzero(g.degrees == 0).tolist())
    with _open_text(path, "w") as fh:
        fh.write("".join(out))


def write_bipartite(inc: BipartiteIncidence, path, metadata: dict | None = None) -> None:
    """Write ``vertex attribute`` pairs, plus one line per vertex with an empty set."""
    vl = inc.vertex_labels or [str(i) for i in range(inc.n)]
    al = inc.attribute_labels or [str(j) for j in range(inc.m)]
    rows = np.repeat(np.arange(inc.n), inc.set_sizes)
    out = [_header(metadata)]
    out.extend(f"{vl[i]} {al[j]}\n" for i, j in zip(rows.tolist(), inc.indices.tolist()))
    out.extend(f"{vl[i]}\n" for i in np.flatnonzero(inc.set_sizes == 0).tolist())
    with _open_text(path, "w") as fh:
        fh.write("".join(out))


def read_sizes(path) -> np.ndarray:
    """Whitespace/comma separated nonnegative integers (comments allowed)."""
    values = []
    with _open_text(path) as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0]
            for tok in _SPLIT.split(body.strip()):
                if not tok:
                    continue
                try:
                    v = int(tok)
                except ValueError as exc:
                    raise DataError(f"line {lineno}: {tok!r} is not an integer") from exc
                if v < 0:
                    raise DataError(f"line {lineno}: negative size {v}")
                values.append(v)
    return np.array(values, dtype=np.int64)


def _ratio(x: float | None) -> str:
    return "" if x is None else format(x, ".12g")


def profile_rows(profile: ClusteringProfile) -> list[tuple]:
    h = profile.histogram
    return [(r, h.total[r], h.adjacent[r], profile.cl.get(r), profile.Cl.get(r))
            for r in range(h.max_r + 1)]


def format_profile_csv(profile: ClusteringProfile) -> str:
    lines = [_header(profile.metadata) + ",".join(PROFILE_COLUMNS)]
    for r, t, a, cl, Cl in profile_rows(profile):
        lines.append(f"{r},{t},{a},{_ratio(cl)},{_ratio(Cl)}")
    return "\n".join(lines) + "\n"


def profile_to_dict(profile: ClusteringProfile) -> dict:
    h = profile.histogram
    return {
        "n": h.n,
        "num_edges": h.num_edges,
        "C": profile.C,
        "p_e": profile.p_e,
        "histogram": {"total": list(h.total), "adjacent": list(h.adjacent)},
        "rows": [dict(zip(PROFILE_COLUMNS, row)) for row in profile_rows(profile)],
        "metadata": profile.metadata,
    }


def profile_from_dict(d: dict) -> ClusteringProfile:
    h = PairHistogram(d["n"], d["num_edges"], tuple(d["histogram"]["total"]),
                      tuple(d["histogram"]["adjacent"]))
    cl = {row["r"]: row["cl"] for row in d["rows"] if row["cl"] is not None}
    Cl = {row["r"]: row["Cl"] for row in d["rows"] if row["Cl"] is not None}
    return ClusteringProfile(h, cl, Cl, d["C"], d["p_e"], d.get("metadata", {}))


def write_profile(profile: ClusteringProfile, path, format: str = "csv") -> None:
    """Write a profile as CSV (``r,total_pairs,adjacent_pairs,cl,Cl``) or JSON."""
    if format == "csv":
        text = format_profile_csv(profile)
    elif format == "json":
        text = json.dumps(profile_to_dict(profile), indent=1, sort_keys=True) + "\n"
    else:
        raise ValueError(f"unknown format {format!r}")
    with _open_text(path, "w") as fh:
        fh.write(text)


def read_profile_json(path) -> ClusteringProfile:
    if isinstance(path, (str, Path)) and path != "-":
        text = Path(path).read_text(encoding="utf-8")
    else:
        with _open_text(path) as fh:
            text = fh.read()
    return profile_from_dict(json.loads(text))
