"""On-disk container for graph tensors.

A dataset directory holds

* ``graphs.bin``: concatenated per-molecule records,
* ``index.tsv``: ``cid<TAB>offset<TAB>nbytes`` for every record,
* ``meta.json``: format version, graph kind, hydrogen mode, feature names.

Each record starts with five little-endian int64 values
``n_nodes, node_dim, n_edges, edge_dim, has_positions`` followed by the
row-major float64 node matrix, the int64 ``n_edges x 2`` edge list, the
float64 edge-feature matrix (``edge_dim`` may be 0) and, when present,
the float64 ``n_nodes x 3`` positions.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .graph import EDGE_FEATURE_NAMES, NODE_FEATURE_NAMES, GraphTensor

FORMAT_VERSION = 1
_HEADER = np.dtype("<i8")
_F = np.dtype("<f8")


def encode_graph(g: GraphTensor) -> bytes:
    n, nd = g.node_features.shape
    e = g.edges.shape[0]
    ed = 0 if g.edge_features is None else g.edge_features.shape[1]
    has_pos = 0 if g.positions is None else 1
    parts = [
        np.array([n, nd, e, ed, has_pos], dtype=_HEADER).tobytes(),
        np.ascontiguousarray(g.node_features, dtype=_F).tobytes(),
        np.ascontiguousarray(g.edges, dtype=_HEADER).tobytes(),
    ]
    if ed:
        parts.append(np.ascontiguousarray(g.edge_features, dtype=_F).tobytes())
    if has_pos:
        parts.append(np.ascontiguousarray(g.positions, dtype=_F).tobytes())
    return b"".join(parts)


def decode_graph(buf: bytes) -> GraphTensor:
    n, nd, e, ed, has_pos = np.frombuffer(buf, dtype=_HEADER, count=5)
    off = 5 * 8

    def take(dtype, count, shape):
        nonlocal off
        arr = np.frombuffer(buf, dtype=dtype, count=count, offset=off).reshape(shape).copy()
        off += count * dtype.itemsize
        return arr

    nodes = take(_F, n * nd, (n, nd))
    edges = take(_HEADER, e * 2, (e, 2))
    ef = take(_F, e * ed, (e, ed)) if ed else None
    pos = take(_F, n * 3, (n, 3)) if has_pos else None
    return GraphTensor(nodes, edges, ef, pos)


def write_graph_store(
    directory: str | Path, graphs: Iterable[tuple[object, GraphTensor]], *, kind: str, hydrogens: str
) -> int:
    """Write ``(cid, graph)`` pairs; returns the number of records."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    count = 0
    offset = 0
    with open(d / "graphs.bin", "wb") as data, open(d / "index.tsv", "w") as index:
        index.write("cid\toffset\tnbytes\n")
        for cid, g in graphs:
            blob = encode_graph(g)
            data.write(blob)
            index.write(f"{cid}\t{offset}\t{len(blob)}\n")
            offset += len(blob)
            count += 1
    meta = {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "hydrogens": hydrogens,
        "records": count,
        "node_features": list(NODE_FEATURE_NAMES),
        "edge_features": list(EDGE_FEATURE_NAMES) if kind == "2d" else [],
    }
    (d / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    return count


def read_index(directory: str | Path) -> dict[str, tuple[int, int]]:
    out = {}
    with open(Path(directory) / "index.tsv") as fh:
        next(fh)
        for line in fh:
            cid, off, nbytes = line.rstrip("\n").split("\t")
            out[cid] = (int(off), int(nbytes))
    return out


def read_graph(directory: str | Path, cid) -> GraphTensor:
    off, nbytes = read_index(directory)[str(cid)]
    with open(Path(directory) / "graphs.bin", "rb") as fh:
        fh.seek(off)
        return decode_graph(fh.read(nbytes))


def iter_graph_store(directory: str | Path) -> Iterator[tuple[str, GraphTensor]]:
    index = read_index(directory)
    with open(Path(directory) / "graphs.bin", "rb") as fh:
        for cid, (off, nbytes) in index.items():
            fh.seek(off)
            yield cid, decode_graph(fh.read(nbytes))
