"""graph6 encoding for graphs of order at most 64.

Bit layout: upper triangle in column order (0,1),(0,2),(1,2),(0,3),...,
packed big-endian six bits per byte, each byte offset by 63. Orders up to 62
use a one-byte header, 63 and 64 the ``~`` plus three-byte form.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import CapacityError, Graph6Error
from .graph import MAX_ORDER, Graph, bool_rows_to_masks

HEADER = b">>graph6<<"
_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.int64)
_SHIFTS = np.arange(5, -1, -1, dtype=np.uint8)
# below this order plain integer loops beat array set-up
_SCALAR_MAX = 12


def _encode_order(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])


def _pack_small(g: Graph) -> bytes:
    out = bytearray()
    acc = nbits = 0
    for v in range(1, g.n):
        row = g.adj[v]
        for u in range(v):
            acc = acc << 1 | (row >> u & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def write_graph6(g: Graph) -> bytes:
    """graph6 bytes for ``g`` (no header, no trailing newline)."""
    n = g.n
    head = _encode_order(n)
    if n <= _SCALAR_MAX:
        return head + _pack_small(g)
    rows = np.array(g.adj, dtype=np.uint64)
    bits = (rows[:, None] >> np.arange(n, dtype=np.uint64)) & np.uint64(1)
    # lower triangle row by row is (0,1), (0,2), (1,2), (0,3), ... in graph6 order
    seq = bits[np.tril_indices(n, -1)].astype(np.uint8)
    seq = np.concatenate([seq, np.zeros(-seq.size % 6, dtype=np.uint8)])
    return head + (seq.reshape(-1, 6) @ _WEIGHTS + 63).astype(np.uint8).tobytes()


def parse_graph6(text: bytes | str, line: int | None = None) -> Graph:
    """Decode one graph6 record; raises :class:`Graph6Error` on malformed input."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if not data:
        raise Graph6Error("empty record", line)
    if any(c < 63 or c > 126 for c in data):
        raise Graph6Error("byte outside the printable range 63..126", line)

    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    else:
        if len(data) >= 2 and data[1] == 126:
            raise CapacityError(f"{'line %d: ' % line if line else ''}order > {MAX_ORDER}")
        if len(data) < 4:
            raise Graph6Error("malformed length header", line)
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        body = data[4:]
        if n > MAX_ORDER:
            raise CapacityError(f"{'line %d: ' % line if line else ''}order {n} > {MAX_ORDER}")
        if n <= 62:
            raise Graph6Error("malformed length header (long form used for order <= 62)", line)

    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(
            f"malformed length header: order {n} needs {(nbits + 5) // 6} data bytes, got {len(body)}",
            line,
        )
    if n < 2:
        return Graph._trusted(n, [0] * n)
    x = np.frombuffer(body, dtype=np.uint8) - 63
    bits = ((x[:, None] >> _SHIFTS) & 1).astype(bool).ravel()
    if bits[nbits:].any():
        raise Graph6Error("trailing bits nonzero", line)
    a = np.zeros((n, n), dtype=bool)
    a[np.tril_indices(n, -1)] = bits[:nbits]
    adj = bool_rows_to_masks(a | a.T)
    return Graph._trusted(n, adj)


def read_graph6_lines(
    lines: Iterable[bytes | str], lenient: bool = False, errors: list | None = None
) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for each non-blank line.

    With ``lenient`` malformed lines are skipped and ``(line_number, message)``
    is appended to ``errors``; otherwise the first bad line raises.
    """
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            yield lineno, parse_graph6(raw, line=lineno)
        except (Graph6Error, CapacityError) as exc:
            if not lenient:
                raise
            if errors is not None:
                errors.append((lineno, str(exc)))


def read_graph6_file(path: str | Path, lenient: bool = False, errors: list | None = None) -> Iterator[tuple[int, Graph]]:
    with open(path, "rb") as fh:
        yield from read_graph6_lines(fh, lenient=lenient, errors=errors)


def write_graph6_file(path: str | Path, graphs: Iterable[Graph]) -> int:
    count = 0
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + b"\n")
            count += 1
    return count
