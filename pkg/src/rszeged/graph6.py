"""graph6 encoding and decoding, bit-exact with the format used by nauty/geng.

Layout: a size header (one byte ``n + 63`` for ``n <= 62``; ``126`` plus three
6-bit groups for ``n <= 258047``; ``126 126`` plus six groups beyond), then the
upper triangle of the adjacency matrix in column-major order
(``(0,1), (0,2), (1,2), (0,3), ...``), padded with zero bits to a multiple of
six and written as 6-bit groups offset by 63.
"""

from __future__ import annotations

from typing import IO, Iterable, Iterator, Union

from .graph import Graph, build_graph

HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_size(n: int) -> bytes:
    if n < 0:
        raise Graph6Error(f"negative order {n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error(f"order {n} too large for graph6")


def _decode_size(data: bytes) -> tuple[int, int]:
    """Return ``(n, header_length)``."""
    if not data:
        raise Graph6Error("empty graph6 string")
    for b in data[:8]:
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} outside the printable graph6 range")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte size header")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 4-byte size header")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def encode(g: Graph) -> bytes:
    n = g.n
    nbits = n * (n - 1) // 2
    body = bytearray((nbits + 5) // 6)
    for u, v in g.edges:
        # column-major index of (u, v), u < v
        k = v * (v - 1) // 2 + u
        body[k // 6] |= 1 << (5 - k % 6)
    for i in range(len(body)):
        body[i] += 63
    return _encode_size(n) + bytes(body)


def decode(text: Union[bytes, str]) -> Graph:
    if isinstance(text, str):
        text = text.encode("ascii")
    data = text.rstrip(b"\r\n")
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    n, off = _decode_size(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[off:]
    if len(body) < need:
        raise Graph6Error(f"truncated body: order {n} needs {need} bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6Error(f"trailing garbage after {need} body bytes")
    edges = []
    for i, b in enumerate(body):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} outside the printable graph6 range")
        chunk = b - 63
        for bit in range(6):
            if chunk & (1 << (5 - bit)):
                idx = 6 * i + bit
                if idx >= nbits:
                    raise Graph6Error(f"padding bit {idx} set beyond the {nbits} adjacency bits")
                edges.append(idx)
    pairs = []
    # walk column-major indices in order
    v, base = 1, 0
    for idx in edges:
        while idx >= base + v:
            base += v
            v += 1
        pairs.append((idx - base, v))
    return build_graph(n, pairs)


def read_stream(fh: IO) -> Iterator[Graph]:
    """Decode a newline-delimited graph6 stream (text or binary), skipping blank lines."""
    for line in fh:
        if isinstance(line, str):
            line = line.encode("ascii")
        line = line.strip()
        if line:
            yield decode(line)


def write_stream(fh: IO, graphs: Iterable[Graph]) -> int:
    count = 0
    for g in graphs:
        fh.write(encode(g).decode("ascii") + "\n")
        count += 1
    return count
