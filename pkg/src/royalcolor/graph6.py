"""graph6 codec (dense format only, as written by nauty's geng/showg)."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .graphs import Graph

HEADER = ">>graph6<<"
MAX_ORDER = 258047


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"graph6 parse error at byte {offset}: {message}")
        self.detail = message
        self.offset = offset


def _decode_order(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty input", 0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) < 4:
        raise Graph6Error("truncated long order field", len(data))
    if data[1] == 126:
        # 36-bit form: ~~ followed by six bytes
        if len(data) < 8:
            raise Graph6Error("truncated long order field", len(data))
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def _encode_order(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= MAX_ORDER:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise ValueError(f"order {n} exceeds graph6 limit {MAX_ORDER}")


def parse_graph6(line: str | bytes) -> "Graph":
    from .graphs import Graph

    data = line.encode("ascii", errors="replace") if isinstance(line, str) else bytes(line)
    start = 0
    if data.startswith(HEADER.encode()):
        start = len(HEADER)
    data = data.rstrip(b"\r\n")
    body = data[start:]
    for i, b in enumerate(body):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside graph6 alphabet", start + i)
    n, pos = _decode_order(body)
    if n < 1 or n > MAX_ORDER:
        raise Graph6Error(f"order {n} out of supported range 1..{MAX_ORDER}", start)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    got = len(body) - pos
    if got < need:
        raise Graph6Error(f"truncated body: expected {need} bytes, got {got}", start + len(body))
    if got > need:
        raise Graph6Error(f"trailing data after {need} body bytes", start + pos + need)
    edges = []
    bit = 0
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    for v in range(1, n):
        for u in range(v):
            byte = body[pos + bit // 6] - 63
            if (byte >> (5 - bit % 6)) & 1:
                edges.append((u, v))
            bit += 1
    if nbits % 6:
        last = body[pos + need - 1] - 63
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise Graph6Error("nonzero padding bits", start + pos + need - 1)
    return Graph(n, edges)


def encode_graph6(g: "Graph") -> str:
    out = bytearray(_encode_order(g.n))
    adj = g.adjacency_sets
    acc = 0
    nb = 0
    for v in range(1, g.n):
        for u in range(v):
            acc = (acc << 1) | (1 if u in adj[v] else 0)
            nb += 1
            if nb == 6:
                out.append(acc + 63)
                acc = nb = 0
    if nb:
        out.append((acc << (6 - nb)) + 63)
    return out.decode("ascii")


def read_graph6_lines(lines) -> list["Graph"]:
    """Parse every non-blank line; errors carry the 1-based line number."""
    graphs = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        try:
            graphs.append(parse_graph6(line))
        except Graph6Error as exc:
            raise Graph6Error(f"{exc.detail} (line {lineno})", exc.offset) from None
    return graphs
