"""graph6 encoding, single-byte size field only (n <= 62)."""
from __future__ import annotations

from typing import Iterator

from .graph import Graph, GraphError

_MAX_SMALL = 62


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class Graph6LengthError(Graph6Error):
    pass


class Graph6ByteError(Graph6Error):
    pass


class Graph6TrailingError(Graph6Error):
    pass


def _upper_pairs(n: int) -> Iterator[tuple[int, int]]:
    # column-major order over the upper triangle
    for j in range(1, n):
        for i in range(j):
            yield i, j


def graph6_encode(g: Graph) -> bytes:
    if g.n > _MAX_SMALL:
        raise GraphError(f"graph6 size {g.n} needs a multi-byte header; only n <= {_MAX_SMALL} supported")
    bits = [1 if g.adj[i] >> j & 1 else 0 for i, j in _upper_pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = bytearray([g.n + 63])
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        out.append(value + 63)
    return bytes(out)


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.rstrip(b"\r\n")
    if not data:
        raise Graph6LengthError("empty graph6 record", 0)
    for offset, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6ByteError(f"byte value {byte} outside 63..126", offset)
    if data[0] == 126:
        raise Graph6LengthError(f"multi-byte size field not supported (n > {_MAX_SMALL})", 0)
    n = data[0] - 63
    npairs = n * (n - 1) // 2
    need = (npairs + 5) // 6
    body = data[1:]
    if len(body) < need:
        raise Graph6LengthError(f"truncated record: n={n} needs {need} data bytes, got {len(body)}", len(data))
    if len(body) > need:
        raise Graph6TrailingError("trailing bytes after graph6 record", 1 + need)
    rows = [0] * n
    pairs = _upper_pairs(n)
    for k, byte in enumerate(body):
        value = byte - 63
        for shift in range(5, -1, -1):
            index = 6 * k + 5 - shift
            bit = value >> shift & 1
            if index >= npairs:
                if bit:
                    raise Graph6ByteError("nonzero padding bits", 1 + k)
                continue
            i, j = next(pairs)
            if bit:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def read_graph6_file(path) -> Iterator[Graph]:
    """Yield graphs from a newline-delimited graph6 file, skipping blank lines."""
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line.startswith(b">>graph6<<"):
                line = line[len(b">>graph6<<"):]
            if line:
                yield graph6_decode(line)
