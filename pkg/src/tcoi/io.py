"""Edge-list and graph6 readers/writers."""

from __future__ import annotations

from pathlib import Path

from .errors import InvalidInputError, ParseError
from .graph import Graph

GRAPH6_HEADER = ">>graph6<<"


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``.

    Blank lines and ``#`` comments are ignored. Errors carry 1-based line numbers.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty input", 1)
    lineno, head = rows[0]
    if len(head) != 2:
        raise ParseError("header must be 'n m'", lineno)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must contain two integers", lineno) from None
    if n < 0 or m < 0:
        raise ParseError("n and m must be non-negative", lineno)
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}", body[-1][0] if body else lineno)
    edges = []
    seen = set()
    for lineno, parts in body:
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) out of range for n={n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise InvalidInputError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    bits = []
    for j in range(1, g.n):
        mask = g.masks[j]
        bits.extend(mask >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return (GRAPH6_HEADER if header else "") + _encode_n(g.n) + body


def from_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise ParseError("empty graph6 string")
    vals = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in vals):
        raise ParseError("graph6 characters must lie in '?'..'~'")
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) > 1 and vals[1] == 63:
        if len(vals) < 8:
            raise ParseError("truncated graph6 size field")
        n, pos = 0, 8
        for x in vals[2:8]:
            n = (n << 6) | x
    else:
        if len(vals) < 4:
            raise ParseError("truncated graph6 size field")
        n, pos = 0, 4
        for x in vals[1:4]:
            n = (n << 6) | x
    need = n * (n - 1) // 2
    data = vals[pos:]
    if len(data) != (need + 5) // 6:
        raise ParseError(f"graph6 body has {len(data)} bytes, expected {(need + 5) // 6}")
    bits = []
    for x in data:
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    if any(bits[need:]):
        raise ParseError("nonzero graph6 padding bits")
    return Graph(n, edges)


def read_graph(path: str | Path) -> Graph:
    """Read a graph file, sniffing graph6 vs edge-list format."""
    text = Path(path).read_text()
    return parse_graph_text(text, suffix=Path(path).suffix)


def parse_graph_text(text: str, suffix: str = "") -> Graph:
    stripped = text.strip()
    if suffix in (".g6", ".graph6") or stripped.startswith(GRAPH6_HEADER):
        lines = [ln for ln in stripped.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ParseError("expected exactly one graph6 line")
        return from_graph6(lines[0])
    first = stripped.splitlines()[0].split() if stripped else []
    if len(first) == 1 and not first[0].lstrip("-").isdigit():
        return from_graph6(stripped)
    return parse_edge_list(text)


def read_graphs(path: str | Path) -> list[Graph]:
    """Read one edge-list graph, or every line of a graph6 file."""
    path = Path(path)
    text = path.read_text()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    graph6 = path.suffix in (".g6", ".graph6") or (lines and lines[0].startswith(GRAPH6_HEADER))
    if not graph6 and lines and len(lines[0].split()) == 1 and not lines[0].lstrip("-").isdigit():
        graph6 = True
    if not graph6:
        return [parse_edge_list(text)]
    out = []
    for i, line in enumerate(lines, start=1):
        try:
            out.append(from_graph6(line))
        except ParseError as exc:
            raise ParseError(exc.args[0] if exc.line is None else str(exc), i) from None
    return out


def write_graph(g: Graph, path: str | Path) -> None:
    path = Path(path)
    if path.suffix in (".g6", ".graph6"):
        path.write_text(to_graph6(g) + "\n")
    else:
        path.write_text(format_edge_list(g))


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
