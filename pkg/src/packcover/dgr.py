"""The "dgr" text format: `n m` header, then m `tail head` lines, `#` comments."""

from .digraph import Digraph


class DgrFormatError(ValueError):
    """Malformed dgr input."""


def parse_dgr(text: str) -> Digraph:
    """Parse dgr text. Repeated arc lines are parallel arcs; loops are rejected."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise DgrFormatError("empty input: missing `n m` header")
    header_line, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise DgrFormatError(f"line {header_line}: header must be `n m`, got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise DgrFormatError(f"line {header_line}: header must be two integers") from None
    if n < 0 or m < 0:
        raise DgrFormatError(f"line {header_line}: n and m must be nonnegative")
    body = rows[1:]
    if len(body) != m:
        raise DgrFormatError(f"expected {m} arc lines, found {len(body)}")
    arcs = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise DgrFormatError(f"line {lineno}: arc line must be `tail head`, got {line!r}")
        try:
            t, h = int(parts[0]), int(parts[1])
        except ValueError:
            raise DgrFormatError(f"line {lineno}: arc line must be two integers") from None
        if not (0 <= t < n) or not (0 <= h < n):
            raise DgrFormatError(f"line {lineno}: arc ({t},{h}) out of range for n={n}")
        if t == h:
            raise DgrFormatError(f"line {lineno}: loop arc ({t},{t}) rejected")
        arcs.append((t, h))
    return Digraph(n, tuple(arcs))


def format_dgr(g: Digraph) -> str:
    """Serialize; parse(format(g)) preserves n and the arc sequence exactly."""
    lines = [f"{g.n} {len(g.arcs)}"]
    lines.extend(f"{t} {h}" for t, h in g.arcs)
    return "\n".join(lines) + "\n"


def load_digraph(path) -> Digraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dgr(fh.read())


def save_digraph(g: Digraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_dgr(g))
