"""Plain-text netpbm reading and writing (PBM P1 and PGM P2).

Text variants are used on purpose: outputs are byte-stable and diffable
in tests.  Comments written directly after the magic number survive a
round trip, which lets image files carry their own grid metadata.
"""

from __future__ import annotations


def write_pbm(bits, comments=()) -> str:
    """P1 image from rows of 0/1 ints; 1 renders black."""
    rows = [list(r) for r in bits]
    height = len(rows)
    width = len(rows[0]) if rows else 0
    lines = ["P1"]
    lines.extend(f"# {c}" for c in comments)
    lines.append(f"{width} {height}")
    for r in rows:
        lines.append(" ".join(str(int(b)) for b in r))
    return "\n".join(lines) + "\n"


def write_pgm(pixels, maxval: int = 255, comments=()) -> str:
    """P2 image from rows of ints in [0, maxval]."""
    rows = [list(r) for r in pixels]
    height = len(rows)
    width = len(rows[0]) if rows else 0
    lines = ["P2"]
    lines.extend(f"# {c}" for c in comments)
    lines.append(f"{width} {height}")
    lines.append(str(maxval))
    for r in rows:
        lines.append(" ".join(str(int(p)) for p in r))
    return "\n".join(lines) + "\n"


def _tokens_and_comments(text: str):
    tokens: list[str] = []
    comments: list[str] = []
    for line in text.splitlines():
        if "#" in line:
            line, _, comment = line.partition("#")
            comments.append(comment.strip())
        tokens.extend(line.split())
    return tokens, comments


def read_netpbm(text: str):
    """Parse P1 or P2 text into (magic, width, height, maxval, rows, comments).

    maxval is 1 for P1.  Raises ValueError on anything else.
    """
    tokens, comments = _tokens_and_comments(text)
    if not tokens:
        raise ValueError("empty image file")
    magic = tokens[0]
    if magic == "P1":
        header_len = 3
        maxval = 1
    elif magic == "P2":
        header_len = 4
    else:
        raise ValueError(f"unsupported netpbm format {magic!r}")
    try:
        width, height = int(tokens[1]), int(tokens[2])
        if magic == "P2":
            maxval = int(tokens[3])
        values = [int(t) for t in tokens[header_len:]]
    except (IndexError, ValueError) as exc:
        raise ValueError(f"malformed {magic} file: {exc}") from exc
    if len(values) != width * height:
        raise ValueError(
            f"expected {width * height} samples, found {len(values)}"
        )
    if any(v < 0 or v > maxval for v in values):
        raise ValueError("sample outside 0..maxval")
    rows = [values[i * width : (i + 1) * width] for i in range(height)]
    return magic, width, height, maxval, rows, comments
