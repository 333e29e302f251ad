"""CSV matrix files and weighted family directories.

Matrix format: an optional header line ``# rows=R cols=C`` followed by R
comma-separated rows of decimals.  Values are written with 12 significant
digits so that rewriting a parsed file is byte-stable.

A family directory holds one ``.csv`` per member (ordered by file name)
and an optional ``weights.txt`` of ``index weight`` lines, 0-based against
that order; missing weights mean uniform sampling.
"""

import re
from pathlib import Path

import numpy as np

from .stochastic import MatrixFamily

_HEADER = re.compile(r"#\s*rows=(\d+)\s+cols=(\d+)\s*$")


class ParseError(ValueError):
    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


def format_value(x):
    return "%.12g" % float(x)


def write_matrix(path, m):
    m = np.asarray(m, dtype=float)
    lines = ["# rows=%d cols=%d" % m.shape]
    for row in m:
        lines.append(",".join(format_value(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path):
    path = Path(path)
    rows = []
    expected = None
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m:
                expected = (int(m.group(1)), int(m.group(2)))
            continue
        try:
            rows.append([float(tok) for tok in line.split(",")])
        except ValueError as exc:
            raise ParseError(path, lineno, f"bad number: {exc}") from None
        if len(rows) > 1 and len(rows[-1]) != len(rows[0]):
            raise ParseError(path, lineno, "ragged row")
    if not rows:
        raise ParseError(path, 0, "no data rows")
    a = np.array(rows, dtype=float)
    if expected is not None and a.shape != expected:
        raise ParseError(path, 0, f"header says {expected}, found {a.shape}")
    return a


def read_weights(path):
    path = Path(path)
    weights = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(path, lineno, "expected 'index weight'")
        try:
            weights[int(parts[0])] = float(parts[1])
        except ValueError as exc:
            raise ParseError(path, lineno, str(exc)) from None
    return weights


def load_family(dirpath, tol=1e-3):
    """Load a MatrixFamily from a directory of member CSVs.

    Members are renormalized by row after a loose validation, matching how
    printed matrices are ingested elsewhere.
    """
    from .stochastic import ingest_rounded

    dirpath = Path(dirpath)
    files = sorted(p for p in dirpath.iterdir() if p.suffix == ".csv")
    if not files:
        raise ParseError(dirpath, 0, "no member CSVs found")
    members = [ingest_rounded(read_matrix(p), tol=tol) for p in files]
    weights_file = dirpath / "weights.txt"
    weights = None
    if weights_file.exists():
        table = read_weights(weights_file)
        missing = set(range(len(members))) - set(table)
        if missing:
            raise ParseError(weights_file, 0, f"no weight for members {sorted(missing)}")
        weights = [table[i] for i in range(len(members))]
    return MatrixFamily(members, weights)
