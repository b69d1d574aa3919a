"""Text serialization for matrices, vectors, and key=value config files.

Matrix format: first line "rows cols", then one line per row with
space-separated complex entries. Each entry is rendered "a+bi" / "a-bi"
with 17 significant digits, e.g. "1.5000000000000000e+00-2.5000000000000000e-01i".
Vectors are stored as rows-by-1 matrices.
"""

import os

import numpy as np

from .errors import MatrixFormatError


def format_complex(z):
    """Render one complex scalar as a+bi with 17 significant digits."""
    z = complex(z)
    return f"{z.real:.16e}{z.imag:+.16e}i"


def parse_complex(token, path=None, line=None):
    """Parse one a+bi token; raises MatrixFormatError on malformed input."""
    if not token.endswith("i"):
        raise MatrixFormatError(f"entry {token!r} does not end in 'i'", path, line)
    try:
        value = complex(token[:-1] + "j")
    except ValueError:
        raise MatrixFormatError(f"cannot parse entry {token!r}", path, line) from None
    if not (np.isfinite(value.real) and np.isfinite(value.imag)):
        raise MatrixFormatError(f"non-finite entry {token!r}", path, line)
    return value


def dump_matrix(M):
    """Serialize a 2-D complex array to the text format."""
    M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    rows, cols = M.shape
    lines = [f"{rows} {cols}"]
    for r in range(rows):
        lines.append(" ".join(format_complex(z) for z in M[r]))
    return "\n".join(lines) + "\n"


def save_matrix(path, M):
    with open(path, "w") as fh:
        fh.write(dump_matrix(M))


def load_matrix(path):
    with open(path) as fh:
        raw = fh.read()
    return parse_matrix(raw, path=str(path))


def parse_matrix(text, path=None):
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise MatrixFormatError("missing header line", path, 1)
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixFormatError(f"header must be 'rows cols', got {lines[0]!r}", path, 1)
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixFormatError(f"non-integer header {lines[0]!r}", path, 1) from None
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"dimensions must be positive, got {rows}x{cols}", path, 1)
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != rows:
        raise MatrixFormatError(f"expected {rows} data rows, found {len(body)}", path, 1)
    M = np.empty((rows, cols), dtype=np.complex128)
    for r, ln in enumerate(body):
        tokens = ln.split()
        if len(tokens) != cols:
            raise MatrixFormatError(
                f"expected {cols} entries, found {len(tokens)}", path, r + 2
            )
        for c, tok in enumerate(tokens):
            M[r, c] = parse_complex(tok, path, r + 2)
    return M


def save_vector(path, x):
    x = np.asarray(x, dtype=np.complex128).reshape(-1, 1)
    save_matrix(path, x)


def load_vector(path):
    M = load_matrix(path)
    if M.shape[1] != 1:
        raise MatrixFormatError(f"expected a rows x 1 vector, got {M.shape}", str(path), 1)
    return M[:, 0]


def format_kv(pairs):
    """Render an ordered mapping as 'key = value' lines."""
    return "".join(f"{k} = {v}\n" for k, v in pairs.items())


def parse_kv(text, path=None):
    """Parse 'key = value' lines; blank lines and '#' comments ignored."""
    out = {}
    for i, ln in enumerate(text.splitlines(), start=1):
        stripped = ln.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise MatrixFormatError(f"expected 'key = value', got {ln!r}", path, i)
        key, _, value = stripped.partition("=")
        out[key.strip()] = value.strip()
    return out


def load_kv(path):
    with open(path) as fh:
        return parse_kv(fh.read(), path=str(path))


def save_kv(path, pairs):
    with open(path, "w") as fh:
        fh.write(format_kv(pairs))


def ensure_dir(path):
    os.makedirs(path, exist_ok=True)
    return path
