"""Locale-independent CSV helpers and atomic file writes."""
import hashlib
import os
import tempfile

import numpy as np

from ._validation import check_matrix


def format_float(x):
    # repr gives the shortest round-tripping form and never depends on locale
    return repr(float(x))


def format_rows(rows):
    return "".join(",".join(format_float(v) for v in row) + "\n" for row in np.atleast_2d(rows))


def write_text_atomic(path, text):
    """Write ``text`` next to ``path`` then rename over it."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_matrix_csv(path, B):
    """Matrix to CSV: one row per line, no header."""
    write_text_atomic(path, format_rows(check_matrix(B)))


def read_matrix_csv(path):
    B = np.loadtxt(path, delimiter=",", comments="#", ndmin=2, dtype=float)
    return check_matrix(B, name=os.fspath(path))


def write_table_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else format_float(v) for v in row))
    write_text_atomic(path, "\n".join(lines) + "\n")


def file_digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()
