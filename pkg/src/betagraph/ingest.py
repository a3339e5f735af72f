"""Reading and writing matrices and parameter estimates.

Matrix files are comma-separated, one matrix row per line, with an optional
first line of vertex labels.  ``weights`` files must describe a valid
:class:`~betagraph.model.EdgeWeightMatrix`; ``counts`` files hold nonnegative
flows (for instance migrant counts) that :func:`normalize_counts` maps into
``(0, 1)``.
"""
import csv
import math
import os
import tempfile
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStatsError, IngestError, ValidationError
from .model import EdgeWeightMatrix, Params

__all__ = [
    "RawFlowMatrix",
    "load_matrix",
    "save_matrix",
    "normalize_counts",
    "write_params",
    "read_params",
    "atomic_write",
]

FORMATS = ("weights", "counts")


@dataclass(frozen=True)
class RawFlowMatrix:
    """Nonnegative flow matrix; the diagonal is ignored."""

    x: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        if x.ndim != 2 or x.shape[0] != x.shape[1]:
            raise ValidationError(f"flow matrix must be square, got shape {x.shape}")
        n = x.shape[0]
        if n < 2:
            raise ValidationError("flow matrix needs at least 2 entities")
        off = ~np.eye(n, dtype=bool)
        bad = off & ~(np.isfinite(x) & (x >= 0))
        if bad.any():
            i, j = (int(k) for k in np.argwhere(bad)[0])
            raise ValidationError(
                f"count at ({i + 1},{j + 1}) is {x[i, j]!r}, must be finite and >= 0",
                index=(i + 1, j + 1),
            )
        np.fill_diagonal(x, 0.0)
        x.setflags(write=False)
        object.__setattr__(self, "x", x)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n or len(set(labels)) != n:
                raise ValidationError(f"labels must be {n} unique strings")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self):
        return self.x.shape[0]


def _parse_float(cell):
    try:
        return float(cell)
    except ValueError:
        return None


def _read_rows(path):
    with open(path, newline="") as fh:
        rows = [(lineno, row) for lineno, row in enumerate(csv.reader(fh), start=1)]
    return [(k, [c.strip() for c in row]) for k, row in rows if any(c.strip() for c in row)]


def load_matrix(path, format="weights"):
    """Load a square matrix from CSV.

    Returns an :class:`EdgeWeightMatrix` for ``format="weights"`` and a
    :class:`RawFlowMatrix` for ``format="counts"``.  In weights mode a nonzero
    diagonal is replaced by zeros with a warning.

    Raises :class:`IngestError` (with ``line`` and ``column``) on malformed
    text and :class:`ValidationError` on invariant violations.
    """
    if format not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {format!r}")
    rows = _read_rows(path)
    if not rows:
        raise IngestError(f"{path}: empty file")

    labels = None
    first_line, first = rows[0]
    if any(_parse_float(c) is None for c in first):
        labels = first
        rows = rows[1:]

    n = len(labels) if labels is not None else len(rows[0][1]) if rows else 0
    if len(rows) != n:
        raise IngestError(f"{path}: expected {n} data rows, found {len(rows)}")
    values = np.empty((n, n))
    for r, (lineno, row) in enumerate(rows):
        if len(row) != n:
            raise IngestError(
                f"{path}: line {lineno} has {len(row)} columns, expected {n}",
                line=lineno,
            )
        for c, cell in enumerate(row):
            v = _parse_float(cell)
            if v is None or math.isnan(v):
                raise IngestError(
                    f"{path}: line {lineno}, column {c + 1}: cannot parse {cell!r}",
                    line=lineno,
                    column=c + 1,
                )
            values[r, c] = v

    if format == "counts":
        return RawFlowMatrix(values, labels)
    diag = np.diag(values)
    if np.any(diag != 0):
        warnings.warn(f"{path}: nonzero diagonal entries set to 0", stacklevel=2)
        np.fill_diagonal(values, 0.0)
    return EdgeWeightMatrix(values, labels)


def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _format_matrix(values, labels):
    lines = []
    if labels is not None:
        lines.append(",".join(labels))
    for row in values:
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def save_matrix(path, matrix, labels=None):
    """Write a matrix (or EdgeWeightMatrix / RawFlowMatrix) with 17 significant digits."""
    if isinstance(matrix, EdgeWeightMatrix):
        labels = labels or matrix.labels
        values = matrix.w
    elif isinstance(matrix, RawFlowMatrix):
        labels = labels or matrix.labels
        values = matrix.x
    else:
        values = np.asarray(matrix, dtype=float)
    atomic_write(path, _format_matrix(values, labels))


def normalize_counts(raw):
    """Map flows to weights via ``w_ij = (x_ij + 1/2) / (max x + 1)``.

    Zeros and the maximum both land strictly inside (0, 1) and the order of
    the entries is preserved.  The offset makes the map depend on the scale
    of the counts.
    """
    n = raw.n
    off = ~np.eye(n, dtype=bool)
    xmax = raw.x[off].max()
    if not xmax > 0:
        raise DegenerateStatsError("all off-diagonal counts are zero")
    w = np.zeros((n, n))
    w[off] = (raw.x[off] + 0.5) / (xmax + 1.0)
    return EdgeWeightMatrix(w, raw.labels)


_REPORT_KEYS = ("iterations", "final_residual", "jacobian_l1", "M", "epsilon", "converged")


def format_params(theta, labels=None, report=None):
    labels = labels or [str(i + 1) for i in range(theta.n)]
    lines = ["label,a_hat,b_hat"]
    for lab, a, b in zip(labels, theta.a, theta.b):
        lines.append(f"{lab},{a:.17g},{b:.17g}")
    if report is not None:
        lines.append("")
        lines.append("[report]")
        for key in _REPORT_KEYS:
            value = getattr(report, key)
            if isinstance(value, float):
                value = f"{value:.17g}"
            lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def write_params(path, theta, labels=None, report=None):
    """Write one ``label,a_hat,b_hat`` line per vertex plus a ``[report]`` block."""
    atomic_write(path, format_params(theta, labels, report))


def read_params(path):
    """Inverse of :func:`write_params`: returns ``(labels, Params, report_dict)``."""
    labels, a, b = [], [], []
    report = {}
    in_report = False
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line == "label,a_hat,b_hat":
                continue
            if line == "[report]":
                in_report = True
                continue
            if in_report:
                key, _, value = line.partition("=")
                report[key.strip()] = value.strip()
                continue
            parts = line.rsplit(",", 2)
            if len(parts) != 3:
                raise IngestError(f"{path}: line {lineno}: expected label,a_hat,b_hat", line=lineno)
            labels.append(parts[0])
            a.append(float(parts[1]))
            b.append(float(parts[2]))
    return labels, Params(a, b), report
