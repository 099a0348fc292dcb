"""CSV encoding of convergence sweeps."""

import csv
import io
from collections.abc import Iterable

from pytutte.domain.models.embedding import SweepRow

SWEEP_HEADER = ("delta", "norm", "is_embedding")


def serialize_sweep(rows: Iterable[SweepRow]) -> str:
    """
    Encode sweep rows as CSV with a header line.

    Floats are written with ``repr`` so the file reproduces the computed values exactly.

    Args:
        rows: Sweep rows in the order they were computed.

    Returns:
        The CSV text; a header only when there are no rows.

    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow((repr(row.delta), repr(row.norm), "true" if row.is_embedding else "false"))
    return buffer.getvalue()
