"""Atomic CSV/JSON writers with deterministic formatting.

Floats are rendered with ``repr`` (shortest round-trip form), so identical
inputs always produce byte-identical files.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_table(path: Path, header: Sequence[str], rows: Iterable[Sequence],
                fmt: str, *, sections: dict[str, tuple[Sequence[str], Iterable[Sequence]]] | None = None) -> None:
    """Write one table (plus optional named trailing sections) as CSV or as
    a JSON document with a ``rows`` list of objects per section."""
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(format_value(v) for v in row) for row in rows]
        for name, (sec_header, sec_rows) in (sections or {}).items():
            lines.append(f"# {name}")
            lines.append(",".join(sec_header))
            lines += [",".join(format_value(v) for v in row) for row in sec_rows]
        _atomic_write(path, "\n".join(lines) + "\n")
        return
    if fmt == "json":
        doc = {"rows": [dict(zip(header, row)) for row in rows]}
        for name, (sec_header, sec_rows) in (sections or {}).items():
            doc[name] = [dict(zip(sec_header, row)) for row in sec_rows]
        _atomic_write(path, json.dumps(doc, indent=2) + "\n")
        return
    raise ValueError(f"unknown output format {fmt!r}")


def write_json(path: Path, payload) -> None:
    _atomic_write(path, json.dumps(payload, indent=2) + "\n")
