"""Atomic file output: write to a temporary sibling, then rename."""

from __future__ import annotations

import os
import tempfile


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        # KeyboardInterrupt included: never leave a partial file behind
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
