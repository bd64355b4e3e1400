"""On-disk report cache keyed by (tool version, scenario, canonical params)."""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

from .errors import CacheCorrupt
from .report import canonical_params

CACHE_ENV = "SPLINTERLAB_CACHE_DIR"


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "splinterlab"


def cache_key(version: str, name: str, params: dict) -> str:
    payload = "\n".join([version, name, canonical_params(params)])
    return hashlib.sha256(payload.encode()).hexdigest()


class ReportCache:
    """Each entry is '<sha256 of body>\\n<body>'; writes go through an atomic rename."""

    def __init__(self, root: Path | None = None):
        self.root = Path(root) if root is not None else cache_dir()

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.report"

    def get(self, key: str) -> bytes | None:
        path = self._path(key)
        if not path.exists():
            return None
        raw = path.read_bytes()
        digest, sep, body = raw.partition(b"\n")
        if not sep or hashlib.sha256(body).hexdigest().encode() != digest:
            path.unlink(missing_ok=True)
            raise CacheCorrupt(f"cache entry {key} failed its hash check and was discarded")
        return body

    def put(self, key: str, body: bytes) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        data = hashlib.sha256(body).hexdigest().encode() + b"\n" + body
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".report")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def clear(self) -> int:
        if not self.root.exists():
            return 0
        n = 0
        for entry in self.root.glob("*.report"):
            entry.unlink()
            n += 1
        for stray in self.root.glob(".tmp-*"):
            stray.unlink()
        return n

    def entries(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(p.stem for p in self.root.glob("*.report"))
