"""Persistent content-addressed cache for computed symbolic forms.

Layout under the directory named by ``AVOIDANCE_CACHE_DIR``::

    <dir>/v<ALGORITHM_VERSION>/<operation>/<key[:2]>/<key>.json

where ``key`` is the sha256 of the canonical JSON of (operation, equations,
parameters, version).  Entries hold the exact report text, so a hit is
byte-identical to the recomputation that produced it.  Writes go through a
temporary file and an advisory lock (``<entry>.lock``).
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from filelock import FileLock

from .grassmann import make_rng

ENV_VAR = "AVOIDANCE_CACHE_DIR"
ALGORITHM_VERSION = 1


class CacheMismatchError(RuntimeError):
    """A spot-checked cache hit differs from a fresh recomputation."""


def canonical_key(operation, equations, params=None):
    payload = {"op": operation, "equations": [e.to_string() for e in equations],
               "params": params or {}, "version": ALGORITHM_VERSION}
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


class FormCache:
    def __init__(self, directory=None, check_rate=0.0, seed=0):
        if directory is None:
            directory = os.environ.get(ENV_VAR) or None
        self.root = Path(directory) if directory else None
        self.check_rate = check_rate
        self._rng = make_rng(seed, "cache.spot_check")
        self.hits = 0
        self.misses = 0
        self.checked = 0

    @property
    def enabled(self):
        return self.root is not None

    def path(self, operation, key):
        return self.root / f"v{ALGORITHM_VERSION}" / operation / key[:2] / f"{key}.json"

    def get_or_compute(self, operation, equations, params, compute):
        """Report text for (operation, equations, params); ``compute`` returns the text."""
        if not self.enabled:
            return compute()
        key = canonical_key(operation, equations, params)
        p = self.path(operation, key)
        p.parent.mkdir(parents=True, exist_ok=True)
        with FileLock(str(p) + ".lock"):
            if p.exists():
                text = p.read_text(encoding="utf-8")
                self.hits += 1
                if self.check_rate > 0 and self._rng.random() < self.check_rate:
                    self.checked += 1
                    if compute() != text:
                        raise CacheMismatchError(f"cache entry {p} differs from recomputation")
                return text
            text = compute()
            tmp = p.with_suffix(".tmp")
            tmp.write_text(text, encoding="utf-8")
            os.replace(tmp, p)
            self.misses += 1
            return text

    def clear(self):
        if not self.enabled or not self.root.exists():
            return 0
        n = 0
        for f in sorted(self.root.rglob("*.json")):
            f.unlink()
            n += 1
        return n
