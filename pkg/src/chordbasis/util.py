"""Small shared helpers."""

from __future__ import annotations

import hashlib


def content_digest(body: str) -> str:
    """Stable content hash used in file headers, as ``sha256:<hex>``."""
    return "sha256:" + hashlib.sha256(body.encode("utf-8")).hexdigest()
