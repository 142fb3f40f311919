"""On-disk cache of built rings with their full product tables.

A cached ring is one JSON document: a schema stamp, the basis order,
and every composable basis product keyed by basis indices.  Writing is
deterministic (sorted keys, index-sorted products), so store/load/store
round-trips byte-identically.  A missing file means build silently; an
unreadable or wrong-schema file means rebuild with a warning on stderr.

The cache directory comes from, in order: an explicit argument, the
ARCRING_CACHE_DIR environment variable, ~/.cache/arcring.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

from .arc_ring import ArcRing, build_ring
from .combinatorics import Matching

SCHEMA_VERSION = 1
ENV_VAR = "ARCRING_CACHE_DIR"


def cache_dir(directory: str | os.PathLike | None = None) -> Path:
    if directory is not None:
        return Path(directory)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "arcring"


def cache_path(n: int, directory: str | os.PathLike | None = None) -> Path:
    return cache_dir(directory) / f"ring_n{n}.json"


def _full_product_table(ring: ArcRing) -> None:
    by_row: dict = {}
    for v in ring.basis:
        by_row.setdefault(v.row, []).append(v)
    for x in ring.basis:
        for y in by_row[x.col]:
            ring.multiply_basis(x, y)


def ring_to_payload(ring: ArcRing) -> dict:
    """A complete, deterministic JSON description of the ring."""
    _full_product_table(ring)
    products = []
    for (x, y), terms in sorted(
        ring._products.items(),
        key=lambda kv: (ring.index[kv[0][0]], ring.index[kv[0][1]]),
    ):
        products.append(
            [ring.index[x], ring.index[y], [[ring.index[z], c] for z, c in terms]]
        )
    return {
        "schema": SCHEMA_VERSION,
        "n": ring.n,
        "order": [[list(arc) for arc in m.pairs] for m in ring.order],
        "products": products,
    }


def payload_to_ring(payload: dict) -> ArcRing:
    """Rebuild a ring from its payload; raises ValueError when unusable."""
    if not isinstance(payload, dict):
        raise ValueError("cache payload is not an object")
    if payload.get("schema") != SCHEMA_VERSION:
        raise ValueError(
            f"cache schema {payload.get('schema')!r} does not match {SCHEMA_VERSION}"
        )
    try:
        n = payload["n"]
        order = [
            Matching([tuple(arc) for arc in pairs]) for pairs in payload["order"]
        ]
        ring = ArcRing(n, order)
        for xi, yi, terms in payload["products"]:
            x, y = ring.basis[xi], ring.basis[yi]
            if x.col != y.row:
                raise ValueError("cached product joins non-composable vectors")
            ring._products[(x, y)] = tuple(
                (ring.basis[zi], int(c)) for zi, c in terms
            )
    except (KeyError, IndexError, TypeError) as exc:
        raise ValueError(f"malformed ring cache: {exc}") from exc
    return ring


def store_ring(ring: ArcRing, directory: str | os.PathLike | None = None) -> Path:
    path = cache_path(ring.n, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(ring_to_payload(ring), sort_keys=True, separators=(",", ":"))
    path.write_text(text + "\n")
    return path


def load_ring(n: int, directory: str | os.PathLike | None = None) -> ArcRing:
    """Load a cached ring; FileNotFoundError if absent, ValueError if bad."""
    path = cache_path(n, directory)
    payload = json.loads(path.read_text())
    ring = payload_to_ring(payload)
    if ring.n != n:
        raise ValueError(f"cache file for n={n} actually contains n={ring.n}")
    return ring


def load_or_build(
    n: int, directory: str | os.PathLike | None = None, store: bool = True
) -> tuple[ArcRing, str]:
    """The ring for n, from cache when possible.

    Returns (ring, status) with status one of "loaded", "built" (no
    cache file existed), "rebuilt" (cache file existed but was
    unusable; a warning goes to stderr).
    """
    try:
        return load_ring(n, directory), "loaded"
    except FileNotFoundError:
        status = "built"
    except ValueError as exc:
        print(f"warning: rebuilding ring cache for n={n}: {exc}", file=sys.stderr)
        status = "rebuilt"
    ring = build_ring(n)
    if store:
        store_ring(ring, directory)
    return ring, status
