"""Deterministic seed derivation.

All randomness in a run flows from one 64-bit master seed.  Child seeds for
parallel jobs are derived by hashing the master seed together with a label
path (e.g. ("prime", 2) or ("line", 2, 0)), so results are reproducible and
independent of scheduling order.
"""

from __future__ import annotations

import hashlib
import random


def child_seed(master: int, *labels) -> int:
    payload = repr((int(master),) + labels).encode()
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "big")


def child_rng(master: int, *labels) -> random.Random:
    return random.Random(child_seed(master, *labels))
