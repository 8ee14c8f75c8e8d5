"""Element-set plumbing: submodule member sets as integer bitmasks.

Bit i of a mask means "element with index i belongs to the set".  Python
integers give arbitrary width, hashability, O(1) intersection/containment,
and a total order; the canonical order on submodules used for every
deterministic tie-break in modlab is the key (popcount, mask-as-integer).
"""

import numpy as np


def mask_from_indices(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def mask_from_bools(flags: np.ndarray) -> int:
    # little-endian packbits -> bytes -> int keeps bit i == element i
    packed = np.packbits(flags.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def indices_from_mask(mask: int, n: int) -> np.ndarray:
    buf = mask.to_bytes((n + 7) // 8, "little")
    flags = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")[:n]
    return np.nonzero(flags)[0].astype(np.int64)


def bools_from_mask(mask: int, n: int) -> np.ndarray:
    buf = mask.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def mask_size(mask: int) -> int:
    return mask.bit_count()


def mask_key(mask: int):
    """Canonical deterministic sort key for submodule masks."""
    return (mask.bit_count(), mask)


def contains(mask: int, sub: int) -> bool:
    return mask & sub == sub
