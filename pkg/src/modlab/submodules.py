"""Submodules as bitmasks over element indices.

A submodule of a module with n elements is an int whose bit i says whether
element i belongs.  Joins of submodules are plain elementwise sum sets (no
re-closure needed), intersections are bitwise AND, and the canonical order on
submodules is mask_key = (popcount, mask-as-integer): by size first, then by
the smallest member indices.

Lattice enumeration and every decider built on it (small, summand,
complements, supplements, radical/socle) are guarded by the lattice bound.
"""

import numpy as np

from . import kernels
from .bitsets import (bools_from_mask, indices_from_mask, mask_from_bools,
                      mask_key, mask_size)
from .errors import NotASubmodule, RingMismatch
from .guards import check_lattice_bound
from .modules import ADD_TABLE_LIMIT


class Submodule:
    """A submodule handle: parent module plus membership mask."""

    __slots__ = ("parent", "mask", "_gens")

    def __init__(self, parent, mask):
        self.parent = parent
        self.mask = int(mask)
        self._gens = None

    @property
    def size(self):
        return mask_size(self.mask)

    @property
    def indices(self):
        return indices_from_mask(self.mask, self.parent.size)

    @property
    def flags(self):
        return bools_from_mask(self.mask, self.parent.size)

    @property
    def is_zero(self):
        return self.mask == 1

    @property
    def is_full(self):
        return self.size == self.parent.size

    @property
    def generators(self):
        """Irredundant generator list, built by one ascending greedy pass."""
        if self._gens is None:
            gens = []
            span = 1  # the zero submodule
            for i in self.indices:
                i = int(i)
                if span >> i & 1:
                    continue
                gens.append(i)
                span = join_masks(self.parent, span, self.parent.cyclic_mask(i))
            assert span == self.mask
            self._gens = gens
        return self._gens

    @property
    def gen_coords(self):
        g = self.generators
        if not g:
            return np.zeros((0, self.parent.m), dtype=np.int64)
        return self.parent.coords_all[np.array(g, dtype=np.int64)].copy()

    def __and__(self, other):
        self._check(other)
        return Submodule(self.parent, self.mask & other.mask)

    def __add__(self, other):
        self._check(other)
        return Submodule(self.parent, join_masks(self.parent, self.mask, other.mask))

    def __le__(self, other):
        self._check(other)
        return self.mask & other.mask == self.mask

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __eq__(self, other):
        return (isinstance(other, Submodule) and other.parent is self.parent
                and other.mask == self.mask)

    def __hash__(self):
        return hash((id(self.parent), self.mask))

    def _check(self, other):
        if not isinstance(other, Submodule) or other.parent is not self.parent:
            raise RingMismatch("submodule operands live in different modules")

    def __repr__(self):
        return f"Submodule<{self.size} of {self.parent.size}, mask={self.mask:#x}>"


def join_masks(module, mask_a, mask_b):
    """Join of two submodule masks = elementwise sum set."""
    if mask_a == 1:
        return mask_b
    if mask_b == 1:
        return mask_a
    ia = indices_from_mask(mask_a, module.size)
    ib = indices_from_mask(mask_b, module.size)
    if module.size <= ADD_TABLE_LIMIT:
        flags = kernels.sum_sets_table(ia, ib, module.add_table, module.size)
    else:
        flags = kernels.sum_sets_coords(ia, ib, module.coords_all,
                                        module._orders_arr, module.strides,
                                        module.size)
    return mask_from_bools(flags)


def from_gens(module, gens):
    """Submodule generated by the given element indices."""
    mask = 1
    for g in gens:
        mask = join_masks(module, mask, module.cyclic_mask(int(g)))
    return Submodule(module, mask)


def from_mask(module, mask, verify=True):
    """Wrap a mask, verifying closure under +, negation and the ring action."""
    mask = int(mask)
    if verify:
        if not mask & 1:
            raise NotASubmodule("does not contain 0")
        if mask >> module.size:
            raise NotASubmodule("mask has bits beyond the module")
        idx = indices_from_mask(mask, module.size)
        closed = join_masks(module, mask, mask)
        if closed != mask:
            raise NotASubmodule("not closed under addition")
        acted = module.act_table[idx, :].ravel()
        if not np.all(bools_from_mask(mask, module.size)[acted]):
            raise NotASubmodule("not closed under the ring action")
    return Submodule(module, mask)


def zero_submodule(module):
    return Submodule(module, 1)


def full_submodule(module):
    return Submodule(module, (1 << module.size) - 1)


def submodule_lattice(module):
    """All submodules, sorted by (size, mask).  Cached on the module."""
    got = module._cache.get("lattice")
    if got is None:
        check_lattice_bound("submodule lattice", module.size)
        cyclics = {1}
        for x in range(module.size):
            cyclics.add(module.cyclic_mask(x))
        found = set(cyclics)
        frontier = list(cyclics)
        while frontier:
            a = frontier.pop()
            for b in list(found):
                j = join_masks(module, a, b)
                if j not in found:
                    found.add(j)
                    frontier.append(j)
        got = sorted(found, key=mask_key)
        module._cache["lattice"] = got
    return [Submodule(module, m) for m in got]


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def is_essential(sub, sup=None):
    """sub is essential in sup: every nonzero submodule of sup meets sub."""
    module = sub.parent
    sup_flags = sup.flags if sup is not None else np.ones(module.size, dtype=bool)
    if sup is not None and not sub <= sup:
        raise NotASubmodule("essentiality needs sub <= sup")
    return bool(kernels.is_essential(sub.flags, sup_flags, module.act_table))


def is_closed(sub):
    """No proper essential extension inside the parent."""
    module = sub.parent
    return bool(kernels.is_closed(sub.flags, module.add_table, module.act_table))


def is_complement_submodule(sub):
    # over a finite module the complement submodules (maximal among those
    # disjoint from some fixed submodule) are exactly the closed ones
    return is_closed(sub)


def is_small(sub):
    """sub + P = M forces P = M (lattice sweep)."""
    module = sub.parent
    full = (1 << module.size) - 1
    for p in submodule_lattice(module):
        if p.mask != full and join_masks(module, sub.mask, p.mask) == full:
            return False
    return True


def is_summand(sub):
    module = sub.parent
    for c in submodule_lattice(module):
        if sub.mask & c.mask == 1 and sub.size * c.size == module.size:
            return True
    return False


def complements_of(sub):
    """All submodules maximal with respect to meeting sub trivially."""
    module = sub.parent
    disjoint = [c for c in submodule_lattice(module) if c.mask & sub.mask == 1]
    out = []
    for c in disjoint:
        if not any(c.mask != d.mask and c.mask & d.mask == c.mask for d in disjoint):
            out.append(c)
    return out


def direct_complements_of(sub):
    """All C with sub ⊕ C = M (disjoint and sizes multiply up)."""
    module = sub.parent
    return [c for c in submodule_lattice(module)
            if c.mask & sub.mask == 1 and c.size * sub.size == module.size]


def greedy_complement_of(sub, start=None):
    """One canonical complement of sub, grown by a single ascending pass."""
    module = sub.parent
    start_flags = (start.flags if start is not None
                   else bools_from_mask(1, module.size))
    flags = kernels.greedy_complement(sub.flags, start_flags,
                                      module.add_table, module.act_table)
    return Submodule(module, mask_from_bools(flags))


def closure_of(sub):
    """The least (by mask_key) closed submodule containing sub essentially."""
    module = sub.parent
    best = None
    for c in submodule_lattice(module):
        if not sub <= c:
            continue
        if not kernels.is_essential(sub.flags, c.flags, module.act_table):
            continue
        if not is_closed(c):
            continue
        if best is None or mask_key(c.mask) < mask_key(best.mask):
            best = c
    assert best is not None  # a finite module always has closures
    return best


def supplement_of(sub):
    """An inclusion-minimal P with sub + P = M; least mask_key among those."""
    module = sub.parent
    full = (1 << module.size) - 1
    covers = [p for p in submodule_lattice(module)
              if join_masks(module, sub.mask, p.mask) == full]
    minimal = [p for p in covers
               if not any(q.mask != p.mask and q.mask & p.mask == q.mask
                          for q in covers)]
    return min(minimal, key=lambda p: mask_key(p.mask))


def part(module, which):
    """Distinguished submodules: 'radical', 'socle' or 'singular'."""
    if which == "radical":
        lat = submodule_lattice(module)
        full = (1 << module.size) - 1
        proper = [p.mask for p in lat if p.mask != full]
        maximal = [p for p in proper
                   if not any(q != p and q & p == p for q in proper)]
        mask = full
        for p in maximal:
            mask &= p
        return Submodule(module, mask | 1)
    if which == "socle":
        lat = submodule_lattice(module)
        nonzero = [p.mask for p in lat if p.mask != 1]
        minimal = [p for p in nonzero
                   if not any(q != p and q & p == q for q in nonzero)]
        mask = 1
        for p in minimal:
            mask = join_masks(module, mask, p)
        return Submodule(module, mask)
    if which == "singular":
        ring = module.ring
        act = module.act_table
        mul = ring.mul_table
        all_r = np.ones(ring.size, dtype=bool)
        bits = 1  # element 0 always qualifies
        for x in range(1, module.size):
            ann_flags = act[x, :] == 0
            if kernels.is_essential(ann_flags, all_r, mul):
                bits |= 1 << x
        return from_mask(module, bits)  # verified: the singular set is a submodule
    raise ValueError(f"unknown part {which!r}")
