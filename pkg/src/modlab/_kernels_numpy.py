"""Pure-numpy kernel implementations.

Reference semantics for the hot loops; the numba twins in _kernels_numba must
return bit-identical results.  All kernels work on precomputed integer tables:

  add[x, y]  -> index of x + y
  act[x, r]  -> index of x * r  (r over all ring elements)

Element 0 is always the zero element.
"""

import numpy as np


def span_closure_table(seed, add, act):
    """Smallest subset containing seed (and 0) closed under + and the action."""
    n = add.shape[0]
    flags = np.zeros(n, dtype=bool)
    flags[0] = True
    flags[np.asarray(seed, dtype=np.int64)] = True
    while True:
        idx = np.nonzero(flags)[0]
        new = np.zeros(n, dtype=bool)
        new[add[np.ix_(idx, idx)].ravel()] = True
        new[act[idx, :].ravel()] = True
        new |= flags
        if new.sum() == flags.sum():
            return new
        flags = new


def sum_sets_table(a_idx, b_idx, add, n):
    """Elementwise sum set {a + b}; for two submodules this is their join."""
    flags = np.zeros(n, dtype=bool)
    flags[add[np.ix_(np.asarray(a_idx, dtype=np.int64),
                     np.asarray(b_idx, dtype=np.int64))].ravel()] = True
    return flags


def is_essential(sub_flags, sup_flags, act):
    """True iff every nonzero x in sup has x*r nonzero inside sub for some r."""
    idx = np.nonzero(sup_flags)[0]
    idx = idx[idx != 0]
    if len(idx) == 0:
        return True
    rows = act[idx, :]
    hits = (rows != 0) & sub_flags[rows]
    return bool(hits.any(axis=1).all())


def is_closed(x_flags, add, act):
    """No proper essential extension inside the parent module.

    It suffices to test single-cyclic extensions X + cR: if X is essential in
    some strictly larger Y, it is essential in the intermediate X + cR for any
    c in Y \\ X.
    """
    n = add.shape[0]
    x_idx = np.nonzero(x_flags)[0]
    for c in range(n):
        if x_flags[c]:
            continue
        y_flags = sum_sets_table(x_idx, act[c, :], add, n)
        y_flags |= x_flags
        if is_essential(x_flags, y_flags, act):
            return False
    return True


def greedy_complement(avoid_flags, start_flags, add, act):
    """A submodule K maximal with K ∩ avoid = 0 among those containing start.

    One ascending pass over cyclic extensions suffices: rejection of c is
    monotone under growing K, and any strictly larger disjoint submodule would
    contain a cyclic witness the pass already rejected.
    """
    n = add.shape[0]
    K = span_closure_table(np.nonzero(start_flags)[0], add, act)
    for c in range(n):
        if K[c]:
            continue
        y_flags = sum_sets_table(np.nonzero(K)[0], act[c, :], add, n)
        y_flags |= K
        meet = y_flags & avoid_flags
        meet[0] = False
        if not meet.any():
            K = y_flags
    return K
