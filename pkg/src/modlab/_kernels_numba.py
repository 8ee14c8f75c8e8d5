"""numba @njit twins of the pure-numpy kernels.

Same contracts as _kernels_numpy; selected by modlab.kernels when the
MODLAB_BACKEND env flag allows it.  cache=True amortizes JIT cost across
processes (the census worker pool re-imports this module).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def span_closure_table(seed, add, act):
    n = add.shape[0]
    n_r = act.shape[1]
    members = np.zeros(n, dtype=np.bool_)
    found = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    members[0] = True
    found[0] = 0
    cnt = 1
    stack[0] = 0
    top = 1
    for s in seed:
        if not members[s]:
            members[s] = True
            found[cnt] = s
            cnt += 1
            stack[top] = s
            top += 1
    while top > 0:
        top -= 1
        x = stack[top]
        for r in range(n_r):
            y = act[x, r]
            if not members[y]:
                members[y] = True
                found[cnt] = y
                cnt += 1
                stack[top] = y
                top += 1
        i = 0
        while i < cnt:
            y = add[x, found[i]]
            if not members[y]:
                members[y] = True
                found[cnt] = y
                cnt += 1
                stack[top] = y
                top += 1
            i += 1
    return members


@njit(cache=True)
def sum_sets_table(a_idx, b_idx, add, n):
    flags = np.zeros(n, dtype=np.bool_)
    for i in range(a_idx.shape[0]):
        a = a_idx[i]
        for j in range(b_idx.shape[0]):
            flags[add[a, b_idx[j]]] = True
    return flags


@njit(cache=True)
def is_essential(sub_flags, sup_flags, act):
    n = sup_flags.shape[0]
    n_r = act.shape[1]
    for x in range(1, n):
        if not sup_flags[x]:
            continue
        hit = False
        for r in range(n_r):
            z = act[x, r]
            if z != 0 and sub_flags[z]:
                hit = True
                break
        if not hit:
            return False
    return True


@njit(cache=True)
def is_closed(x_flags, add, act):
    n = add.shape[0]
    n_r = act.shape[1]
    for c in range(n):
        if x_flags[c]:
            continue
        y_flags = np.zeros(n, dtype=np.bool_)
        for i in range(n):
            if x_flags[i]:
                for r in range(n_r):
                    y_flags[add[i, act[c, r]]] = True
        y_flags |= x_flags
        ess = True
        for y in range(1, n):
            if not y_flags[y]:
                continue
            hit = False
            for r in range(n_r):
                z = act[y, r]
                if z != 0 and x_flags[z]:
                    hit = True
                    break
            if not hit:
                ess = False
                break
        if ess:
            return False
    return True


@njit(cache=True)
def greedy_complement(avoid_flags, start_flags, add, act):
    n = add.shape[0]
    n_r = act.shape[1]
    seed = np.nonzero(start_flags)[0]
    K = span_closure_table(seed, add, act)
    for c in range(n):
        if K[c]:
            continue
        y_flags = np.zeros(n, dtype=np.bool_)
        for i in range(n):
            if K[i]:
                for r in range(n_r):
                    y_flags[add[i, act[c, r]]] = True
        y_flags |= K
        ok = True
        for i in range(1, n):
            if y_flags[i] and avoid_flags[i]:
                ok = False
                break
        if ok:
            K = y_flags
    return K
