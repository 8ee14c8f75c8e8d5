"""Finite right modules given by additive presentation plus action matrices.

A module over a presented ring is an abelian group Z/e_1 x ... x Z/e_m with
one m x m action matrix per ring generator: row i of action[t] holds the
coordinates of h_i * g_t.  Elements are mixed-radix integers exactly as for
rings, with index 0 the zero element.  Everything downstream (submodule
masks, hom solving, duals) reads off these matrices.

Row-vector convention throughout: (x * g) coords = x_coords @ A_g, so acting
by a product composes left-to-right, A_{gh} = A_g @ A_h.
"""

from functools import reduce

import numpy as np

from .errors import BadParams, BadUnity, NonAssociative, OrderMismatch
from .guards import check_element_bound
from .rings import Ring

_REGISTRY = {}

# addition tables are quadratic in the module size; past this they are
# refused and callers use the coordinate-space helpers instead
ADD_TABLE_LIMIT = 1024


class Module:
    def __init__(self, ring, orders, action, _token=None):
        if _token is not _BUILD_TOKEN:
            raise TypeError("use build_module()")
        self.ring = ring
        self.orders = tuple(int(e) for e in orders)
        self.action = action  # (ring.k, m, m) int64, reduced mod column orders
        self.m = len(self.orders)
        self.size = reduce(lambda a, b: a * b, self.orders, 1)
        strides = np.ones(self.m, dtype=np.int64)
        for i in range(1, self.m):
            strides[i] = strides[i - 1] * self.orders[i - 1]
        self.strides = strides
        self._orders_arr = np.array(self.orders, dtype=np.int64)
        self.label = None
        self._cache = {}

    @property
    def coords_all(self):
        got = self._cache.get("coords_all")
        if got is None:
            idx = np.arange(self.size, dtype=np.int64)
            got = np.zeros((self.size, self.m), dtype=np.int64)
            for i in range(self.m):
                got[:, i] = (idx // self.strides[i]) % self.orders[i]
            self._cache["coords_all"] = got
        return got

    def coords_of(self, index):
        return self.coords_all[int(index)]

    def encode(self, coords):
        coords = np.asarray(coords, dtype=np.int64)
        if self.m == 0:
            if coords.ndim > 1:
                return np.zeros(coords.shape[0], dtype=np.int64)
            return 0
        out = (coords % self._orders_arr) @ self.strides
        return out if coords.ndim > 1 else int(out)

    # --- lazy tables -------------------------------------------------------

    @property
    def mats(self):
        """Action matrix of every ring element, shape (|R|, m, m)."""
        got = self._cache.get("mats")
        if got is None:
            got = np.einsum("rj,jab->rab", self.ring.coords_all, self.action)
            if self.m:
                got = got % self._orders_arr[None, None, :]
            self._cache["mats"] = got
        return got

    @property
    def act_table(self):
        """act_table[x, r] = index of x * r."""
        got = self._cache.get("act_table")
        if got is None:
            check_element_bound("module action table", self.size)
            prods = np.einsum("xa,rab->xrb", self.coords_all, self.mats)
            flat = prods.reshape(self.size * self.ring.size, self.m)
            got = np.atleast_1d(self.encode(flat)).reshape(self.size, self.ring.size)
            self._cache["act_table"] = got
        return got

    @property
    def add_table(self):
        got = self._cache.get("add_table")
        if got is None:
            check_element_bound("module addition table", self.size, ADD_TABLE_LIMIT)
            E = self.coords_all
            flat = (E[:, None, :] + E[None, :, :]).reshape(self.size * self.size, self.m)
            got = np.atleast_1d(self.encode(flat)).reshape(self.size, self.size)
            self._cache["add_table"] = got
        return got

    @property
    def neg_table(self):
        got = self._cache.get("neg_table")
        if got is None:
            got = self.encode((-self.coords_all) % self._orders_arr if self.m
                              else -self.coords_all)
            got = np.atleast_1d(got)
            self._cache["neg_table"] = got
        return got

    @property
    def element_orders(self):
        """Additive order of every element."""
        got = self._cache.get("element_orders")
        if got is None:
            out = np.ones(self.size, dtype=np.int64)
            E = self.coords_all
            for i in range(self.m):
                d = self.orders[i]
                g = np.gcd(E[:, i], d)
                out = np.lcm(out, d // g)
            self._cache["element_orders"] = out
            got = out
        return got

    @property
    def invariant_factors(self):
        """Invariant factors of the additive group, ascending (d_1 | d_2 | ...)."""
        got = self._cache.get("invariant_factors")
        if got is None:
            # elementary divisors per prime, padded and re-merged
            from collections import defaultdict
            perprime = defaultdict(list)
            for d in self.orders:
                dd = d
                p = 2
                while dd > 1:
                    if dd % p == 0:
                        a = 0
                        while dd % p == 0:
                            dd //= p
                            a += 1
                        perprime[p].append(p ** a)
                    p += 1 if p == 2 else 2
            slots = max((len(v) for v in perprime.values()), default=0)
            factors = []
            for s in range(slots):
                f = 1
                for p, v in perprime.items():
                    v = sorted(v, reverse=True)
                    if s < len(v):
                        f *= v[s]
                factors.append(f)
            got = tuple(sorted(factors))
            self._cache["invariant_factors"] = got
        return got

    def cyclic_mask(self, x):
        """Bitmask of the cyclic submodule x*R."""
        row = self.act_table[int(x)]
        mask = 0
        for v in np.unique(row):
            mask |= 1 << int(v)
        return mask

    @property
    def key(self):
        got = self._cache.get("key")
        if got is None:
            got = (self.ring.key, self.orders, self.action.tobytes())
            self._cache["key"] = got
        return got

    def __repr__(self):
        name = self.label or f"mod{self.orders}"
        return f"Module<{name} over {self.ring.label or self.ring.orders}, |M|={self.size}>"


_BUILD_TOKEN = object()


def build_module(ring, orders, action):
    """Validate and intern a right-module presentation.

    Checks, in order: order compatibility of every action entry against both
    the source generator's order and the acting ring generator's order;
    unity acting as the identity; and compatibility of the action with ring
    multiplication on all generator pairs (A_i @ A_j == sum_t c[i][j][t] A_t).
    """
    if not isinstance(ring, Ring):
        raise BadParams("build_module needs a Ring")
    orders = tuple(int(e) for e in orders)
    if any(e < 1 for e in orders):
        raise BadParams(f"generator orders must be >= 1, got {orders}")
    m = len(orders)
    size = reduce(lambda a, b: a * b, orders, 1)
    check_element_bound("module size", size)
    action = np.asarray(action, dtype=np.int64).reshape(ring.k, m, m)
    if m:
        action = action % np.array(orders, dtype=np.int64)[None, None, :]

    for t in range(ring.k):
        for i in range(m):
            for s in range(m):
                a = int(action[t, i, s])
                if (orders[i] * a) % orders[s]:
                    raise OrderMismatch(
                        f"action[{t}][{i}][{s}]",
                        f"entry {a}: source order e{i}={orders[i]} does not kill it "
                        f"mod e{s}={orders[s]}")
                if (ring.orders[t] * a) % orders[s]:
                    raise OrderMismatch(
                        f"action[{t}][{i}][{s}]",
                        f"entry {a}: ring generator order d{t}={ring.orders[t]} does "
                        f"not kill it mod e{s}={orders[s]}")

    mod = Module(ring, orders, action, _token=_BUILD_TOKEN)
    oa = mod._orders_arr

    if m:
        unity_mat = np.einsum("j,jab->ab", ring.unity, action) % oa
        eye = np.eye(m, dtype=np.int64) % oa
        if not np.array_equal(unity_mat, eye):
            bad = int(np.argwhere(unity_mat != eye)[0][0])
            raise BadUnity(bad, "module action",
                           tuple(int(v) for v in unity_mat[bad]))

    for i in range(ring.k):
        for j in range(ring.k):
            lhs = (action[i] @ action[j]) % oa if m else action[i] @ action[j]
            rhs = np.einsum("t,tab->ab", ring.structure[i, j], action)
            rhs = rhs % oa if m else rhs
            if not np.array_equal(lhs, rhs):
                raise NonAssociative(
                    (i, j),
                    tuple(int(v) for v in lhs.ravel()),
                    tuple(int(v) for v in rhs.ravel()))

    found = _REGISTRY.get(mod.key)
    if found is not None:
        return found
    _REGISTRY[mod.key] = mod
    return mod


def regular_module(ring):
    """The ring as a right module over itself: h_i * g_t = g_i g_t."""
    action = np.ascontiguousarray(ring.structure.transpose(1, 0, 2))  # A_t[i,j] = c[i][t][j]
    mod = build_module(ring, ring.orders, action)
    if mod.label is None:
        mod.label = "regular"
    return mod


def zero_module(ring):
    mod = build_module(ring, (), np.zeros((ring.k, 0, 0), dtype=np.int64))
    if mod.label is None:
        mod.label = "0"
    return mod
