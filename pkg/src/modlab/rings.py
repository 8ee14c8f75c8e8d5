"""Finite unital rings by additive presentation.

A ring is a finite abelian group  Z/d_1 x ... x Z/d_k  (the d_i are the
additive generator orders) together with structure constants
c[i][j] = coordinates of g_i * g_j and a unity vector.  Elements are
identified with mixed-radix integers: index = sum(coords[i] * strides[i]),
so index 0 is always the zero element.

Construction validates, eagerly: order divisibility of every structure
constant, associativity on all generator triples, and two-sided unity on all
generators.  Instances are interned on their structural key, so rings that
are built twice are the same object (this makes the double-opposite of a ring
literally the original ring, and lets caches key on identity).
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import BadParams, BadUnity, NonAssociative, OrderMismatch, UnknownName
from .guards import check_element_bound

_REGISTRY = {}


@dataclass(frozen=True)
class Element:
    """One element of a ring or module: canonical index plus coordinates."""
    parent: object
    index: int

    @property
    def coords(self):
        return tuple(int(x) for x in self.parent.coords_of(self.index))

    def __repr__(self):
        return f"Element({self.index}:{self.coords})"


class Ring:
    def __init__(self, orders, structure, unity, _token=None):
        if _token is not _BUILD_TOKEN:
            raise TypeError("use build_ring()")
        self.orders = tuple(int(d) for d in orders)
        self.structure = structure  # (k, k, k) int64, reduced
        self.unity = unity          # (k,) int64, reduced
        self.k = len(self.orders)
        self.size = reduce(lambda a, b: a * b, self.orders, 1)
        strides = np.ones(self.k, dtype=np.int64)
        for i in range(1, self.k):
            strides[i] = strides[i - 1] * self.orders[i - 1]
        self.strides = strides
        self._orders_arr = np.array(self.orders, dtype=np.int64)
        self.label = None  # catalog/display name, not part of identity
        self._cache = {}

    # --- element plumbing -------------------------------------------------
    @property
    def coords_all(self):
        got = self._cache.get("coords_all")
        if got is None:
            idx = np.arange(self.size, dtype=np.int64)
            got = np.zeros((self.size, self.k), dtype=np.int64)
            for i in range(self.k):
                got[:, i] = (idx // self.strides[i]) % self.orders[i]
            self._cache["coords_all"] = got
        return got

    def coords_of(self, index):
        return self.coords_all[int(index)]

    def encode(self, coords):
        coords = np.asarray(coords, dtype=np.int64)
        if self.k == 0:
            return np.zeros(coords.shape[:-1], dtype=np.int64) if coords.ndim > 1 else 0
        out = (coords % self._orders_arr) @ self.strides
        return out if coords.ndim > 1 else int(out)

    @property
    def one_index(self):
        return self.encode(self.unity)

    def mul_coords(self, x, y):
        """Coordinates of x*y from the bilinear expansion over generators."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = np.einsum("i,j,ijt->t", x, y, self.structure)
        return out % self._orders_arr

    @property
    def mul_table(self):
        got = self._cache.get("mul_table")
        if got is None:
            check_element_bound("ring multiplication table", self.size)
            E = self.coords_all
            prods = np.einsum("ai,bj,ijt->abt", E, E, self.structure)
            got = self.encode(prods.reshape(-1, self.k)).reshape(self.size, self.size)
            self._cache["mul_table"] = got
        return got

    @property
    def add_table(self):
        got = self._cache.get("add_table")
        if got is None:
            check_element_bound("ring addition table", self.size)
            E = self.coords_all
            got = self.encode((E[:, None, :] + E[None, :, :]).reshape(-1, self.k))
            got = got.reshape(self.size, self.size)
            self._cache["add_table"] = got
        return got

    @property
    def key(self):
        got = self._cache.get("key")
        if got is None:
            got = (self.orders, self.structure.tobytes(), tuple(int(u) for u in self.unity))
            self._cache["key"] = got
        return got

    def is_commutative(self):
        return bool(np.array_equal(self.structure, self.structure.transpose(1, 0, 2)))

    def __repr__(self):
        name = self.label or f"ring{self.orders}"
        return f"Ring<{name}, |R|={self.size}>"


_BUILD_TOKEN = object()


def build_ring(orders, structure, unity):
    """Validate and intern a ring presentation.

    Args:
      orders: additive generator orders, each >= 1.
      structure: k x k array of coordinate vectors, structure[i][j] = g_i*g_j.
      unity: coordinate vector of 1.

    Raises:
      OrderMismatch: a structure constant violates order divisibility.
      NonAssociative: some generator triple fails (ab)c == a(bc).
      BadUnity: unity fails to act as two-sided identity on some generator.
    """
    orders = tuple(int(d) for d in orders)
    if any(d < 1 for d in orders):
        raise BadParams(f"generator orders must be >= 1, got {orders}")
    k = len(orders)
    size = reduce(lambda a, b: a * b, orders, 1)
    check_element_bound("ring size", size)
    structure = np.asarray(structure, dtype=np.int64).reshape(k, k, k)
    if k:
        structure = structure % np.array(orders, dtype=np.int64)[None, None, :]
    unity = np.asarray(unity, dtype=np.int64).reshape(k)
    if k:
        unity = unity % np.array(orders, dtype=np.int64)

    # order divisibility: d_i * (g_i g_j) == 0 == d_j * (g_i g_j)
    for i in range(k):
        for j in range(k):
            for t in range(k):
                c = int(structure[i, j, t])
                if (orders[i] * c) % orders[t] or (orders[j] * c) % orders[t]:
                    raise OrderMismatch(
                        f"structure constant c[{i}][{j}][{t}]",
                        f"value {c} incompatible with orders d{i}={orders[i]}, "
                        f"d{j}={orders[j]}, target d{t}={orders[t]}")

    ring = Ring(orders, structure, unity, _token=_BUILD_TOKEN)

    # associativity on generator triples: (g_i g_j) g_t == g_i (g_j g_t)
    for i in range(k):
        for j in range(k):
            ab = structure[i, j]
            for t in range(k):
                lhs = np.einsum("s,st->t", ab, structure[:, t].reshape(k, k)) % ring._orders_arr
                bc = structure[j, t]
                rhs = np.einsum("s,st->t", bc, structure[i].reshape(k, k)) % ring._orders_arr
                if not np.array_equal(lhs, rhs):
                    raise NonAssociative((i, j, t), tuple(int(x) for x in lhs),
                                         tuple(int(x) for x in rhs))

    # unity acts as identity on both sides of every generator
    for i in range(k):
        e_i = np.zeros(k, dtype=np.int64)
        e_i[i] = 1
        left = ring.mul_coords(unity, e_i)
        if not np.array_equal(left % ring._orders_arr, e_i % ring._orders_arr):
            raise BadUnity(i, "left", tuple(int(x) for x in left))
        right = ring.mul_coords(e_i, unity)
        if not np.array_equal(right % ring._orders_arr, e_i % ring._orders_arr):
            raise BadUnity(i, "right", tuple(int(x) for x in right))

    found = _REGISTRY.get(ring.key)
    if found is not None:
        return found
    _REGISTRY[ring.key] = ring
    return ring


def opposite_ring(ring):
    """Same additive group, reversed multiplication; interning makes
    opposite_ring(opposite_ring(R)) the identical object R."""
    out = build_ring(ring.orders, ring.structure.transpose(1, 0, 2), ring.unity)
    if out.label is None and ring.label is not None:
        out.label = f"{ring.label}^op"
    return out


def ring_idempotents(ring):
    """All e with e*e == e, as Elements sorted by index."""
    mt = ring.mul_table
    idx = np.arange(ring.size)
    hits = idx[mt[idx, idx] == idx]
    return [Element(ring, int(e)) for e in hits]


# ---------------------------------------------------------------------------
# builtin constructors
# ---------------------------------------------------------------------------

def _gf_poly(p, k):
    """Smallest monic irreducible polynomial of degree k over F_p.

    Coefficient vectors run lexicographically; irreducibility by trial
    division against every monic polynomial of degree 1..k//2.
    """
    def polymulmod(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    def polymod(a, m):
        a = list(a)
        dm = len(m) - 1
        while len(a) - 1 >= dm and any(a):
            if a[-1] == 0:
                a.pop()
                continue
            shift = len(a) - 1 - dm
            c = a[-1]
            for i, x in enumerate(m):
                a[shift + i] = (a[shift + i] - c * x) % p
            while a and a[-1] == 0:
                a.pop()
        while len(a) < dm:
            a.append(0)
        return a[:dm]

    def monics(deg):
        from itertools import product
        for tail in product(range(p), repeat=deg):
            yield list(tail) + [1]

    for cand in monics(k):
        ok = True
        for d in range(1, k // 2 + 1):
            for div in monics(d):
                # divisibility: remainder of cand by div
                rem = list(cand)
                dd = len(div) - 1
                while len(rem) - 1 >= dd:
                    if rem[-1] == 0:
                        rem.pop()
                        continue
                    c = rem[-1]
                    shift = len(rem) - 1 - dd
                    for i, x in enumerate(div):
                        rem[shift + i] = (rem[shift + i] - c * x) % p
                    while rem and rem[-1] == 0:
                        rem.pop()
                if not rem:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return cand
    raise BadParams(f"no irreducible polynomial found for p={p}, k={k}")


def _builtin_zmod(n):
    if n < 1:
        raise BadParams(f"zmod needs n >= 1, got {n}")
    r = build_ring((n,), [[[1]]], [1])
    r.label = f"Z/{n}"
    return r


def _builtin_gf(q):
    # factor q = p^k
    p = None
    for d in range(2, q + 1):
        if q % d == 0:
            p = d
            break
    if p is None or q < 2:
        raise BadParams(f"gf needs a prime power >= 2, got {q}")
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise BadParams(f"gf needs a prime power, got {q} = {p}^{k} * {m}")
    poly = _gf_poly(p, k)  # monic, length k+1
    # powers of x up to x^(2k-2), reduced mod poly
    pows = []
    cur = [1] + [0] * (k - 1)
    for _ in range(2 * k - 1):
        pows.append(list(cur))
        nxt = [0] + cur[:]  # multiply by x
        if len(nxt) > k:
            c = nxt[k]
            nxt = nxt[:k]
            for i in range(k):
                nxt[i] = (nxt[i] - c * poly[i]) % p
        cur = nxt[:k]
    structure = [[pows[i + j] for j in range(k)] for i in range(k)]
    unity = [1] + [0] * (k - 1)
    r = build_ring((p,) * k, structure, unity)
    r.label = f"GF({q})"
    return r


def _builtin_matrix(k, base):
    if isinstance(base, int):
        base = _builtin_gf(base)  # field orders only for the shorthand form
    if not isinstance(base, Ring) or k < 1:
        raise BadParams("matrix needs k >= 1 and a base ring")
    kb = base.k
    gens = [(a, b, t) for a in range(k) for b in range(k) for t in range(kb)]
    n = len(gens)
    orders = tuple(base.orders[t] for (_, _, t) in gens)
    pos = {g: i for i, g in enumerate(gens)}
    structure = np.zeros((n, n, n), dtype=np.int64)
    for i, (a, b, t) in enumerate(gens):
        for j, (c, d, s) in enumerate(gens):
            if b != c:
                continue
            prod = base.structure[t, s]  # coords of g_t * g_s in base
            for u in range(kb):
                structure[i, j, pos[(a, d, u)]] = prod[u]
    unity = np.zeros(n, dtype=np.int64)
    for a in range(k):
        for t in range(kb):
            unity[pos[(a, a, t)]] = base.unity[t]
    r = build_ring(orders, structure, unity)
    r.label = f"M_{k}({base.label or base.orders})"
    return r


def _builtin_upper_triangular(k, base):
    if isinstance(base, int):
        base = _builtin_gf(base)
    if not isinstance(base, Ring) or k < 1:
        raise BadParams("upper_triangular needs k >= 1 and a base ring")
    kb = base.k
    gens = [(a, b, t) for a in range(k) for b in range(a, k) for t in range(kb)]
    n = len(gens)
    orders = tuple(base.orders[t] for (_, _, t) in gens)
    pos = {g: i for i, g in enumerate(gens)}
    structure = np.zeros((n, n, n), dtype=np.int64)
    for i, (a, b, t) in enumerate(gens):
        for j, (c, d, s) in enumerate(gens):
            if b != c:
                continue
            prod = base.structure[t, s]
            for u in range(kb):
                structure[i, j, pos[(a, d, u)]] = prod[u]
    unity = np.zeros(n, dtype=np.int64)
    for a in range(k):
        for t in range(kb):
            unity[pos[(a, a, t)]] = base.unity[t]
    r = build_ring(orders, structure, unity)
    r.label = f"T_{k}({base.label or base.orders})"
    return r


def _builtin_product(*factors):
    if len(factors) < 1 or not all(isinstance(f, Ring) for f in factors):
        raise BadParams("product needs Ring factors")
    orders = sum((f.orders for f in factors), ())
    n = len(orders)
    structure = np.zeros((n, n, n), dtype=np.int64)
    unity = np.zeros(n, dtype=np.int64)
    off = 0
    for f in factors:
        kf = f.k
        structure[off:off + kf, off:off + kf, off:off + kf] = f.structure
        unity[off:off + kf] = f.unity
        off += kf
    r = build_ring(orders, structure, unity)
    r.label = " x ".join(f.label or str(f.orders) for f in factors)
    return r


def _builtin_local_f2xy():
    # F_2[x,y]/(x,y)^2: generators 1, x, y; all products of x, y vanish
    z = [0, 0, 0]
    structure = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], z, z],
        [[0, 0, 1], z, z],
    ]
    r = build_ring((2, 2, 2), structure, [1, 0, 0])
    r.label = "F2[x,y]/(x,y)^2"
    return r


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


_BUILTINS = {
    "zmod": _builtin_zmod,
    "gf": _builtin_gf,
    "matrix": _builtin_matrix,
    "upper_triangular": _builtin_upper_triangular,
    "product": _builtin_product,
    "local-f2xy": _builtin_local_f2xy,
}


def builtin_ring(name, *params):
    """Construct a named builtin ring.

    Names: zmod n | gf q | matrix k base | upper_triangular k base |
    product R1 R2 ... | local-f2xy.

    Raises UnknownName for other names, BadParams for invalid parameters.
    """
    ctor = _BUILTINS.get(name)
    if ctor is None:
        raise UnknownName(f"no builtin ring named {name!r}")
    try:
        return ctor(*params)
    except TypeError as exc:
        raise BadParams(f"bad parameters for {name}: {exc}") from exc
