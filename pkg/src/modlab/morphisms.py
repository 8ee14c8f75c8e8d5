"""Module homomorphisms and exact hom-set solving.

A morphism f: M -> N is an m_M x m_N integer matrix W with f(h_i) =
sum_s W[i,s] k_s; composition "f then g" is W_f @ W_g (row-vector
convention).  The full hom group Hom(M, N) is computed exactly by turning
the two defining conditions into a linear congruence system over the
mixed-modulus unknowns W[i, s] in Z/orders_N[s]:

  order rows    orders_M[i] * W[i,s] == 0                    (mod orders_N[s])
  action rows   sum_j A_t[i,j] W[j,s] - sum_u W[i,u] B_t[u,s] == 0
                                                             (mod orders_N[s])

for A_t, B_t the generator action matrices of M and N.  solve_congruences
returns independent generators, so |Hom| = prod(generator orders) comes out
for free and enumeration is duplicate-free.
"""

import numpy as np

from .errors import NotAMorphism, RingMismatch
from .guards import check_hom_bound
from .intlinalg import solve_congruences
from .modules import Module


class Morphism:
    __slots__ = ("src", "tgt", "W", "_table")

    def __init__(self, src, tgt, W):
        self.src = src
        self.tgt = tgt
        W = np.asarray(W, dtype=np.int64).reshape(src.m, tgt.m)
        if tgt.m:
            W = W % tgt._orders_arr[None, :]
        self.W = W
        self._table = None

    @property
    def element_table(self):
        """element_table[x] = index of f(x) in the target."""
        if self._table is None:
            vals = self.src.coords_all @ self.W
            self._table = np.atleast_1d(self.tgt.encode(vals))
        return self._table

    def __call__(self, x):
        return int(self.element_table[int(x)])

    def then(self, other):
        """self followed by other (so other.src must be self.tgt)."""
        if other.src is not self.tgt:
            raise RingMismatch("composition endpoints do not match")
        return Morphism(self.src, other.tgt, self.W @ other.W)

    def __add__(self, other):
        if other.src is not self.src or other.tgt is not self.tgt:
            raise RingMismatch("morphism sum endpoints do not match")
        return Morphism(self.src, self.tgt, self.W + other.W)

    def __neg__(self):
        return Morphism(self.src, self.tgt, -self.W)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, Morphism) and other.src is self.src
                and other.tgt is self.tgt and np.array_equal(other.W, self.W))

    def __hash__(self):
        return hash((id(self.src), id(self.tgt), self.W.tobytes()))

    @property
    def image_mask(self):
        mask = 0
        for v in np.unique(self.element_table):
            mask |= 1 << int(v)
        return mask

    @property
    def kernel_mask(self):
        mask = 0
        for v in np.nonzero(self.element_table == 0)[0]:
            mask |= 1 << int(v)
        return mask

    @property
    def is_injective(self):
        return self.kernel_mask == 1

    @property
    def is_surjective(self):
        return len(np.unique(self.element_table)) == self.tgt.size

    @property
    def is_bijective(self):
        return self.is_injective and self.is_surjective

    @property
    def is_zero(self):
        return not self.W.any()

    def restricted_to(self, indices):
        """Element images over a subset, as an index array."""
        return self.element_table[np.asarray(indices, dtype=np.int64)]

    def __repr__(self):
        return f"Morphism<{self.src.size}->{self.tgt.size}, W={self.W.tolist()}>"


def identity_morphism(module):
    return Morphism(module, module, np.eye(module.m, dtype=np.int64))


def zero_morphism(src, tgt):
    return Morphism(src, tgt, np.zeros((src.m, tgt.m), dtype=np.int64))


def morphism_from_matrix(src, tgt, W, validate=True):
    f = Morphism(src, tgt, W)
    if validate:
        _validate_hom(f)
    return f


def _validate_hom(f):
    src, tgt, W = f.src, f.tgt, f.W
    if tgt.m == 0 or src.m == 0:
        return
    oa = tgt._orders_arr[None, :]
    so = np.array(src.orders, dtype=np.int64)[:, None]
    if np.any((so * W) % oa):
        raise NotAMorphism("matrix violates a generator order")
    for t in range(src.ring.k):
        lhs = (src.action[t] @ W) % oa
        rhs = (W @ tgt.action[t]) % oa
        if not np.array_equal(lhs, rhs):
            raise NotAMorphism(f"matrix does not commute with ring generator {t}")


# ---------------------------------------------------------------------------
# hom sets
# ---------------------------------------------------------------------------

class HomSet:
    """Hom(src, tgt) as an abelian group: independent generator matrices
    with their additive orders; size == prod(orders)."""

    def __init__(self, src, tgt, gens, orders):
        self.src = src
        self.tgt = tgt
        self.gens = gens        # (g, m_src, m_tgt) int64
        self.orders = orders    # (g,) int64
        self.size = 1
        for o in orders:
            self.size *= int(o)

    def matrices(self):
        """All hom matrices, shape (size, m_src, m_tgt); guarded, deterministic."""
        check_hom_bound("hom-set enumeration", self.size)
        ms, mt = self.src.m, self.tgt.m
        out = np.zeros((1, ms, mt), dtype=np.int64)
        for g, o in zip(self.gens, self.orders):
            mult = np.arange(int(o), dtype=np.int64)[:, None, None] * g[None, :, :]
            out = (out[:, None] + mult[None, :]).reshape(-1, ms, mt)
            if mt:
                out %= self.tgt._orders_arr[None, None, :]
        return out

    def all(self):
        return [Morphism(self.src, self.tgt, W) for W in self.matrices()]

    def basis(self):
        return [Morphism(self.src, self.tgt, g) for g in self.gens]

    def __repr__(self):
        return f"HomSet<{self.src.size}->{self.tgt.size}, |Hom|={self.size}>"


_HOM_CACHE = {}


def _hom_rows(src, tgt):
    """Coefficient matrix + row moduli of the hom conditions (homogeneous)."""
    ms, mt, k = src.m, tgt.m, src.ring.k
    u = ms * mt
    tgt_orders = np.array(tgt.orders, dtype=np.int64)
    unk_mods = np.tile(tgt_orders, ms) if u else np.zeros(0, dtype=np.int64)
    if u == 0:
        return np.zeros((0, 0), dtype=np.int64), np.zeros(0, dtype=np.int64), unk_mods
    eye_s = np.eye(ms, dtype=np.int64)
    eye_t = np.eye(mt, dtype=np.int64)
    order_rows = np.kron(np.diag(np.array(src.orders, dtype=np.int64)), eye_t)
    order_mods = np.tile(tgt_orders, ms)
    act_rows = (np.einsum("tij,su->tisju", src.action, eye_t)
                - np.einsum("ij,tus->tisju", eye_s, tgt.action))
    act_rows = act_rows.reshape(k * ms * mt, u)
    act_mods = np.tile(tgt_orders, k * ms)
    A = np.vstack([order_rows, act_rows])
    row_mods = np.concatenate([order_mods, act_mods])
    return A, row_mods, unk_mods


def hom_set(src, tgt):
    """Hom(src, tgt) as a HomSet; results are cached per module pair."""
    if not isinstance(src, Module) or not isinstance(tgt, Module):
        raise RingMismatch("hom_set needs two modules")
    if src.ring is not tgt.ring:
        raise RingMismatch("hom_set needs modules over the same ring")
    key = (id(src), id(tgt))
    got = _HOM_CACHE.get(key)
    if got is None:
        A, row_mods, unk_mods = _hom_rows(src, tgt)
        sol = solve_congruences(A, row_mods, unk_mods)
        gens = sol.gens.reshape(sol.gens.shape[0], src.m, tgt.m)
        # drop trivial generators (order 1) for tidier bases
        keep = sol.orders > 1
        got = HomSet(src, tgt, gens[keep], sol.orders[keep])
        _HOM_CACHE[key] = got
    return got


def hom_count(src, tgt):
    return hom_set(src, tgt).size


def end_idempotents(module):
    """All idempotent endomorphism matrices, sorted by flattened entries."""
    H = hom_set(module, module)
    mats = H.matrices()
    if module.m:
        sq = np.einsum("nij,njk->nik", mats, mats) % module._orders_arr[None, None, :]
    else:
        sq = mats
    hits = mats[np.all(sq == mats, axis=(1, 2))]
    order = sorted(range(len(hits)), key=lambda i: tuple(hits[i].ravel()))
    return [Morphism(module, module, hits[i]) for i in order]


def extend_hom(f, emb):
    """Find g with emb-then-g == f, or None.

    f: C -> A and emb: C -> B share the source; the solution g: B -> A, when
    it exists, extends f along emb.  This is one affine congruence solve: the
    hom conditions on g plus the extension rows
    sum_j emb.W[c,j] g[j,s] == f.W[c,s] (mod orders_A[s]).
    """
    if f.src is not emb.src:
        raise RingMismatch("extend_hom needs f and emb with the same source")
    B, A_mod = emb.tgt, f.tgt
    mB, mA, mC = B.m, A_mod.m, f.src.m
    u = mB * mA
    A_rows, row_mods, unk_mods = _hom_rows(B, A_mod)
    rhs = np.zeros(A_rows.shape[0], dtype=np.int64)
    if u and mC:
        eye_a = np.eye(mA, dtype=np.int64)
        ext = np.einsum("cj,su->csju", emb.W, eye_a).reshape(mC * mA, u)
        ext_mods = np.tile(np.array(A_mod.orders, dtype=np.int64), mC)
        A_rows = np.vstack([A_rows, ext])
        row_mods = np.concatenate([row_mods, ext_mods])
        rhs = np.concatenate([rhs, f.W.ravel()])
    elif mC and mA:
        # no unknowns (B has no generators): solvable iff f is zero
        if f.W.any():
            return None
    sol = solve_congruences(A_rows, row_mods, unk_mods, rhs=rhs)
    if sol is None:
        return None
    return Morphism(B, A_mod, sol.particular.reshape(mB, mA))
