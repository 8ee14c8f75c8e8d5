"""Direct sums, quotients, direct-sum decompositions, isomorphism testing.

Internal decompositions live on masks (see submodules); this layer also
rebuilds subquotients as standalone modules.  Both rebuilds run through
Smith normal form over Z:

* quotient M/N: stack N's generator coordinates over diag(orders of M); the
  SNF column transform V turns residue coordinates into invariant-factor
  coordinates, so the projection matrix is V (columns with order > 1) and
  generator lifts are rows of V^-1.

* a submodule S as a module: the first SNF yields a lattice basis B of the
  preimage of S in Z^m, the second puts the relation matrix of B modulo the
  parent's relations into diagonal form, giving S's own invariant factors,
  its generators inside the parent, and from them the induced action.

Direct-sum splitting follows idempotent endomorphisms (e and 1-e split M),
recursively, picking at each stage the least nontrivial idempotent in the
deterministic end_idempotents order, so decompositions are reproducible.
Isomorphism testing matches indecomposable parts (Krull-Schmidt) against a
per-ring registry of representatives, so repeated census queries reduce to
signature lookups.
"""

from dataclasses import dataclass, field

import numpy as np

from .bitsets import mask_from_indices
from .errors import RingMismatch
from .guards import check_hom_bound
from .intlinalg import mat_mul, smith_normal_form
from .modules import Module, build_module
from .morphisms import (Morphism, hom_set, end_idempotents, identity_morphism,
                        morphism_from_matrix)
from .submodules import Submodule, from_mask, submodule_lattice


@dataclass
class DirectSum:
    """An external direct sum: the sum module plus embeddings/projections."""
    module: Module
    parts: list
    embs: list
    projs: list
    masks: list


def direct_sum(parts):
    """Build the external direct sum of modules over a common ring."""
    if not parts:
        raise RingMismatch("direct_sum needs at least one part")
    ring = parts[0].ring
    if any(p.ring is not ring for p in parts):
        raise RingMismatch("direct_sum parts live over different rings")
    orders = sum((p.orders for p in parts), ())
    m = len(orders)
    action = np.zeros((ring.k, m, m), dtype=np.int64)
    off = 0
    offs = []
    for p in parts:
        offs.append(off)
        action[:, off:off + p.m, off:off + p.m] = p.action
        off += p.m
    total = build_module(ring, orders, action)
    embs, projs, masks = [], [], []
    for p, o in zip(parts, offs):
        We = np.zeros((p.m, m), dtype=np.int64)
        We[:, o:o + p.m] = np.eye(p.m, dtype=np.int64)
        emb = Morphism(p, total, We)
        embs.append(emb)
        projs.append(Morphism(total, p, We.T.copy()))
        idx = np.atleast_1d(total.encode(p.coords_all @ We))
        masks.append(mask_from_indices(idx))
    return DirectSum(total, list(parts), embs, projs, masks)


def summand_masks(module):
    """Masks of all direct summands (each has a direct complement)."""
    lat = submodule_lattice(module)
    sizes = {s.mask: s.size for s in lat}
    out = []
    for s in lat:
        for c in lat:
            if s.mask & c.mask == 1 and s.size * c.size == module.size:
                out.append(s.mask)
                break
    return out


def decomposition_pairs(module):
    """All ordered pairs of masks (S, T) with S ⊕ T = M."""
    lat = submodule_lattice(module)
    out = []
    for s in lat:
        for t in lat:
            if s.mask & t.mask == 1 and s.size * t.size == module.size:
                out.append((s.mask, t.mask))
    return out


# ---------------------------------------------------------------------------
# subquotients as standalone modules
# ---------------------------------------------------------------------------

def _additive_gen_rows(sub):
    """Coordinate rows generating `sub` as an abelian group.

    Module generators g only span g*R after closing under the action; the
    rows g @ A_t over all ring generators t do span it additively (g itself
    is g*1, a combination of them).
    """
    module = sub.parent
    gc = sub.gen_coords
    if gc.shape[0] == 0 or module.m == 0:
        return []
    rows = np.concatenate([gc @ module.action[t] for t in range(module.ring.k)],
                          axis=0)
    rows = rows % module._orders_arr[None, :]
    return [list(map(int, r)) for r in rows]


def _mixed_radix_coords(orders):
    size = 1
    for d in orders:
        size *= int(d)
    m = len(orders)
    strides = np.ones(m, dtype=np.int64)
    for i in range(1, m):
        strides[i] = strides[i - 1] * orders[i - 1]
    idx = np.arange(size, dtype=np.int64)
    out = np.zeros((size, m), dtype=np.int64)
    for i in range(m):
        out[:, i] = (idx // strides[i]) % orders[i]
    return out


def quotient_module(module, sub):
    """M/N as a standalone module plus the canonical epimorphism.

    Returns (Q, epi) with epi: M -> Q surjective and kernel exactly N.
    """
    if sub.parent is not module:
        raise RingMismatch("quotient of a submodule of a different module")
    m = module.m
    if m == 0:
        return module, identity_morphism(module)
    rel = _additive_gen_rows(sub)
    rel += [[module.orders[i] if j == i else 0 for j in range(m)] for i in range(m)]
    D, U, V, Uinv, Vinv = smith_normal_form(rel)
    d = [int(D[j][j]) for j in range(m)]
    kept = [j for j in range(m) if d[j] != 1]
    q_orders = tuple(d[j] for j in kept)
    Vn = np.array(V, dtype=np.int64)
    proj_W = Vn[:, kept]
    lifts = np.array([Vinv[j] for j in kept], dtype=np.int64).reshape(len(kept), m)
    q_action = np.zeros((module.ring.k, len(kept), len(kept)), dtype=np.int64)
    for t in range(module.ring.k):
        full = lifts @ module.action[t] @ Vn
        q_action[t] = full[:, kept]
    Q = build_module(module.ring, q_orders, q_action)
    epi = morphism_from_matrix(module, Q, proj_W)
    assert epi.is_surjective
    assert epi.kernel_mask == sub.mask  # kernel of the projection is exactly N
    return Q, epi


def submodule_as_module(sub):
    """A submodule rebuilt as a standalone module plus its embedding.

    Returns (S, emb) with emb: S -> parent injective and image exactly sub.
    """
    module = sub.parent
    m = module.m
    if m == 0:
        return module, identity_morphism(module)
    G = _additive_gen_rows(sub)
    G += [[module.orders[i] if j == i else 0 for j in range(m)] for i in range(m)]
    D, U, V, Uinv, Vinv = smith_normal_form(G)
    d = [int(D[j][j]) for j in range(m)]
    # lattice basis of the preimage of S: b_j = d_j * (row j of V^-1)
    B = [[d[j] * Vinv[j][t] for t in range(m)] for j in range(m)]
    # parent relations e_i in that basis: X[i][j] = e_i V[i][j] / d_j
    X = [[module.orders[i] * V[i][j] // d[j] for j in range(m)] for i in range(m)]
    D2, U2, V2, U2inv, V2inv = smith_normal_form(X)
    d2 = [int(D2[j][j]) for j in range(m)]
    kept = [j for j in range(m) if d2[j] != 1]
    s_orders = tuple(d2[j] for j in kept)
    gen_rows = mat_mul(V2inv, B)
    W_emb = np.array([gen_rows[j] for j in kept], dtype=np.int64).reshape(len(kept), m)
    if module.m:
        W_emb = W_emb % module._orders_arr[None, :]
    # enumerate S abstractly, map into the parent, and read the action back
    abs_coords = _mixed_radix_coords(s_orders)
    into_parent = np.atleast_1d(module.encode(abs_coords @ W_emb))
    assert mask_from_indices(into_parent) == sub.mask  # image is exactly S
    back = {int(p): a for a, p in enumerate(into_parent)}
    s_action = np.zeros((module.ring.k, len(kept), len(kept)), dtype=np.int64)
    for t in range(module.ring.k):
        acted = W_emb @ module.action[t]
        acted_idx = np.atleast_1d(module.encode(acted))
        for j, pidx in enumerate(acted_idx):
            s_action[t, j] = abs_coords[back[int(pidx)]]
    S = build_module(module.ring, s_orders, s_action)
    emb = morphism_from_matrix(S, module, W_emb)
    assert emb.is_injective
    return S, emb


def _section_through(sub_mod, emb, endo):
    """Project the parent onto sub_mod through an idempotent endo with image
    exactly emb's image: rows are sub_mod coordinates of endo(generators)."""
    module = emb.tgt
    back = {int(p): a for a, p in enumerate(emb.element_table)}
    abs_coords = sub_mod.coords_all
    W = np.zeros((module.m, sub_mod.m), dtype=np.int64)
    table = endo.element_table
    unit = np.eye(module.m, dtype=np.int64)
    for i in range(module.m):
        gen_index = int(module.encode(unit[i]))
        img = int(table[gen_index])
        W[i] = abs_coords[back[img]]
    return morphism_from_matrix(module, sub_mod, W)


# ---------------------------------------------------------------------------
# indecomposable decomposition and isomorphism
# ---------------------------------------------------------------------------

def indecomposable_decomposition(module):
    """Split into indecomposable parts, deterministically.

    Returns a list of (part, emb, proj) with emb: part -> module,
    proj: module -> part, proj∘emb = id, and the images forming an internal
    direct sum.  The zero module yields [].
    """
    got = module._cache.get("indec")
    if got is not None:
        return got
    out = []
    if module.size == 1:
        module._cache["indec"] = out
        return out
    split = _split_once(module)
    if split is None:
        out = [(module, identity_morphism(module), identity_morphism(module))]
    else:
        e, f = split  # complementary idempotent endomorphisms
        for endo in (e, f):
            part_sub = from_mask(module, _image_mask(endo), verify=False)
            part, emb = submodule_as_module(part_sub)
            proj = _section_through(part, emb, endo)
            for inner, inner_emb, inner_proj in indecomposable_decomposition(part):
                out.append((inner, inner_emb.then(emb), proj.then(inner_proj)))
    for part, emb, proj in out:
        assert emb.then(proj) == identity_morphism(part)
    module._cache["indec"] = out
    return out


def _image_mask(endo):
    mask = 0
    for v in np.unique(endo.element_table):
        mask |= 1 << int(v)
    return mask


def _split_once(module):
    """least nontrivial idempotent endo and its complement, or None"""
    ident = identity_morphism(module)
    for e in end_idempotents(module):
        if e.is_zero or e == ident:
            continue
        return e, ident - e
    return None


def _iso_between(src, tgt):
    """Search Hom(src, tgt) for a bijection, in deterministic chunks."""
    if src.size != tgt.size:
        return None
    H = hom_set(src, tgt)
    check_hom_bound("isomorphism search", H.size)
    mats = H.matrices()
    n = src.size
    chunk = max(1, 65536 // max(n, 1))
    coords = src.coords_all
    for lo in range(0, len(mats), chunk):
        block = mats[lo:lo + chunk]
        vals = np.einsum("xa,nab->nxb", coords, block)
        if tgt.m:
            vals %= tgt._orders_arr[None, None, :]
        tables = vals @ tgt.strides if tgt.m else np.zeros((len(block), n), dtype=np.int64)
        hit = np.nonzero((np.sort(tables, axis=1) ==
                          np.arange(n, dtype=np.int64)[None, :]).all(axis=1))[0]
        if len(hit):
            return Morphism(src, tgt, block[int(hit[0])])
    return None


_INDEC_REPS = {}   # ring id -> list of representative indecomposable modules
_REP_ID = {}       # module id -> (ring id, rep index)


def _profile(module):
    vals, counts = np.unique(module.element_orders, return_counts=True)
    return (module.size, module.invariant_factors,
            tuple(zip(map(int, vals), map(int, counts))))


def indec_rep_index(part):
    """Index of `part`'s isomorphism class in the per-ring registry."""
    got = _REP_ID.get(id(part))
    if got is not None:
        return got[1]
    reps = _INDEC_REPS.setdefault(id(part.ring), [])
    prof = _profile(part)
    for i, rep in enumerate(reps):
        if _profile(rep) != prof:
            continue
        if _iso_between(part, rep) is not None:
            _REP_ID[id(part)] = (id(part.ring), i)
            return i
    reps.append(part)
    i = len(reps) - 1
    _REP_ID[id(part)] = (id(part.ring), i)
    return i


def ks_signature(module):
    """Multiset of indecomposable isomorphism classes, as a sorted tuple."""
    got = module._cache.get("ks_sig")
    if got is None:
        got = tuple(sorted(indec_rep_index(p) for p, _, _ in
                           indecomposable_decomposition(module)))
        module._cache["ks_sig"] = got
    return got


def are_isomorphic(M, N, want_witness=True):
    """Isomorphism test via matched indecomposable parts.

    Returns (False, None) or (True, iso) — iso is a bijective Morphism when
    want_witness, else None.
    """
    if M.ring is not N.ring:
        raise RingMismatch("isomorphism needs modules over the same ring")
    if M is N:
        return True, (identity_morphism(M) if want_witness else None)
    if M.size != N.size or M.invariant_factors != N.invariant_factors:
        return False, None
    if ks_signature(M) != ks_signature(N):
        return False, None
    if not want_witness:
        return True, None
    parts_m = indecomposable_decomposition(M)
    parts_n = list(indecomposable_decomposition(N))
    used = [False] * len(parts_n)
    W = np.zeros((M.m, N.m), dtype=np.int64)
    for pm, _, proj in parts_m:
        placed = False
        for j, (pn, emb_n, _) in enumerate(parts_n):
            if used[j] or indec_rep_index(pn) != indec_rep_index(pm):
                continue
            iso = _iso_between(pm, pn)
            assert iso is not None  # same registry class must admit one
            W = W + proj.W @ iso.W @ emb_n.W
            used[j] = True
            placed = True
            break
        assert placed
    out = morphism_from_matrix(M, N, W)
    assert out.is_bijective
    return True, out
