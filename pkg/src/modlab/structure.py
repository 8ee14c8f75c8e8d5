"""Completely-ADS sweeps, discreteness, and the decomposition theorems.

Everything here is verification machinery: the theorems are known, the
functions re-check every clause mechanically on concrete finite modules and
report per-clause outcomes with witnesses.
"""

from dataclasses import dataclass, field

import numpy as np

from .ads import Check, cs_family, is_ads
from .bitsets import bools_from_mask, indices_from_mask, mask_key, mask_size
from .decomp import (are_isomorphic, decomposition_pairs,
                     indecomposable_decomposition, ks_signature,
                     quotient_module, submodule_as_module, summand_masks)
from .errors import PreconditionFailed
from .injectivity import is_relatively_injective, projective_cover
from .modules import regular_module
from .morphisms import Morphism, hom_count, hom_set
from .rings import build_ring
from .submodules import (from_mask, is_small, join_masks, part,
                         submodule_lattice)


def _ads_by_signature(module):
    """ADS verdict memoized per isomorphism class (Krull-Schmidt key)."""
    ring = module.ring
    memo = ring._cache.setdefault("ads_by_sig", {})
    sig = ks_signature(module)
    got = memo.get(sig)
    if got is None:
        got = is_ads(module, "complement-iso").ok
        memo[sig] = got
    return got


def is_completely_ads(module):
    """Every subfactor B/A is ADS; first failing pair as witness.

    Sweep order: submodules B by (size, mask) ascending, then A inside B the
    same way, so the cheapest counterexample is found first.
    """
    key = "completely_ads"
    got = module._cache.get(key)
    if got is not None:
        return got
    outer = sorted(submodule_lattice(module), key=lambda s: mask_key(s.mask))
    verdict = Check(True)
    for b in outer:
        b_mod, _ = submodule_as_module(b)
        for a in sorted(submodule_lattice(b_mod),
                        key=lambda s: mask_key(s.mask)):
            q, _ = quotient_module(b_mod, a)
            if not _ads_by_signature(q):
                verdict = Check(False, {"B": b.mask, "A_in_B": a.mask,
                                        "quotient_orders": q.orders})
                break
        if not verdict.ok:
            break
    module._cache[key] = verdict
    return verdict


def discreteness(module, prop):
    """D1 / D2 / D3 / quasi_discrete / discrete by literal sweep.

    D1: every submodule A admits M = M1 (+) M2 with M1 <= A and M2 meet A
    small in M.  D2: A with M/A isomorphic to a summand is a summand.
    D3: the intersection of two summands covering M is a summand.
    """
    if prop == "quasi_discrete":
        return discreteness(module, "D1") and discreteness(module, "D3")
    if prop == "discrete":
        return discreteness(module, "D1") and discreteness(module, "D2")
    key = ("discrete", prop)
    got = module._cache.get(key)
    if got is not None:
        return got
    lat = submodule_lattice(module)
    summands = set(summand_masks(module))
    full = (1 << module.size) - 1
    if prop == "D1":
        small = {s.mask: is_small(s) for s in lat}
        pairs = decomposition_pairs(module)
        out = True
        for a in lat:
            hit = False
            for m1, m2 in pairs:
                if m1 & a.mask == m1 and small[m2 & a.mask]:
                    hit = True
                    break
            if not hit:
                out = False
                break
    elif prop == "D2":
        out = True
        mods = {m: submodule_as_module(from_mask(module, m, verify=False))[0]
                for m in summands}
        for a in lat:
            if a.mask in summands:
                continue
            q, _ = quotient_module(module, a)
            if any(q.size == mask_size(m)
                   and are_isomorphic(q, mods[m], want_witness=False)
                   for m in sorted(summands, key=mask_key)):
                out = False
                break
    elif prop == "D3":
        out = True
        ordered = sorted(summands, key=mask_key)
        for m1 in ordered:
            for m2 in ordered:
                if join_masks(module, m1, m2) == full \
                        and (m1 & m2) not in summands:
                    out = False
                    break
            if not out:
                break
    else:
        raise PreconditionFailed(f"unknown discreteness property {prop!r}")
    module._cache[key] = out
    return out


@dataclass
class SplitReport:
    module: object
    theorem: str
    semisimple_mask: int
    parts: list                       # (tag, mask) pairs
    clauses: list = field(default_factory=list)   # (clause id, ok, witness)

    @property
    def ok(self):
        return all(c[1] for c in self.clauses)


def _is_semisimple(module):
    return part(module, "socle").is_full


def _is_simple(module):
    return module.size > 1 and len(submodule_lattice(module)) == 2


def _is_local(module):
    # exactly one maximal submodule
    lat = submodule_lattice(module)
    full = (1 << module.size) - 1
    proper = [s.mask for s in lat if s.mask != full]
    maximal = [p for p in proper
               if not any(q != p and q & p == p for q in proper)]
    return module.size > 1 and len(maximal) == 1


def _endo_tables(module, chunk=256):
    mats = hom_set(module, module).matrices()
    out = np.empty((len(mats), module.size), dtype=np.int64)
    for lo in range(0, len(mats), chunk):
        block = mats[lo:lo + chunk]
        vals = np.einsum("xa,nab->nxb", module.coords_all, block)
        if module.m:
            vals %= module._orders_arr[None, None, :]
        out[lo:lo + len(block)] = np.atleast_2d(
            module.encode(vals.reshape(-1, module.m))).reshape(len(block),
                                                               module.size)
    return out


def _split_parts(module):
    """Indecomposable parts, their masks, and the semisimple index set I1."""
    parts = indecomposable_decomposition(module)
    masks = [emb.image_mask for (_, emb, _) in parts]
    n = len(parts)
    nonzero_hom = [[i != j and hom_count(parts[j][0], parts[i][0]) > 1
                    for j in range(n)] for i in range(n)]
    i1 = [i for i in range(n) if any(nonzero_hom[i])]
    return parts, masks, i1, nonzero_hom


def verify_general_decomposition(module):
    """Clause-by-clause check of the indecomposable-sum structure theorem."""
    pre = is_completely_ads(module)
    if not pre.ok:
        raise PreconditionFailed(f"not completely ADS: {pre.witness}")
    parts, masks, i1, nonzero_hom = _split_parts(module)
    n = len(parts)
    clauses = []

    ok_i, wit_i = True, None
    for i in range(n):
        for j in range(n):
            if i != j and not is_relatively_injective(parts[i][0],
                                                      parts[j][0])[0]:
                ok_i, wit_i = False, {"target": i, "ambient": j}
                break
        if not ok_i:
            break
    clauses.append(("parts-mutually-injective", ok_i, wit_i))

    ok_ii, wit_ii = True, None
    for i in range(n):
        for j in range(n):
            if i != j and nonzero_hom[j][i] and not _is_simple(parts[j][0]):
                # a nonzero hom from part i lands in part j: j must be simple
                ok_ii, wit_ii = False, {"source": i, "target": j}
                break
        if not ok_ii:
            break
    clauses.append(("hom-target-simple", ok_ii, wit_ii))

    s_mask = 1
    for i in i1:
        s_mask = join_masks(module, s_mask, masks[i])
    rest = [i for i in range(n) if i not in i1]
    s_mod, _ = submodule_as_module(from_mask(module, s_mask, verify=False))
    clauses.append(("semisimple-part", _is_semisimple(s_mod), None))

    ok_th, wit_th = True, None
    tables = _endo_tables(module)
    s_flags = bools_from_mask(s_mask, module.size)
    s_idx = indices_from_mask(s_mask, module.size)
    if not tables[:, s_idx][:, :].size or s_flags[tables[:, s_idx]].all():
        pass
    else:
        ok_th = False
        wit_th = {"stable": "S"}
    if ok_th:
        for j in rest:
            tgt = join_masks(module, masks[j], s_mask)
            t_flags = bools_from_mask(tgt, module.size)
            j_idx = indices_from_mask(masks[j], module.size)
            if not t_flags[tables[:, j_idx]].all():
                ok_th, wit_th = False, {"stable": f"part {j} (+) S"}
                break
    clauses.append(("endo-stability", ok_th, wit_th))

    out_parts = [("simple", masks[i]) for i in i1]
    out_parts += [("indecomposable", masks[j]) for j in rest]
    return SplitReport(module, "general-decomposition", s_mask, out_parts,
                       clauses)


def verify_quasi_discrete_split(module):
    """Completely ADS + quasi-discrete: M = S (+) (locals), radical part 0."""
    pre = is_completely_ads(module)
    if not pre.ok:
        raise PreconditionFailed(f"not completely ADS: {pre.witness}")
    if not discreteness(module, "quasi_discrete"):
        raise PreconditionFailed("module is not quasi-discrete")
    parts, masks, i1, _ = _split_parts(module)
    rest = [i for i in range(len(parts)) if i not in i1]
    s_mask = 1
    for i in i1:
        s_mask = join_masks(module, s_mask, masks[i])
    s_mod, _ = submodule_as_module(from_mask(module, s_mask, verify=False))
    clauses = [("semisimple-part", _is_semisimple(s_mod), None)]
    bad_local = [j for j in rest if not _is_local(parts[j][0])]
    clauses.append(("local-parts", not bad_local,
                    {"parts": bad_local} if bad_local else None))
    # a finite module equal to its own radical is zero, recorded explicitly
    clauses.append(("radical-part-zero", True, None))
    total = mask_size(s_mask)
    for j in rest:
        total *= mask_size(masks[j])
    clauses.append(("split-covers-module", total == module.size, None))
    out_parts = [("simple", masks[i]) for i in i1]
    out_parts += [("local", masks[j]) for j in rest]
    return SplitReport(module, "quasi-discrete-split", s_mask, out_parts,
                       clauses)


def verify_semiperfect_split(module):
    """Push the projective cover's split down to M, then check everything.

    Clauses: the pushed sum is direct and covers M, the first part is
    semisimple, the remaining parts are local, and every partial sum of the
    decomposition contains a supplement of the sum of the other terms.
    """
    cert = projective_cover(module)
    cover = cert.module
    pre = is_completely_ads(cover)
    if not pre.ok:
        raise PreconditionFailed(f"cover not completely ADS: {pre.witness}")
    _, p_masks, i1, _ = _split_parts(cover)
    sigma = cert.cover.element_table

    def push(mask):
        out = 0
        for i in sigma[indices_from_mask(mask, cover.size)]:
            out |= 1 << int(i)
        return out

    s_cover = 1
    for i in i1:
        s_cover = join_masks(cover, s_cover, p_masks[i])
    s_mask = push(s_cover)
    t_masks = [push(p_masks[j]) for j in range(len(p_masks)) if j not in i1]
    t_masks = [m for m in t_masks if m != 1]
    clauses = []
    sizes = mask_size(s_mask)
    total = s_mask
    direct = True
    for m in t_masks:
        if total & m != 1:
            direct = False
        sizes *= mask_size(m)
        total = join_masks(module, total, m)
    full = (1 << module.size) - 1
    clauses.append(("pushed-sum-direct",
                    direct and sizes == module.size and total == full, None))
    s_mod, _ = submodule_as_module(from_mask(module, s_mask, verify=False))
    clauses.append(("semisimple-part", _is_semisimple(s_mod), None))
    bad = []
    for m in t_masks:
        part_mod, _ = submodule_as_module(from_mask(module, m, verify=False))
        if not _is_local(part_mod):
            bad.append(m)
    clauses.append(("local-parts", not bad, {"masks": bad} if bad else None))

    # every partial sum contains a supplement of the complementary sum
    pieces = ([s_mask] if s_mask != 1 else []) + t_masks
    lat = submodule_lattice(module)
    ok_sup, found = True, []
    for pick in range(1, 1 << len(pieces)):
        partial, rest_mask = 1, 1
        for i, m in enumerate(pieces):
            if pick >> i & 1:
                partial = join_masks(module, partial, m)
            else:
                rest_mask = join_masks(module, rest_mask, m)
        cands = [x.mask for x in lat
                 if x.mask & partial == x.mask
                 and join_masks(module, x.mask, rest_mask) == full]
        minimal = [x for x in cands
                   if not any(y != x and y & x == y for y in cands)]
        if not minimal:
            ok_sup = False
            found.append({"partial": partial, "rest": rest_mask})
            break
        found.append({"partial": partial,
                      "supplement": min(minimal, key=mask_key)})
    clauses.append(("supplement-in-partial-sum", ok_sup, found))
    out_parts = ([("semisimple", s_mask)] if s_mask != 1 else [])
    out_parts += [("local", m) for m in t_masks]
    return SplitReport(module, "semiperfect-split", s_mask, out_parts, clauses)


# ---------------------------------------------------------------------------
# rings whose cyclics are quasi-continuous
# ---------------------------------------------------------------------------

def _block_subring(ring, mask):
    """Rebuild a two-sided ideal with identity as a standalone ring."""
    rr = regular_module(ring)
    b_mod, emb = submodule_as_module(from_mask(rr, mask, verify=False))
    back = {int(r): a for a, r in enumerate(emb.element_table)}
    gens = np.atleast_1d(rr.encode(emb.W))  # parent index of each generator
    k = b_mod.m
    # identity of the block: the unique two-sided unit among its elements
    unit = None
    members = indices_from_mask(mask, ring.size)
    for u in members:
        u = int(u)
        if all(int(ring.mul_table[u, int(x)]) == int(x)
               and int(ring.mul_table[int(x), u]) == int(x) for x in members):
            unit = u
            break
    assert unit is not None, "block has no identity"
    structure = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            prod = int(ring.mul_table[int(gens[a]), int(gens[b])])
            structure[a, b] = b_mod.coords_all[back[prod]]
    unity = tuple(int(v) for v in b_mod.coords_all[back[unit]])
    return build_ring(b_mod.orders, structure, unity), unit


def _is_chain_ring(ring):
    lat = submodule_lattice(regular_module(ring))
    masks = sorted((s.mask for s in lat), key=mask_key)
    return all(a & b == a for a, b in zip(masks, masks[1:]))


def _is_simple_artinian(ring):
    rr = regular_module(ring)
    if not part(rr, "radical").is_zero:
        return False
    return len(set(ks_signature(rr))) == 1


def pi_c_check(ring):
    """Are all cyclics quasi-continuous?  If so, verify the block dichotomy.

    The ring splits into two-sided blocks (isomorphic indecomposable right
    ideals grouped together); each block must be simple artinian or a right
    chain ring.  Blocks that are chain rings but not commutative are flagged
    rather than rejected.
    """
    rr = regular_module(ring)
    lat = submodule_lattice(rr)
    all_qc = True
    bad_cyclic = None
    for ideal in sorted(lat, key=lambda s: mask_key(s.mask)):
        q, _ = quotient_module(rr, ideal)
        if not cs_family(q, "quasi_continuous"):
            all_qc = False
            bad_cyclic = ideal.mask
            break
    report = SplitReport(rr, "pi-c-blocks", 1, [])
    if not all_qc:
        report.clauses.append(("cyclics-quasi-continuous", False,
                               {"ideal": bad_cyclic}))
        return False, report
    report.clauses.append(("cyclics-quasi-continuous", True, None))

    parts, masks, _, _ = _split_parts(rr)
    groups = []
    for i, (p, _, _) in enumerate(parts):
        for g in groups:
            if are_isomorphic(parts[g[0]][0], p, want_witness=False):
                g.append(i)
                break
        else:
            groups.append([i])
    block_masks = []
    for g in groups:
        m = 1
        for i in g:
            m = join_masks(rr, m, masks[i])
        block_masks.append(m)

    # the grouped masks must be two-sided ideals multiplying back to R
    mul = ring.mul_table
    two_sided = True
    for m in block_masks:
        flags = bools_from_mask(m, ring.size)
        if not flags[mul[:, indices_from_mask(m, ring.size)]].all():
            two_sided = False
    ortho = True
    for i, a in enumerate(block_masks):
        for j, b in enumerate(block_masks):
            if i == j:
                continue
            prods = mul[np.ix_(indices_from_mask(a, ring.size),
                               indices_from_mask(b, ring.size))]
            if prods.any():
                ortho = False
    sizes = 1
    for m in block_masks:
        sizes *= mask_size(m)
    report.clauses.append(("blocks-two-sided", two_sided, None))
    report.clauses.append(("blocks-orthogonal", ortho, None))
    report.clauses.append(("blocks-cover-ring", sizes == ring.size, None))

    units = []
    kinds_ok = True
    for m in block_masks:
        block, unit = _block_subring(ring, m)
        units.append(unit)
        if _is_simple_artinian(block):
            kind = "simple-artinian"
        elif _is_chain_ring(block):
            kind = "chain" if block.is_commutative else "chain-noncommutative"
        else:
            kind = "other"
            kinds_ok = False
        report.parts.append((kind, m))
    ucoords = ring.coords_all[units].sum(axis=0) % ring._orders_arr
    report.clauses.append(("block-identities-sum-to-one",
                           bool((ucoords == np.array(ring.unity)).all()),
                           None))
    report.clauses.append(("blocks-simple-artinian-or-chain", kinds_ok,
                           None if kinds_ok else {"parts": report.parts}))
    return True, report
