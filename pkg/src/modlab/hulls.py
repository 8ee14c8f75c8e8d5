"""ADS hulls inside the injective hull, and the nonsingular summand test.

The hull of M is the intersection of all ADS submodules N with
image(M) <= N <= E(M).  The interval is read inclusively, so when M itself
is ADS the hull is just (the image of) M, and E(M) always belongs to the
interval because injective modules are quasi-continuous.
"""

from dataclasses import dataclass, field

import numpy as np

from .ads import Check, is_ads
from .bitsets import bools_from_mask, indices_from_mask, mask_key, mask_size
from .decomp import decomposition_pairs, submodule_as_module, summand_masks
from .errors import PreconditionFailed
from .injectivity import injective_hull
from .morphisms import end_idempotents
from .submodules import from_mask, part, submodule_lattice


def nonsingular_summand_criterion(module):
    # For nonsingular M: ADS <=> every decomposition E(M) = E1 (+) E2 whose
    # E1-trace on M is a summand already splits M.  Returns the agreement
    # between that sweep and the definitional decider.
    if not part(module, "singular").is_zero:
        raise PreconditionFailed("criterion needs a nonsingular module")
    cert = injective_hull(module)
    env, iota = cert.module, cert.embedding
    m_mask = iota.image_mask
    # translate indices of the copy of M inside E back to M itself
    back = np.full(env.size, -1, dtype=np.int64)
    back[iota.element_table] = np.arange(module.size, dtype=np.int64)
    summands = set(summand_masks(module))

    def trace_in_m(e_mask):
        idx = indices_from_mask(e_mask & m_mask, env.size)
        out = 0
        for i in back[idx]:
            out |= 1 << int(i)
        return out

    lemma_holds = True
    bad = None
    for e1, e2 in sorted(decomposition_pairs(env),
                         key=lambda p: (mask_size(p[0]), p[0], p[1])):
        a1 = trace_in_m(e1)
        if a1 not in summands:
            continue
        a2 = trace_in_m(e2)
        if a1 & a2 != 1 or mask_size(a1) * mask_size(a2) != module.size:
            lemma_holds = False
            bad = {"E1": e1, "E2": e2, "trace1": a1, "trace2": a2}
            break
    agrees = lemma_holds == is_ads(module, "definition").ok
    return Check(agrees, None if agrees else {"sweep": lemma_holds, **(bad or {})})


@dataclass
class HullReport:
    module: object            # the base module M
    envelope: object          # E(M)
    embedding: object         # M -> E(M)
    hull_mask: int            # intersection of the omega members, inside E
    hull: object              # that submodule as a standalone module
    omega: list               # masks of the ADS submodules between M and E
    hypothesis_holds: bool
    hull_is_ads: bool
    detail: dict = field(default_factory=dict)


def ads_interval(module):
    """Masks of all ADS submodules N of E(M) with image(M) <= N <= E(M)."""
    cert = injective_hull(module)
    env, iota = cert.module, cert.embedding
    m_mask = iota.image_mask
    out = []
    for n in sorted(submodule_lattice(env), key=lambda s: mask_key(s.mask)):
        if n.mask & m_mask != m_mask:
            continue
        n_mod, _ = submodule_as_module(n)
        if is_ads(n_mod, "definition").ok:
            out.append(n.mask)
    # injective => quasi-continuous => ADS; the deciders must confirm it
    full = (1 << env.size) - 1
    assert full in out, "E(M) failed its own ADS check"
    return out


def ads_hull(module):
    """Intersect the ADS interval and check the stabilization hypothesis.

    hypothesis: every idempotent of End(hull), under *every* idempotent
    extension to End(E(M)), maps each interval member into itself.  When the
    hypothesis holds the hull must be ADS; a violation of that implication
    is fatal (it would falsify the machinery, not the input).
    """
    cert = injective_hull(module)
    env, iota = cert.module, cert.embedding
    m_mask = iota.image_mask
    omega = ads_interval(module)
    hull_mask = (1 << env.size) - 1
    for n in omega:
        hull_mask &= n
    assert hull_mask & m_mask == m_mask  # the hull still contains M
    hull_sub = from_mask(env, hull_mask, verify=True)
    hull_mod, emb = submodule_as_module(hull_sub)
    omega_flags = {n: bools_from_mask(n, env.size) for n in omega}
    omega_idx = {n: indices_from_mask(n, env.size) for n in omega}

    hypothesis_holds = True
    detail = {"idempotents": 0, "extensions": 0}
    env_idems = end_idempotents(env)
    for e in end_idempotents(hull_mod):
        detail["idempotents"] += 1
        glue = e.then(emb)
        extensions = [f for f in env_idems if emb.then(f) == glue]
        detail["extensions"] += len(extensions)
        for f in extensions:
            table = f.element_table
            for n in omega:
                if not omega_flags[n][table[omega_idx[n]]].all():
                    hypothesis_holds = False
                    detail["violation"] = {"e": e.W.tolist(),
                                           "extension": f.W.tolist(),
                                           "member": n}
                    break
            if not hypothesis_holds:
                break
        if not hypothesis_holds:
            break

    hull_is_ads = is_ads(hull_mod, "definition").ok
    if hypothesis_holds:
        assert hull_is_ads, "stabilization hypothesis held but hull is not ADS"
    return HullReport(module, env, iota, hull_mask, hull_mod, omega,
                      hypothesis_holds, hull_is_ads, detail)
