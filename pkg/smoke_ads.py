import sys, time
sys.path.insert(0, "src")
import numpy as np
from modlab.rings import builtin_ring
from modlab.modules import regular_module, build_module
from modlab.decomp import direct_sum, quotient_module
from modlab.submodules import submodule_lattice, from_mask
from modlab.ads import (is_ads, is_ads_all, cs_family, ALL_METHODS,
                        annihilator_lifting_check, closed_sum_check,
                        complement_parametrization,
                        fully_invariant_intersection_check,
                        simple_ring_dichotomy_check, definitional_witness)
from modlab.errors import PreconditionFailed

t0 = time.time()

# 1. Z/12 regular: ADS by all six methods
z12 = regular_module(builtin_ring("zmod", 12))
v = is_ads_all(z12)
assert all(x.ok for x in v.values()), {m: x.ok for m, x in v.items()}
print("Z/12 all six ADS ok", {m: x.domain for m, x in v.items()})

# 2. Z/2 + Z/8 over Z/8: non-ADS by all six, witnesses replay
z8 = builtin_ring("zmod", 8)
rr8 = regular_module(z8)
lat8 = submodule_lattice(rr8)
two = next(s for s in lat8 if s.size == 2)
z2mod, _ = quotient_module(rr8, next(s for s in lat8 if s.size == 4))
m = direct_sum([z2mod, rr8]).module
for meth in ALL_METHODS:
    ver = is_ads(m, meth)
    assert not ver.ok, meth
    assert ver.witness is not None and ver.witness.replay(), meth
    print(f"  {meth}: witness {ver.witness.digest()} replays; detail keys {sorted(ver.witness.detail)}")
wit = definitional_witness(m)
print("Z2+Z8 definitional witness:", wit.digest(),
      "S idx", list(np.nonzero([(wit.s_mask >> i) & 1 for i in range(m.size)])[0]),
      "C idx", list(np.nonzero([(wit.c_mask >> i) & 1 for i in range(m.size)])[0]))

# tampered witness must NOT replay
from modlab.ads import AdsWitness
bad = AdsWitness(m, wit.s_mask, wit.t_mask, wit.t_mask)  # T is a direct complement
assert not bad.replay()
print("tampered witness rejected ok")

# 3. f2xy regular: ADS but not C1 (strictness witness)
fxy = regular_module(builtin_ring("local-f2xy"))
vv = is_ads_all(fxy)
assert all(x.ok for x in vv.values())
assert not cs_family(fxy, "C1")
assert not cs_family(fxy, "quasi_continuous")
print("f2xy regular: ADS by all six, C1 false (strict witness) ok")

# 4. CS family oracles
assert cs_family(rr8, "quasi_continuous") and cs_family(rr8, "continuous")
f2 = regular_module(builtin_ring("zmod", 2))
ss = direct_sum([f2, f2]).module
for p in ("C1", "C2", "C3", "quasi_continuous", "continuous"):
    assert cs_family(ss, p), p
print("CS family: Z/8 QC, (F2)^2 all ok")

# 5. complement parametrization over (F2)^2: B = span(e1) -> two complements
b_mask = None
for s in submodule_lattice(ss):
    if s.size == 2 and s.indices.tolist() == [0, 1]:
        b_mask = s.mask
c_mask = next(s.mask for s in submodule_lattice(ss)
              if s.size == 2 and s.mask & b_mask == 1)
fam = complement_parametrization(ss, b_mask, c_mask)
members, flag = fam
assert flag and len(members) == 2, (flag, [mm.mask for mm in members])
print("(F2)^2 parametrization: 2 members, exhaustive ok")

# theta = 0 recovers C itself
assert any(mm.mask == c_mask for mm in members)

# non-ADS cross-check: Z2+Z8, B = the Z/2 part
ds = direct_sum([z2mod, rr8])
famm = complement_parametrization(m, ds.masks[0], ds.masks[1])
assert not famm.matches_all_complements and famm.mismatches
print("Z2+Z8 parametrization mismatch signals non-ADS ok,",
      len(famm.members), "members", len(famm.mismatches), "mismatches")

# 6. fully invariant intersection
d, star, eq = fully_invariant_intersection_check(ss, b_mask, c_mask)
assert d.is_zero and star.is_zero and eq
z8z8 = direct_sum([rr8, rr8]).module
dd, ss2, eq2 = fully_invariant_intersection_check(
    z8z8, direct_sum([rr8, rr8]).masks[0], direct_sum([rr8, rr8]).masks[1])
assert eq2, (dd.size, ss2.size)
print("fully invariant: (F2)^2 D=X*=0; Z8+Z8 equality ok (|D| =", dd.size, ")")
try:
    fully_invariant_intersection_check(m, ds.masks[0], ds.masks[1])
    raise SystemExit("expected PreconditionFailed")
except PreconditionFailed:
    print("fully invariant refuses non-ADS ok")

# 7. annihilator lifting + closed sums
assert annihilator_lifting_check(z12)
assert annihilator_lifting_check(ss)
assert closed_sum_check(z8z8)
assert closed_sum_check(z12)
try:
    annihilator_lifting_check(m)
    raise SystemExit("expected PreconditionFailed")
except PreconditionFailed:
    pass
print("annihilator lifting (Z/12, (F2)^2) + closed sums (Z8+Z8, Z/12) ok")

# 8. simple ring dichotomy
m2 = builtin_ring("matrix", 2, 2)
assert simple_ring_dichotomy_check(m2)
assert simple_ring_dichotomy_check(builtin_ring("zmod", 2))
assert simple_ring_dichotomy_check(builtin_ring("gf", 4))
try:
    simple_ring_dichotomy_check(builtin_ring("zmod", 4))
    raise SystemExit("expected PreconditionFailed")
except PreconditionFailed:
    pass
print("dichotomy: M2(F2), F2, F4 pass; Z/4 refused ok")

# 9. semisimple modules are ADS by all methods (M2(F2) column sum)
col = next(s for s in submodule_lattice(regular_module(m2)) if s.size == 4)
from modlab.decomp import submodule_as_module
colm, _ = submodule_as_module(col)
big = direct_sum([colm, colm]).module
assert all(x.ok for x in is_ads_all(big).values())
print("M2(F2) semisimple sum ADS by all six ok")

print(f"ads OK in {time.time()-t0:.2f}s")
