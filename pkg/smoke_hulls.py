import sys, time
sys.path.insert(0, "src")
from modlab.rings import builtin_ring
from modlab.modules import regular_module
from modlab.decomp import direct_sum, quotient_module, submodule_as_module
from modlab.submodules import submodule_lattice
from modlab.hulls import nonsingular_summand_criterion, ads_interval, ads_hull
from modlab.bitsets import mask_size
from modlab.errors import PreconditionFailed

t0 = time.time()
z8 = builtin_ring("zmod", 8)
rr8 = regular_module(z8)
lat8 = submodule_lattice(rr8)
z2mod, _ = quotient_module(rr8, next(s for s in lat8 if s.size == 4))

# interval of Z/2 over Z/8: three uniform layers, all ADS
iv = ads_interval(z2mod)
print("interval sizes for Z/2 over Z/8:", [mask_size(n) for n in iv])
assert [mask_size(n) for n in iv] == [2, 4, 8]

rep = ads_hull(z2mod)
assert rep.hull_mask == rep.embedding.image_mask  # M ADS => hull = image
assert rep.hypothesis_holds and rep.hull_is_ads
print("Z/2 over Z/8 hull = image, hypothesis ok", rep.detail)

# the non-ADS witness module: hull inside E = Z/8 (+) Z/8
m = direct_sum([z2mod, rr8]).module
rep2 = ads_hull(m)
print("Z2+Z8: |E| =", rep2.envelope.size, "omega sizes",
      [mask_size(n) for n in rep2.omega], "hull size", mask_size(rep2.hull_mask),
      "hyp", rep2.hypothesis_holds, "hull ADS", rep2.hull_is_ads)
assert mask_size(rep2.hull_mask) >= m.size

# regular modules: hypothesis expected to hold (idempotents stay idempotent)
for name, params in (("zmod", (12,)), ("upper_triangular", (2, 2)),
                     ("local-f2xy", ())):
    rr = regular_module(builtin_ring(name, *params))
    rep3 = ads_hull(rr)
    print(f"{name}{params} regular hull: hyp {rep3.hypothesis_holds} "
          f"ads {rep3.hull_is_ads} omega {len(rep3.omega)}")
    assert rep3.hypothesis_holds and rep3.hull_is_ads

# nonsingular criterion
t2 = regular_module(builtin_ring("upper_triangular", 2, 2))
chk = nonsingular_summand_criterion(t2)
assert chk.ok, chk.witness
m2 = builtin_ring("matrix", 2, 2)
col, _ = submodule_as_module(next(s for s in submodule_lattice(regular_module(m2)) if s.size == 4))
ssim = direct_sum([col, col]).module
assert nonsingular_summand_criterion(ssim).ok
assert nonsingular_summand_criterion(regular_module(m2)).ok  # injective: degenerates
try:
    nonsingular_summand_criterion(z2mod)   # singular over Z/8
    raise SystemExit("expected PreconditionFailed")
except PreconditionFailed:
    print("singular module refused ok")
print(f"hulls OK in {time.time()-t0:.2f}s")
