"""Hyp C narrow-width margin + seam set verification at N=32."""
import numpy as np

from moyalbench import grid as mg
from moyalbench import laws as ml

law_w = ml.get_law("weyl")
gg = mg.make_grid(1, 32)

print("--- hyp C weyl N=32, narrow widths")
for w in (0.7, 0.75, 0.8, 0.85):
    f1 = mg.gaussian(gg, center=(0.4, -0.2), width=w, amplitude=1.0 + 0.3j)
    f2 = mg.gaussian(gg, center=(-0.3, 0.5), width=w, amplitude=0.8 - 0.5j)
    lhs, rhs, d = ml.check_hypothesis_c(law_w, f1, f2)
    print(f"  w={w}: defect {d:.3e}")

print("--- seam verification at N=32 (predicted bad set only)")
f = mg.gaussian(gg, center=(0.4, -0.2), amplitude=1.0 + 0.3j)
N = 32
worst_seam_dev = 0.0
worst_generic = 0.0
rng = np.random.default_rng(3)
for _ in range(40):
    jz, jzeta = rng.integers(0, N, 2)
    bad = (jz == 0 and jzeta % 2 == 1) or (jzeta == 0 and jz % 2 == 1)
    Z = gg.point((int(jz), int(jzeta)))
    d = mg.relative_defect(
        ml.theta_translate(law_w, f, Z),
        mg.translate(f, gg.point(gg.neg_index((int(jz), int(jzeta))))),
    )
    if bad:
        worst_seam_dev = max(worst_seam_dev, abs(d - 2.0))
    else:
        worst_generic = max(worst_generic, d)
for jzeta in (1, 3, 15):
    Z = gg.point((0, jzeta))
    th = ml.theta_translate(law_w, f, Z)
    tr = mg.translate(f, gg.point(gg.neg_index((0, jzeta))))
    print(f"  Z=(0,{jzeta}): theta+translate rel {mg.relative_defect(th, mg.SymbolField(gg, -tr.values)):.3e}")
print(f"  max |defect-2| on sampled seam: {worst_seam_dev:.3e}")
print(f"  max defect off seam: {worst_generic:.3e}")
