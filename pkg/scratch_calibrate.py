"""Scratch measurements used to freeze test tolerances; not shipped."""
import numpy as np

from moyalbench import grid as mg
from moyalbench import laws as ml


def naive_direct(f, g):
    """Literal double quadrature over the refined lattice, no regrouping."""
    grid = f.grid
    n, N = grid.n, grid.N
    M = 2 * N
    fh = mg.refine_half(f.values).ravel()
    gh = mg.refine_half(g.values).ravel()
    coords = np.array(
        [[(r - N) * grid.delta / 2.0 for r in np.unravel_index(k, (M,) * 2 * n)]
         for k in range(M ** (2 * n))]
    )
    c_W = ml.direct_prefactor(grid)
    out = np.empty(grid.shape, dtype=np.complex128)
    for idx in np.ndindex(grid.shape):
        X = np.asarray(grid.point(idx).coords)
        dY = X[None, :] - coords          # X - Y rows
        dZ = X[None, :] - coords          # X - Z rows
        # sigma(A, B) = b.alpha - a.beta, A rows dY, B rows dZ
        s = dZ[:, :n] @ dY[None, 0, 0:0].T if False else None
        sig = dZ[:, :n] @ dY[:, n:].T - (dY[:, :n] @ dZ[:, n:].T).T
        # sig[iZ? , iY?] careful: build sigma(dY_i, dZ_j) for all i, j
        sig = dZ[:, :n] @ dY[:, n:].T  # term b.alpha with A=dY_i (alpha), B=dZ_j (b): [j, i]
        sig = sig.T - dY[:, :n] @ dZ[:, n:].T  # [i, j] = sigma(dY_i, dZ_j)
        out[idx] = c_W * (fh[:, None] * np.exp(-2j * sig) * gh[None, :]).sum()
    return mg.SymbolField(grid, out)


def rel(a, b):
    return mg.relative_defect(a, b)


g8 = mg.make_grid(1, 8)
rng = np.random.default_rng(0)

f = mg.gaussian(g8, center=(0.3, -0.2))
h = mg.gaussian(g8, center=(-0.1, 0.4), amplitude=0.7 + 0.4j)
print("naive vs regrouped direct (gauss, N=8):", rel(ml.weyl_compose_direct(f, h), naive_direct(f, h)))

fr = mg.SymbolField(g8, rng.standard_normal(g8.shape) + 1j * rng.standard_normal(g8.shape))
hr = mg.SymbolField(g8, rng.standard_normal(g8.shape) + 1j * rng.standard_normal(g8.shape))
print("naive vs regrouped direct (random, N=8):", rel(ml.weyl_compose_direct(fr, hr), naive_direct(fr, hr)))

for N in (8, 16, 24, 32):
    gg = mg.make_grid(1, N)
    one = mg.constant_field(gg)
    gau = mg.gaussian(gg, center=(0.4, -0.3), amplitude=1.1 - 0.2j)
    d1 = rel(ml.weyl_compose_direct(one, gau), gau)
    d2 = rel(ml.weyl_compose_direct(gau, one), gau)
    print(f"direct unit law N={N}: left {d1:.3e} right {d2:.3e}")

for N in (8, 16, 32):
    gg = mg.make_grid(1, N)
    rng = np.random.default_rng(N)
    fr = mg.SymbolField(gg, rng.standard_normal(gg.shape) + 1j * rng.standard_normal(gg.shape))
    K = ml.weyl_op_kernel(fr)
    rt = ml.kernel_to_symbol(K)
    print(f"kernel round trip N={N}:", rel(rt, fr))
    one = mg.constant_field(gg)
    K1 = ml.weyl_op_kernel(one)
    ident = np.eye(gg.N) / gg.delta
    print(f"Op(1) vs I/delta N={N}:", np.abs(K1.matrix - ident).max())
    gau = mg.gaussian(gg, center=(0.4, -0.3), amplitude=1.1 - 0.2j)
    print(f"fast unit law N={N}:", rel(ml.weyl_compose_fast(one, gau), gau),
          rel(ml.weyl_compose_fast(gau, one), gau))

print()
for N in (8, 16, 32):
    gg = mg.make_grid(1, N)
    rng = np.random.default_rng(100 + N)
    # balanced-width gaussian pairs, grid-point-ish centers near origin
    def gpair():
        c1 = rng.uniform(-1.0, 1.0, 2)
        c2 = rng.uniform(-1.0, 1.0, 2)
        a1 = np.exp(1j * rng.uniform(0, 2 * np.pi))
        a2 = np.exp(1j * rng.uniform(0, 2 * np.pi))
        return (mg.gaussian(gg, center=c1, amplitude=a1),
                mg.gaussian(gg, center=c2, amplitude=a2))
    worst = 0.0
    for _ in range(5):
        fa, fb = gpair()
        worst = max(worst, rel(ml.weyl_compose_fast(fa, fb), ml.weyl_compose_direct(fa, fb)))
    print(f"fast vs direct (5 gaussian pairs) N={N}: {worst:.3e}")
    fr = mg.SymbolField(gg, rng.standard_normal(gg.shape) + 1j * rng.standard_normal(gg.shape))
    hr = mg.SymbolField(gg, rng.standard_normal(gg.shape) + 1j * rng.standard_normal(gg.shape))
    print(f"fast vs direct (random)        N={N}: "
          f"{rel(ml.weyl_compose_fast(fr, hr), ml.weyl_compose_direct(fr, hr)):.3e}")

print()
for N in (16, 32):
    gg = mg.make_grid(1, N)
    rng = np.random.default_rng(7)
    fa = mg.gaussian(gg, center=(0.4, -0.2), amplitude=1.0 + 0.3j)
    fb = mg.gaussian(gg, center=(-0.3, 0.5), amplitude=0.8 - 0.5j)
    Kc = ml.weyl_op_kernel(mg.SymbolField(gg, np.conj(fa.values)))
    Kf = ml.weyl_op_kernel(fa)
    print(f"adjoint defect (gaussian) N={N}:", np.linalg.norm(Kc.matrix - Kf.matrix.conj().T) / np.linalg.norm(Kf.matrix))
    lhs = ml.weyl_compose_fast(
        mg.SymbolField(gg, np.conj(fb.values)), mg.SymbolField(gg, np.conj(fa.values))
    )
    rhs = mg.SymbolField(gg, np.conj(ml.weyl_compose_fast(fa, fb).values))
    print(f"involution antimorphism N={N}:", rel(lhs, rhs))
    print(f"crichi direct  N={N}:", ml.check_integral_identity(
        ml.CompositionLaw("d", ml.weyl_compose_direct, False, True), fa, fb))
    print(f"crichi fast    N={N}:", ml.check_integral_identity(ml.get_law("weyl"), fa, fb))
    law = ml.get_law("weyl")
    d = ml.check_cyclicity(law, fa, fb, mg.gaussian(gg, center=(0.1, 0.2)))
    print(f"cyclicity fast N={N}:", d)

gg = mg.make_grid(1, 16)
law = ml.get_law("weyl")
fa = mg.gaussian(gg, center=(0.4, -0.2), amplitude=1.0 + 0.3j)
Z = gg.point((10, 6))
th = ml.theta_translate(law, fa, Z)
tgt = mg.translate(fa, gg.point(gg.neg_index(Z.grid_index)))
print("theta vs shift N=16:", rel(th, tgt))
gg = mg.make_grid(1, 32)
fa = mg.gaussian(gg, center=(0.4, -0.2), amplitude=1.0 + 0.3j)
Z = gg.point((18, 13))
th = ml.theta_translate(law, fa, Z)
tgt = mg.translate(fa, gg.point(gg.neg_index(Z.grid_index)))
print("theta vs shift N=32:", rel(th, tgt))
