"""
Scoring edge maps: perceptual measure vs the classical figure of merit
======================================================================

A displaced edge pixel costs the classical figure of merit immediately,
even when the displacement is a single pixel no human would notice.  The
perceptual measure only starts charging once the displacement crosses the
noticeability threshold (2 px by default).
"""

from jndbem import EdgeMap, jndbem, pratt_fom

W = H = 40

# a single ground-truth pixel and a candidate sliding away from it
for d in range(0, 10):
    gt = EdgeMap(W, H, frozenset({(15, 20)}))
    dc = EdgeMap(W, H, frozenset({(15 + d, 20)}))
    j = jndbem(gt, dc).value
    f = pratt_fom(gt, dc).value
    marker = "  <- imperceptible, only the classical score drops" if 0 < d < 2 else ""
    print(f"displacement {d} px   perceptual {j:.4f}   classical {f:.4f}{marker}")

print()

# spurious pixels dilute both scores through the denominator
gt = EdgeMap(W, H, frozenset({(10, 10), (11, 10), (12, 10)}))
for extra in range(0, 4):
    spurious = {(30, 30 + i) for i in range(extra)}
    dc = EdgeMap(W, H, frozenset(gt.edges | spurious))
    print(f"{extra} spurious pixels  perceptual {jndbem(gt, dc).value:.4f}   "
          f"classical {pratt_fom(gt, dc).value:.4f}")

print()

# a hole (missed pixel) costs 1/|gt| outright
dc = EdgeMap(W, H, frozenset(list(gt.edges)[:-1]))
print(f"one hole           perceptual {jndbem(gt, dc).value:.4f}   "
      f"classical {pratt_fom(gt, dc).value:.4f}")
