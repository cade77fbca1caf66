"""
How the scores respond to controlled damage
===========================================

Takes the default scene's exact ground truth and degrades copies of it in
measured ways: rigid translation, per-pixel jitter, random deletion,
spurious additions, thickening.  Each row prints both scores so the
response profiles can be compared.
"""

from jndbem import (
    AddSpurious,
    Dilate,
    Drop,
    Jitter,
    Translate,
    default_scene,
    degrade,
    jndbem,
    pratt_fom,
    render,
)

_, gt = render(default_scene())
print(f"ground truth: {len(gt)} pixels on a {gt.width}x{gt.height} canvas")
print()


def row(label, candidate):
    j = jndbem(gt, candidate).value
    f = pratt_fom(gt, candidate).value
    print(f"{label:<28} perceptual {j:.4f}   classical {f:.4f}")


row("identity", gt)
print()

# rigid shift: invisible at 1 px, then the distance weighting kicks in
for k in (1, 2, 3, 5, 7):
    row(f"translate by ({k}, 0)", degrade(gt, Translate(k, 0)))
print()

# jitter scatters pixels around their true positions
for r in (1, 2, 3):
    row(f"jitter radius {r}", degrade(gt, Jitter(max_r=r, seed=11)))
print()

# deletion opens holes; each hole costs a full share
for rate in (0.1, 0.25, 0.5):
    row(f"drop rate {rate}", degrade(gt, Drop(rate=rate, seed=3)))
print()

# additions dilute through the denominator
for count in (30, 90, 270):
    row(f"add {count} spurious", degrade(gt, AddSpurious(count=count, seed=5)))
print()

# thickening: extra pixels hug the truth, so the classical score stays
# high while the one-to-one measure pays for every unmatched duplicate
for radius in (1.0, 2.0):
    row(f"dilate radius {radius}", degrade(gt, Dilate(radius=radius)))
