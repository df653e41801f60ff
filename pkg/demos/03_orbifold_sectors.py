# Twisted sectors of P(1,3,4,4) and where they land in Chen-Ruan degree.

from crepant_kit.orbifold import cr_dimensions, sectors

for w in [(1, 3, 4, 4), (1, 1, 1, 3)]:
    print(f"P{w}")
    for s in sectors(w):
        print(f"  gamma={str(s.gamma):>4}  fixed P{s.sector_weights}  age {s.age}")
    dims = cr_dimensions(w)
    print("  Betti numbers:", dims, " total", sum(dims.values()))

# a non-Gorenstein space has a fractional age somewhere
try:
    cr_dimensions((1, 1, 2))
except ValueError as exc:
    print("P(1,1,2):", exc)
