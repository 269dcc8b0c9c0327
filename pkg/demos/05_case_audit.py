"""Auditing the 48 case systems behind the classification.

The registry is a data file (src/quadsemi/data/lemma_registry.json) holding
each system, its complete solution set, and the techniques that settle it.
This demo replays the whole audit: exhaustive bounded search against the
claims, residue obstructions, quartic curve point lists, and one of the
between-consecutive-squares arguments on a sample grid.
"""

from collections import Counter

from quadsemi import (
    modular_obstruction,
    quartic_curve_points,
    registry,
    sandwich_probe,
    solve_system_bounded,
    square_grid,
    verify_all,
    verify_lemma,
)

entries = registry()
print(f"registry: {len(entries)} entries")
tech = Counter(t.split(':')[0] for e in entries for t in e.techniques)
print("technique usage:", dict(sorted(tech.items())))

print("\n-- one entry in detail --")
e = next(x for x in entries if x.id == "case1.1")
print(f"{e.id}: family {e.system.family}, left {e.system.left}, "
      f"right {e.system.right}")
print("claimed:", [f.template for f in e.claimed])
print("solutions at bound 6:", sorted(solve_system_bounded(e.system, 6)))
print("verify at bound 50:", "match" if verify_lemma(e, 50).matched else "MISMATCH")

print("\n-- the full audit at bound 50 --")
results = verify_all(entries, bound=50)
print(f"{sum(r.matched for r in results)}/{len(results)} entries match")

print("\n-- modular obstructions --")
for entry in entries:
    for modulus in (4, 8):
        if f"mod{modulus}" in entry.techniques:
            res = modular_obstruction(entry, modulus)
            print(f"{entry.id}: no solutions mod {modulus} -> "
                  f"{'confirmed' if res.confirmed else 'REFUTED'}")

print("\n-- quartic curves behind the case analysis --")
for label, coeffs in [("y^2 = q^4 + 1", (1, 0, 1)),
                      ("y^2 = q^4 - 1", (1, 0, -1)),
                      ("y^2 = q^4 - q^2 + 1", (1, -1, 1)),
                      ("y^2 = q^4 + q^2 + 1", (1, 1, 1)),
                      ("y^2 = q^4 + q^2 + 2", (1, 1, 2)),
                      ("y^2 = q^4 + 2q^2 + 2", (1, 2, 2))]:
    pts = quartic_curve_points(*coeffs, bound=1000)
    print(f"{label}: {pts if pts else 'no affine points'} (|q| <= 1000)")

print("\n-- a between-consecutive-squares probe --")
report = sandwich_probe(
    expr=lambda s, t: t**4 - t * t + s * s,
    lower=lambda s, t: t * t - 1,
    upper=lambda s, t: t * t,
    region=lambda s, t: t * t > s * s >= 1,
    samples=square_grid(30),
)
print(f"(t^2-1)^2 < t^4 - t^2 + s^2 < (t^2)^2 on t^2 > s^2 >= 1: "
      f"{'holds' if report.passed else 'violated'} "
      f"at {report.points_checked} grid points")
