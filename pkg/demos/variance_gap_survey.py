"""How far is the variance from its bound?

For one pair the bound is attained exactly; with more pairs there is room.
This survey lists the relative gap for every two-pair branch with small
parameters and prints the tightest cases.
"""

from math import gcd

from curvespec import characteristic_data, hertling_check, spectrum_enumeration

rows = []
for k1 in range(3, 12):
    for n1 in range(2, k1):
        if gcd(k1, n1) != 1:
            continue
        for n2 in range(2, 4):
            for k2 in range(1, 8):
                if gcd(k2, n2) != 1:
                    continue
                pairs = [(k1, n1), (k2, n2)]
                s = spectrum_enumeration(characteristic_data(pairs))
                h = hertling_check(s, 2)
                assert h.holds
                rows.append((h.gap / h.bound, pairs, h))

rows.sort(key=lambda r: r[0])
print(f"{len(rows)} two-pair branches, all strictly inside the bound")
print("tightest ten (relative gap, pairs, variance, bound):")
for rel, pairs, h in rows[:10]:
    print(f"  {float(rel):.6f}  {pairs}  {h.variance}  {h.bound}")
print("loosest:", rows[-1][1], f"{float(rows[-1][0]):.4f}")
