"""Resolution graph of the branch with pairs (3,2), (1,2), for example
y = x^{3/2} + x^{7/4}.

Prints the decorated table, the rupture data that feeds the spectrum, and
writes both graphs as DOT files to the current directory (render them
with ``dot -Tpng``).
"""

from pathlib import Path

from curvespec import decorate, export_dot
from curvespec.report import format_resolution
from curvespec.spectrum import steenbrink_classes

pairs = [(3, 2), (1, 2)]
dec = decorate(pairs)
print(format_resolution(dec))

# Only the two rupture divisors carry cohomology. At each one, count the
# twists c with a section and turn them into exponents 2 - c/m.
for r in dec.ruptures:
    cs = steenbrink_classes(r.m, r.neighbor_mults)
    print(f"{r.vertex.label}: m={r.m}, neighbors {r.neighbor_mults}, c in {cs}")

for kind, graph in (("enriques", dec.diagram), ("dual", dec.graph)):
    path = Path.cwd() / f"two_pairs_{kind}.dot"
    path.write_text(export_dot(graph, dec))
    print("wrote", path)
