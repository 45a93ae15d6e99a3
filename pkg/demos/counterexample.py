"""A weakly collapsible family that is not tree-like.

Blow up the Salvetti complex of <a,b,c | [a,b]> along the partition
{a,c} | {a^,c^} | {b,b^} and try collapsing each hyperplane on its own.

    python demos/counterexample.py
"""
from spatial_cubes.blowup import NotCarrierRetract, build_blowup, is_tree_like
from spatial_cubes.collapse import collapse, is_strong, is_weak
from spatial_cubes.cubecomplex import is_isomorphic
from spatial_cubes.raag import DefiningGraph, salvetti
from spatial_cubes.whitehead import enumerate_collections, enumerate_partitions, parse_partition

G = DefiningGraph.make("abc", [("a", "b")])
P = parse_partition(G, "a c | a^ c^")
B = build_blowup(G, [P])
X = B.complex
print(f"graph {G}, partition {P}")
print(f"blow-up: cells {X.counts()}, Euler characteristic {X.euler_characteristic()}")
for i, sq in enumerate(X.squares()):
    print(f"  square {i}: labels", sorted(B.label_name(h) for h in X.cube_axis_hyperplanes(2, i)))

parts = enumerate_partitions(G)
blowups = [build_blowup(G, [parts[i] for i in col]) for col in enumerate_collections(G)]

print("\nfamily  tree-like  weak   strong  range       range is a blow-up")
for h in range(len(X.hyperplanes)):
    name = B.label_name(h)
    try:
        tree = str(is_tree_like(B, {h}))
    except NotCarrierRetract:
        tree = "n/a"  # both b-edges are loops, so b has no product carrier
    c = collapse(B, {h})
    like = any(is_isomorphic(c.range, other.complex) is not None for other in blowups)
    print(f"{name:6}  {tree:9}  {str(is_weak(c)):5}  {str(is_strong(c)):6}  "
          f"{str(c.range.counts()):10}  {like}")

c = collapse(B, {B.hyperplane("c")})
print("\nThe c-family collapses strongly, yet its range has 2 squares where the"
      f" Salvetti complex has {salvetti(G).count(2)}: the range is not a blow-up.")
