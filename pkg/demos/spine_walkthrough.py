"""Spine quotients of small defining graphs.

Objects are blow-ups up to isomorphism, arrows collapse partition
hyperplanes, and the nerve is the order complex of the arrows.

    python demos/spine_walkthrough.py
"""
import time

from spatial_cubes.raag import DefiningGraph
from spatial_cubes.spine import spine, to_dot

cases = {
    "F2": DefiningGraph.make("ab"),
    "<a,b,c|[a,b]>": DefiningGraph.make("abc", [("a", "b")]),
    "F3": DefiningGraph.make("abc"),
}
for title, G in cases.items():
    t = time.perf_counter()
    P, N = spine(G)
    print(f"== {title}: {len(P.partitions)} partitions, {len(P.collections)} collections "
          f"({time.perf_counter() - t:.1f}s)")
    for ob in P.objects:
        print(f"  object {ob.id}: {ob.grading} hyperplanes, cells {ob.blowup.complex.counts()}, "
              f"{len(ob.collections)} presentation(s)")
    print(f"  {len(P.arrows)} arrows; nerve f-vector {N.f_vector()}")
    if title == "F2":
        print(to_dot(P))
