"""Dual cube complexes of random wallspaces, and two ways to collapse them.

Collapsing hyperplanes of a CAT(0) complex should agree with the restriction
quotient that forgets the same walls, and both should preserve medians.

    python demos/random_wallspaces.py [n_seeds]
"""
import itertools
import sys

from spatial_cubes.collapse import collapse
from spatial_cubes.cubecomplex import median
from spatial_cubes.wallspace import random_wallspace, restriction_quotient, sageev

n = int(sys.argv[1]) if len(sys.argv) > 1 else 10
for seed in range(n):
    X = sageev(random_wallspace(seed)).complex
    F = set(range(0, len(X.hyperplanes), 2))
    c = collapse(X, F)
    R = restriction_quotient(X, [h for h in range(len(X.hyperplanes)) if h not in F])
    f = [c.vertex(v) for v in range(X.n_vertices)]
    triples = list(itertools.combinations(range(X.n_vertices), 3))
    ok = all(f[median(X, *t)] == median(c.range, *(f[v] for v in t)) for t in triples)
    print(f"seed {seed:2}: complex {str(X.counts()):18} collapse {str(c.range.counts()):14} "
          f"quotient {str(R.complex.counts()):14} medians kept on {len(triples)} triples: {ok}")
