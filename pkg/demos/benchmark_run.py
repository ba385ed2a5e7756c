"""
Scoring the heuristics
======================

Accuracy is the share of graphs where a heuristic either finds a blocking
set or the graph is cohesive anyway. The same runs are available from the
command line as ``cohesion-lab enumerate`` and ``cohesion-lab sample``.
"""

from cohesion_lab import experiments

rep = experiments.cmd_enumerate(5, check_stability=True)
print(rep.to_csv())

# sampled graphs; randomness is split per (seed, n, index) so reruns match
small = experiments.cmd_sample(10, count=200, seed=1, check_stability=False)
for row in small.rows:
    print(row.method, f"accuracy={row.accuracy:.3f}", f"cohesive={row.c}/{row.s}")
