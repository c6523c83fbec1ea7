"""A cover whose nodes have genus 1, joined by fifteen equal chains."""
from collections import Counter

from splicecover import corpus_path, cover, plumbing, splice

gamma = splice.parse(corpus_path("genus1_gamma.splice").read_text())
print(splice.serialize(gamma))
records = []
g = cover.universal_abelian_cover(gamma, records=records)
glue = next(r for r in records if r["stage"] == "glue")
print("chain read from the -4 nodes:", glue["string"])
nodes = Counter((x.weight, x.genus) for v, x in g.vertices.items() if g.is_node(v))
print("nodes (weight, genus):", dict(nodes))
print("vertices:", len(g), " |det| of the intersection form:", plumbing.h1_order(g))
print("matches the bundled cover:",
      plumbing.isomorphic(g, plumbing.parse(corpus_path("genus1_cover.plumb").read_text())))
