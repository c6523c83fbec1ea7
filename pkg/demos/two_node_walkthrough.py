"""Cover of the two-node diagram (3,18 | 23-15 | 2,3), step by step.

Four different plumbing graphs share this splice diagram, so they share a
universal abelian cover.
"""
from splicecover import corpus_path, cover, plumbing, splice
from splicecover.brieskorn import building_block


def load(name):
    return plumbing.parse(corpus_path(name).read_text())


trees = [load(f"pair_{c}.plumb") for c in "abcd"]
for name, g in zip("abcd", trees):
    print(f"tree {name}: {len(g)} vertices, |H1| = {plumbing.h1_order(g)}")

gamma = splice.extract(trees[0])
print("\nsplice diagram:")
print(splice.serialize(gamma))

trace = cover.cut_all(gamma)
print("cut", trace.cuts[0].edge, "ideal generators", trace.cuts[0].generators)
for piece in trace.snapshots[1].component_diagrams():
    (node,) = piece.nodes
    print(f"\nbuilding block over {node}:")
    print(plumbing.serialize(building_block(piece)), end="")

records = []
g = cover.universal_abelian_cover(gamma, records=records)
glue = next(r for r in records if r["stage"] == "glue")
print(f"\nlambda = {glue['lambda']}, e/d = {glue['e_over_d']}, e_v = {glue['e_v']}")
print(f"{glue['d_prime']} chains, each contributing {glue['q']}/{glue['p']}: "
      f"string {glue['string']}")
print(f"\ncover: {len(g)} vertices")
print(plumbing.serialize(g), end="")

covers = [cover.cover_from_plumbing(t) for t in trees]
print("\nall four covers isomorphic:",
      all(plumbing.isomorphic(covers[0], c) for c in covers[1:]))
