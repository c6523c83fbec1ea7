"""A three-node diagram: two cuts, glued back in reverse order."""
from splicecover import corpus_path, cover, plumbing, splice

g = plumbing.parse(corpus_path("chain3.plumb").read_text())
gamma = splice.extract(g)
print(splice.serialize(gamma))
print("|H1| =", plumbing.h1_order(g))
for v in sorted(gamma.nodes):
    print(f"node {v}: e = {plumbing.node_euler_number(g, v)}")

for order in ([("v1", "v2"), ("v2", "v3")], [("v2", "v3"), ("v1", "v2")]):
    records = []
    result = cover.universal_abelian_cover(gamma, order, records)
    print(f"\norder {order}: {len(result)} vertices")
    for r in records:
        if r["stage"] == "glue":
            print(f"  cut {r['cut_index']} solved at {r['node']}: e_v = {r['e_v']}, "
                  f"string {r['string']}")

a = cover.universal_abelian_cover(gamma, [("v1", "v2"), ("v2", "v3")])
b = cover.universal_abelian_cover(gamma, [("v2", "v3"), ("v1", "v2")])
print("\nsame graph either way:", plumbing.isomorphic(a, b))
