"""
Size, removal and quality tables
================================

Rebuild the expert-evaluation tables from synthetic clusters whose counts
per bin are set by hand, then correlate quality with words removed.
"""

from morphkit.cluster_stats import analyze, render_text, size_distribution
from morphkit.clustering import Cluster, ClusterSet, cluster_id
from morphkit.lexicon import ClusterEvalRecord

sizes = {"NC": [25, 11, 6, 1, 4], "CON": [14, 20, 8, 5, 7]}
removed = {"NC": [33, 1, 5, 4, 12, 6, 5, 7, 0], "CON": [49, 1, 3, 9, 3, 3, 2, 7, 3]}
quality = {"NC": [12, 24, 25, 9, 3], "CON": [22, 29, 15, 11, 3]}
size_of_bin = [5, 15, 25, 35, 45]
removed_of_bin = [0, 3, 8, 15, 25, 35, 50, 70, 90]   # out of 100 members
levels = ["very_good", "good", "medium", "bad", "very_bad"]


def make(name, n):
    members = frozenset(f"{name}.{j}" for j in range(n))
    return Cluster(cluster_id(members), members, frozenset())


# the size table only needs clusters of the right sizes
sized, origins = [], {}
for group in ("NC", "CON"):
    for b, n in enumerate(sizes[group]):
        for i in range(n):
            c = make(f"{group}-size{b}-{i}", size_of_bin[b])
            sized.append(c)
            origins[c.id] = group
table = size_distribution(ClusterSet(sized), origins)
for label, nc, nc_pct, con, con_pct in table.rows():
    print(f"{label:<6} NC {nc_pct:>3}% ({nc:>2})   CON {con_pct:>3}% ({con:>2})")
print()

# evaluated clusters get 100 members each; best ratings go with fewest removals
clusters, records = [], []
for group in ("NC", "CON"):
    ks = [removed_of_bin[b] for b, n in enumerate(removed[group]) for _ in range(n)]
    qs = [levels[q] for q, n in enumerate(quality[group]) for _ in range(n)]
    for i, (k, q) in enumerate(zip(ks, qs)):
        c = make(f"{group}-eval{i}", 100)
        clusters.append(c)
        origins[c.id] = group
        records.append(ClusterEvalRecord(c.id, "expert1", q, frozenset(c.sorted_members()[:k])))

report = analyze(ClusterSet(clusters), records, origins)
# every evaluation cluster has 100 members, so only the removal and quality parts matter here
text = render_text(report)
print(text[text.index("Removed"):])
