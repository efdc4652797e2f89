"""Immutable graphs, girth computation, and the exact girth-cycle census.

The census runs two independent routes:

  * :func:`edge_girth_count` counts, for one edge, the simple paths of
    length g-1 between its endpoints that avoid the edge, by depth-bounded
    DFS over sorted adjacency with a visited mask.  Branches are pruned
    whenever the BFS distance to the target (precomputed once per edge,
    in the graph minus the edge) exceeds the remaining depth; this removes
    only provably dead branches, so the count is exact.
  * :func:`census_oracle` enumerates every girth cycle exactly once,
    rooted at its minimum-index vertex with the traversal direction fixed
    by second vertex < last vertex, and tallies the edges.

Both must agree edge-for-edge; the test suite enforces this on every graph
it touches.
"""

import json
import os
from dataclasses import dataclass

_TAGS = ("point", "line", "plain")


class Graph:
    """Immutable simple undirected graph with vertex provenance tags."""

    __slots__ = ("n", "adj", "adjset", "edges", "tags", "_eid")

    def __init__(self, n: int, edges, tags=None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            canon.add((u, v) if u < v else (v, u))
        self.edges = tuple(sorted(canon))
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.adjset = tuple(frozenset(a) for a in self.adj)
        if tags is None:
            tags = ("plain",) * n
        else:
            tags = tuple(tags)
            if len(tags) != n or any(t not in _TAGS for t in tags):
                raise ValueError("tags must be point/line/plain, one per vertex")
        self.tags = tags
        self._eid = {e: i for i, e in enumerate(self.edges)}

    # -- basic queries ---------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edge_id(self, u: int, v: int) -> int:
        return self._eid[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjset[u]

    def regular_degree(self):
        """The common degree, or None if the graph is irregular."""
        if self.n == 0:
            return None
        degs = {len(a) for a in self.adj}
        return degs.pop() if len(degs) == 1 else None

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = bytearray(self.n)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    stack.append(w)
        return count == self.n

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = [s]
            for u in queue:
                for w in self.adj[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


def induced_subgraph(graph: Graph, keep) -> Graph:
    """Subgraph on the given vertices, renumbered in the order supplied."""
    keep = list(keep)
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in graph.edges
             if u in remap and v in remap]
    return Graph(len(keep), edges, [graph.tags[v] for v in keep])


# ---------------------------------------------------------------------------
# girth
# ---------------------------------------------------------------------------

def girth(graph: Graph) -> int:
    """Length of a shortest cycle, by BFS from every vertex with the
    parent edge excluded.  Raises ValueError for acyclic graphs."""
    n = graph.n
    adj = graph.adj
    best = -1
    for s in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        queue = [s]
        for u in queue:
            du = dist[u]
            if best > 0 and 2 * du >= best:
                break  # any cycle seen from here on has length >= 2*du
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = du + dist[w] + 1
                    if best < 0 or length < best:
                        best = length
    if best < 0:
        raise ValueError("graph is acyclic, girth undefined")
    return best


def _bfs_dist(adj, n: int, source: int, skip_edge=None) -> list[int]:
    """BFS distances from source; skip_edge (a, b) is treated as absent."""
    dist = [n + 1] * n
    dist[source] = 0
    queue = [source]
    for u in queue:
        du1 = dist[u] + 1
        for w in adj[u]:
            if skip_edge and ((u, w) == skip_edge or (w, u) == skip_edge):
                continue
            if dist[w] > du1:
                dist[w] = du1
                queue.append(w)
    return dist


# ---------------------------------------------------------------------------
# per-edge census: depth-bounded DFS with distance pruning
# ---------------------------------------------------------------------------

def _count_edge(graph: Graph, u: int, v: int, g: int) -> int:
    adj = graph.adj
    adjset = graph.adjset
    dist = _bfs_dist(adj, graph.n, v, skip_edge=(u, v))
    length = g - 1
    if dist[u] < length:
        # a shorter u-v path closes a cycle through uv below length g
        raise ValueError(f"girth mismatch: edge ({u}, {v}) lies on a "
                         f"{dist[u] + 1}-cycle, shorter than g={g}")
    if dist[u] > length:
        return 0
    visited = bytearray(graph.n)
    visited[u] = 1

    def walk(x: int, remaining: int) -> int:
        if remaining == 1:
            return 1 if v in adjset[x] else 0
        count = 0
        r1 = remaining - 1
        for w in adj[x]:
            if w != v and not visited[w] and dist[w] <= r1:
                visited[w] = 1
                count += walk(w, r1)
                visited[w] = 0
        return count

    return walk(u, length)


def edge_girth_count(graph: Graph, edge, g: int) -> int:
    """Number of g-cycles (g = girth) containing the given edge."""
    u, v = edge
    if not graph.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    return _count_edge(graph, u, v, g)


_PAR = {}


def _census_init(graph, g):
    _PAR["graph"] = graph
    _PAR["g"] = g


def _census_chunk(ids):
    graph, g = _PAR["graph"], _PAR["g"]
    return [_count_edge(graph, *graph.edges[i], g) for i in ids]


def _oracle_chunk(roots):
    graph, g = _PAR["graph"], _PAR["g"]
    counts = [0] * len(graph.edges)
    for r in roots:
        _oracle_root(graph, g, r, counts)
    return counts


def _resolve_workers(workers, jobs: int) -> int:
    if workers is None:
        workers = os.cpu_count() or 1
    return max(1, min(workers, jobs))


def girth_cycle_census(graph: Graph, g: int, workers=None) -> list[int]:
    """Per-edge girth-cycle counts for every edge, in edge-id order.

    Counting is independent per edge, so the work is split over processes;
    results land in a list indexed by edge id and are identical for any
    worker count.
    """
    m = len(graph.edges)
    workers = _resolve_workers(workers, m // 64)
    if workers <= 1:
        return [_count_edge(graph, u, v, g) for u, v in graph.edges]
    chunks = [list(range(i, m, workers)) for i in range(workers)]
    out = [0] * m
    for ids, counts in zip(chunks, _pool_map(_census_chunk, chunks, graph, g)):
        for i, c in zip(ids, counts):
            out[i] = c
    return out


def _pool_map(fn, chunks, graph, g):
    import multiprocessing as mp

    try:
        ctx = mp.get_context("fork")
        with ctx.Pool(len(chunks), initializer=_census_init,
                      initargs=(graph, g)) as pool:
            return pool.map(fn, chunks)
    except (ImportError, OSError, ValueError):
        _census_init(graph, g)
        return [fn(c) for c in chunks]


# ---------------------------------------------------------------------------
# independent oracle: canonical enumeration of every girth cycle
# ---------------------------------------------------------------------------

def _cycles_from_root(graph: Graph, g: int, root: int):
    """Girth cycles whose minimum vertex is root, each exactly once.

    A cycle is reported as (root, x1, ..., x_{g-1}) with every xi > root
    and, to fix one of the two traversal directions, x1 < x_{g-1}.
    """
    n = graph.n
    adj = graph.adj
    adjset = graph.adjset
    # distances within {root} + {v > root}; pruning with them stays valid
    # because a completed cycle from root uses only such vertices
    dist = [n + 1] * n
    dist[root] = 0
    queue = [root]
    for u in queue:
        du1 = dist[u] + 1
        for w in adj[u]:
            if w > root and dist[w] > du1:
                dist[w] = du1
                queue.append(w)
    visited = bytearray(n)
    visited[root] = 1
    path = [root]

    def extend(x: int, remaining: int):
        if remaining == 1:
            first = path[1]
            for w in adj[x]:
                if w > first and not visited[w] and root in adjset[w]:
                    path.append(w)
                    yield tuple(path)
                    path.pop()
            return
        r1 = remaining - 1
        for w in adj[x]:
            # after appending w there are r1 vertices plus the closing edge
            # left, so w must be within r1 + 1 = remaining steps of root
            if w > root and not visited[w] and dist[w] <= remaining:
                visited[w] = 1
                path.append(w)
                yield from extend(w, r1)
                path.pop()
                visited[w] = 0

    # remaining counts vertices still to append; g vertices in total
    yield from extend(root, g - 1)


def iter_girth_cycles(graph: Graph, g: int):
    """Yield every g-cycle exactly once as a canonical vertex tuple."""
    for root in range(graph.n):
        yield from _cycles_from_root(graph, g, root)


def _oracle_root(graph: Graph, g: int, root: int, counts: list[int]) -> None:
    eid = graph.edge_id
    for cyc in _cycles_from_root(graph, g, root):
        prev = cyc[0]
        for x in cyc[1:]:
            counts[eid(prev, x)] += 1
            prev = x
        counts[eid(cyc[-1], cyc[0])] += 1


DEFAULT_ORACLE_CAP = 600


def census_oracle(graph: Graph, g: int, cap: int = DEFAULT_ORACLE_CAP,
                  workers: int = 1) -> list[int]:
    """Per-edge counts from canonical whole-cycle enumeration.

    Serial by default so the enumeration order is canonical; with several
    workers the roots are split and the tallies summed, which is
    order-independent.
    """
    if graph.n > cap:
        raise ValueError(f"oracle cap exceeded: {graph.n} > {cap}")
    counts = [0] * len(graph.edges)
    workers = _resolve_workers(workers, graph.n // 64)
    if workers <= 1:
        for r in range(graph.n):
            _oracle_root(graph, g, r, counts)
        return counts
    chunks = [list(range(i, graph.n, workers)) for i in range(workers)]
    for part in _pool_map(_oracle_chunk, chunks, graph, g):
        for i, c in enumerate(part):
            counts[i] += c
    return counts


# ---------------------------------------------------------------------------
# profile and classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GirthProfile:
    """Girth, per-edge girth-cycle counts, signatures, and classification.

    classification is one of 'egr' (all counts equal), 'agr' (one shared
    signature with exactly two distinct entries), 'girth-regular' (one
    shared signature, three or more entries), or 'none'.
    """

    n: int
    k: int
    girth: int
    edge_counts: tuple
    signature: tuple | None       # the shared per-vertex signature, if any
    classification: str
    lam: int | None
    total_cycles: int

    def signature_multiplicities(self):
        if self.signature is None:
            return None
        out = []
        for v in self.signature:
            if out and out[-1][0] == v:
                out[-1][1] += 1
            else:
                out.append([v, 1])
        return [tuple(x) for x in out]

    def to_json_dict(self) -> dict:
        d = {
            "n": self.n,
            "k": self.k,
            "girth": self.girth,
            "classification": self.classification,
            "total_girth_cycles": self.total_cycles,
        }
        if self.lam is not None:
            d["lambda"] = self.lam
        if self.signature is not None:
            d["signature"] = list(self.signature)
            d["signature_multiplicities"] = [list(x) for x in
                                             self.signature_multiplicities()]
        return d


def girth_profile(graph: Graph, workers=None) -> GirthProfile:
    """Full census of a regular graph: counts, signatures, classification."""
    k = graph.regular_degree()
    if k is None:
        raise ValueError("girth profile requires a regular graph")
    g = girth(graph)
    counts = girth_cycle_census(graph, g, workers)
    total_incidence = sum(counts)
    if total_incidence % g:
        raise AssertionError("edge counts do not tile into whole cycles")
    signatures = []
    for v in range(graph.n):
        sig = sorted(counts[graph.edge_id(v, w)] for w in graph.adj[v])
        signatures.append(tuple(sig))
    shared = signatures[0] if all(s == signatures[0] for s in signatures) else None
    distinct = set(counts)
    if shared is not None and len(distinct) == 1:
        cls, lam = "egr", counts[0]
    elif shared is not None and len(set(shared)) == 2:
        cls, lam = "agr", None
    elif shared is not None:
        cls, lam = "girth-regular", None
    else:
        cls, lam = "none", None
    return GirthProfile(graph.n, k, g, tuple(counts), shared, cls, lam,
                        total_incidence // g)


# ---------------------------------------------------------------------------
# export / import
# ---------------------------------------------------------------------------

GRAPH6_MAX_N = 68719476735


def _graph6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in range(30, -1, -6)])


def to_graph6(graph: Graph) -> bytes:
    if graph.n > GRAPH6_MAX_N:
        raise ValueError("graph too large for graph6")
    out = bytearray(_graph6_size(graph.n))
    bit, acc = 5, 0
    for j in range(1, graph.n):
        row = graph.adjset[j]
        for i in range(j):
            if i in row:
                acc |= 1 << bit
            if bit == 0:
                out.append(acc + 63)
                acc, bit = 0, 5
            else:
                bit -= 1
    if bit != 5:
        out.append(acc + 63)
    return bytes(out)


def from_graph6(data) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise ValueError("empty graph6 payload")
    vals = [b - 63 for b in data]
    if any(v < 0 or v > 63 for v in vals):
        raise ValueError("invalid graph6 byte")
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        body = vals[8:]
    bits = []
    for v in body:
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise ValueError("graph6 payload too short")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


def to_edgelist(graph: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in graph.edges)


def from_edgelist(text: str) -> Graph:
    edges = []
    hi = -1
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        u, v = map(int, line.split())
        edges.append((u, v))
        hi = max(hi, u, v)
    return Graph(hi + 1, edges)


def graph_to_json_dict(graph: Graph) -> dict:
    return {
        "n": graph.n,
        "edges": [list(e) for e in graph.edges],
        "tags": list(graph.tags),
    }


def graph_from_json_dict(d: dict) -> Graph:
    return Graph(d["n"], [tuple(e) for e in d["edges"]], d.get("tags"))


def export(graph: Graph, fmt: str) -> bytes:
    """Serialize a graph to graph6, edgelist, or json bytes."""
    if graph.n == 0:
        raise ValueError("refusing to export an empty graph")
    if fmt == "graph6":
        return to_graph6(graph)
    if fmt == "edgelist":
        return to_edgelist(graph).encode("ascii")
    if fmt == "json":
        return (json.dumps(graph_to_json_dict(graph), sort_keys=True,
                           separators=(",", ":")) + "\n").encode("ascii")
    raise ValueError(f"unknown format {fmt!r}")


def load_graph(path: str, fmt: str | None = None) -> Graph:
    """Read a graph file; format from the extension unless given."""
    if fmt is None:
        ext = os.path.splitext(path)[1].lower()
        fmt = {"": "edgelist", ".g6": "graph6", ".graph6": "graph6",
               ".json": "json"}.get(ext, "edgelist")
    with open(path, "rb") as fh:
        data = fh.read()
    if fmt == "graph6":
        return from_graph6(data)
    if fmt == "edgelist":
        return from_edgelist(data.decode("ascii"))
    if fmt == "json":
        return graph_from_json_dict(json.loads(data))
    raise ValueError(f"unknown format {fmt!r}")
