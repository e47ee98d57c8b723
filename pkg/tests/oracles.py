"""Independent reference computations used by the tests.

Nothing here imports the engine's graph, stability or feasibility code; the
oracles work from raw node endpoint lists and closed-form genera.
"""

from itertools import permutations


def components_bfs(num_vertices, edges):
    """Connected components of a multigraph on 1..num_vertices by BFS."""
    adj = {v: [] for v in range(1, num_vertices + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen, comps = set(), []
    for start in adj:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def euler_pushforward_degree(ranks, g, node_endpoints, R, F_degree):
    """deg(nu_* F) from chi(nu_* F) = chi(F) on the partial normalization.

    The genus of the singular curve comes from its closed form, the genus of
    the normalization from the circuit rank of the surviving dual graph.
    """
    n = sum(ranks)
    s = len(ranks)
    g_curve = 1 + n * n * (g - 1)
    surviving = [ends for nid, ends in node_endpoints.items() if nid not in R]
    n_R = len(components_bfs(s, surviving))
    comp_genera = sum(1 + r * r * (g - 1) for r in ranks)
    # h^1(O) of the partial normalization: component genera plus loops of the surviving graph
    g_norm = comp_genera + len(surviving) - s + n_R
    h0_norm = n_R
    chi_F = F_degree + h0_norm - g_norm
    return chi_F - 1 + g_curve


def euler_total_degree(ranks, g, num_nodes, md):
    """deg L from 0 -> L -> nu_* nu^* L -> L|_D -> 0."""
    n = sum(ranks)
    g_curve = 1 + n * n * (g - 1)
    chi_pullback = sum(d + 1 - (1 + r * r * (g - 1)) for d, r in zip(md, ranks))
    chi_L = chi_pullback - num_nodes
    return chi_L - 1 + g_curve


def bitmask_status(md, ranks, g):
    s = len(md)
    failed = tight = False
    for mask in range(1, (1 << s) - 1):
        lhs = sum(md[i] for i in range(s) if mask >> i & 1)
        w = sum(ranks[i] for i in range(s) if mask >> i & 1)
        thr = (w * w - w) * (g - 1)
        failed |= lhs < thr
        tight |= lhs == thr
    if failed:
        return "unstable"
    return "strictly_semistable" if tight else "stable"


def brute_feasible(ranks, g, e, candidates=None):
    """Orderings J for which e passes the feasibility inequalities, by direct evaluation."""
    s = len(ranks)
    n = sum(ranks)
    good = []
    for J in candidates or permutations(range(1, s + 1)):
        dJ = []
        for pos, j in enumerate(J):
            later = sum(ranks[k - 1] for k in J[pos + 1:])
            d = e[j - 1] + (ranks[j - 1] ** 2 - ranks[j - 1]) * (g - 1)
            dJ.append(d + 2 * ranks[j - 1] * later * (g - 1))
        if sum(dJ) != (n * n - n) * (g - 1):
            continue
        ok = True
        for mask in range(1, (1 << s) - 1):
            lhs = sum(dJ[p] for p in range(s) if mask >> p & 1)
            r_I = sum(ranks[J[p] - 1] for p in range(s) if mask >> p & 1)
            if not lhs > (r_I * r_I - r_I) * (g - 1):
                ok = False
                break
        if ok:
            good.append(J)
    return good
