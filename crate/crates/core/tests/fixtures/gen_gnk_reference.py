"""Reference data for G_{n,k}, computed independently of the Rust code.

Builds the graph from its definition with networkx (join of K_k with the
union of k+1 isolated vertices and K_{n-1-2k}, plus k-1 edges from one
isolated vertex into the clique), then records the edge count, the sorted
degree sequence and the spectral radius from a dense symmetric eigensolver.

Output format, one line per (n, k), whitespace separated:

    n k m rho d_1,d_2,...,d_n

with degrees in non-increasing order and rho printed with 17 significant
digits. Lines starting with '#' are comments.
"""
import networkx as nx
import numpy as np


def gnk(n, k):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    s = list(range(k))
    u = list(range(k, 2 * k + 1))
    c = list(range(2 * k + 1, n))
    for i, a in enumerate(s):
        for b in s[i + 1:]:
            g.add_edge(a, b)
        for b in u + c:
            g.add_edge(a, b)
    for i, a in enumerate(c):
        for b in c[i + 1:]:
            g.add_edge(a, b)
    for j in range(k - 1):
        g.add_edge(u[0], c[j])
    return g


def main():
    print("# n k m rho degrees(sorted, non-increasing)")
    for k in range(2, 6):
        for n in range(3 * k, 81):
            g = gnk(n, k)
            a = nx.to_numpy_array(g, nodelist=range(n))
            rho = np.linalg.eigvalsh(a)[-1]
            degs = sorted((d for _, d in g.degree()), reverse=True)
            print(n, k, g.number_of_edges(), f"{rho:.17g}", ",".join(map(str, degs)))


if __name__ == "__main__":
    main()
