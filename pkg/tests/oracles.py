"""Independent reference implementations used only by the tests.

Each oracle follows the textbook definition directly (loops, arbitrary
precision, brute force) and shares no code with the package.
"""

from __future__ import annotations

import itertools
import math

import mpmath


def bedroc_mp(ranks, n_total, alpha=20.0, dps=50):
    """BEDROC from the RIE definition, evaluated with mpmath."""
    mpmath.mp.dps = dps
    a = mpmath.mpf(alpha)
    big_n = mpmath.mpf(n_total)
    n = mpmath.mpf(len(ranks))
    ra = n / big_n
    num = sum(mpmath.e ** (-a * mpmath.mpf(r) / big_n) for r in ranks)
    rand = (n / big_n) * (1 - mpmath.e ** (-a)) / (mpmath.e ** (a / big_n) - 1)
    rie = num / rand
    rie_max = (1 - mpmath.e ** (-a * ra)) / (ra * (1 - mpmath.e ** (-a)))
    rie_min = (1 - mpmath.e ** (a * ra)) / (ra * (1 - mpmath.e ** a))
    return (rie - rie_min) / (rie_max - rie_min)


def bedroc_closed_form_mp(ranks, n_total, alpha=20.0, dps=50):
    """BEDROC via the direct closed form (RIE scaled and shifted), mpmath."""
    mpmath.mp.dps = dps
    a = mpmath.mpf(alpha)
    big_n = mpmath.mpf(n_total)
    n = mpmath.mpf(len(ranks))
    ra = n / big_n
    s = sum(mpmath.e ** (-a * mpmath.mpf(r) / big_n) for r in ranks)
    rie = s / (n / big_n * (1 - mpmath.e ** (-a)) / (mpmath.e ** (a / big_n) - 1))
    factor = ra * mpmath.sinh(a / 2) / (mpmath.cosh(a / 2) - mpmath.cosh(a / 2 - a * ra))
    return rie * factor + 1 / (1 - mpmath.e ** (a * (1 - ra)))


def ef_brute(scores, labels, k):
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    hits = 0
    for i in order[:k]:
        hits += labels[i]
    return (hits / k) / (sum(labels) / len(labels))


def dcg_brute(scores, labels, k):
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    total = 0.0
    for pos, i in enumerate(order[:k], start=1):
        total += labels[i] / math.log2(pos + 1)
    return total


def topological_distances(n, edges):
    """All-pairs bond-path lengths by Floyd-Warshall; -1 when disconnected."""
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for a, b in edges:
        d[a][b] = d[b][a] = 1
    for k, i, j in itertools.product(range(n), repeat=3):
        if d[i][k] + d[k][j] < d[i][j]:
            d[i][j] = d[i][k] + d[k][j]
    return [[-1 if v == inf else int(v) for v in row] for row in d]


def sign_class(a, b):
    return (a < 0) + (b < 0)


def ac2d_pairs(dist, prop, max_path=10):
    """Ordered-pair loop version of the signed topological autocorrelation."""
    n = len(prop)
    bins = {(d, c): 0.0 for d in range(max_path + 1) for c in range(3)}
    for i in range(n):
        for j in range(n):
            d = dist[i][j]
            if 0 <= d <= max_path:
                bins[(d, sign_class(prop[i], prop[j]))] += abs(prop[i] * prop[j])
    out = [bins[(0, 0)], bins[(0, 2)]]
    for d in range(1, max_path + 1):
        out += [bins[(d, 0)], bins[(d, 1)], bins[(d, 2)]]
    return out


def ac3d_pairs(xyz, prop, lo=1.0, width=0.25, nbins=20):
    n = len(prop)
    out = [0.0] * (3 * nbins)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            r = math.dist(xyz[i], xyz[j])
            k = math.floor((r - lo) / width)
            if 0 <= k < nbins:
                out[3 * k + sign_class(prop[i], prop[j])] += abs(prop[i] * prop[j])
    return out


def radius_pairs(xyz, cutoff=6.0):
    """Directed pairs (i, j), i != j, with distance strictly below ``cutoff``."""
    out = set()
    for i in range(len(xyz)):
        for j in range(len(xyz)):
            if i != j and math.dist(xyz[i], xyz[j]) < cutoff:
                out.add((i, j))
    return out
