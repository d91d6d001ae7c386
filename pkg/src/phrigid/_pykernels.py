"""Pure-Python versions of the subset kernels.

Every table is indexed by an edge-subset bitmask over ``m`` edges, so tables
have length ``2**m``.  The compiled module ``_kernels`` mirrors these
functions one for one and must return identical values.
"""


def union_popcount(vmasks, mark):
    """For every edge subset A, count the marked vertices touched by A."""
    m = len(vmasks)
    n = 1 << m
    acc = [0] * n
    out = [0] * n
    for a in range(1, n):
        low = a & -a
        acc[a] = acc[a ^ low] | vmasks[low.bit_length() - 1]
        out[a] = (acc[a] & mark).bit_count()
    return out


def partition_min(values, m):
    """Minimum of sum(values[B]) over set partitions of every subset.

    Returns ``(best, choice)`` where ``choice[A]`` is the block holding the
    lowest element of A in a minimizing partition.  Submasks are scanned in
    descending order and the first strict improvement wins.
    """
    n = 1 << m
    best = [0] * n
    choice = [0] * n
    for a in range(1, n):
        low = a & -a
        rest = a ^ low
        sub = rest
        top = None
        pick = 0
        while True:
            blk = sub | low
            v = values[blk] + best[a ^ blk]
            if top is None or v < top:
                top = v
                pick = blk
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[a] = top
        choice[a] = pick
    return best, choice


def superset_closure(flags, m):
    """out[A] = 1 iff flags[B] is set for some B contained in A."""
    out = [1 if f else 0 for f in flags]
    for i in range(m):
        bit = 1 << i
        for a in range(1 << m):
            if a & bit and out[a ^ bit]:
                out[a] = 1
    return out


def component_correction(m, eu, ev, kind, cls):
    """Sum over point components H of G[A] of 2 - min(2, #classes on H).

    ``kind`` is 0 for point-point edges, 1 for point-line edges (``eu`` the
    point, ``ev`` the line) and 2 for line-line edges.  ``cls[v]`` is the
    class id of line vertex v; two lines share a class when their loop
    vectors are parallel (or their slider abscissae coincide).
    """
    n = 1 << m
    out = [0] * n
    for a in range(1, n):
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(m):
            if not (a >> e) & 1 or kind[e] == 2:
                continue
            u = eu[e]
            parent.setdefault(u, u)
            if kind[e] == 0:
                w = ev[e]
                parent.setdefault(w, w)
                ru, rw = find(u), find(w)
                if ru != rw:
                    parent[max(ru, rw)] = min(ru, rw)
        seen = {}
        for x in parent:
            seen.setdefault(find(x), 0)
        for e in range(m):
            if (a >> e) & 1 and kind[e] == 1:
                r = find(eu[e])
                seen[r] |= 1 << cls[ev[e]]
        total = 0
        for bits in seen.values():
            total += 2 - min(2, bits.bit_count())
        out[a] = total
    return out
