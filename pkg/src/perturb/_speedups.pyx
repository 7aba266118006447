# cython: language_level=3
"""Compiled kernels: anchored min-cut density scan and spanning-embed search.

Semantics mirror perturb._pure exactly (same arc layout, same traversal
orders), so the two backends return identical results.
"""

import time

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

BACKEND_NAME = "compiled"
EMBED_MAX_N = 64

EMBED_FOUND = 0
EMBED_NONE = 1
EMBED_TIMEOUT = 2

cdef long long INF = <long long>1 << 60
cdef int AUG_CAP = 512


cdef struct Net:
    int n
    int m
    int num_nodes
    int arc_count
    int src
    int snk
    long long lam
    long long scale
    int *head
    int *nxt
    int *to
    long long *cap
    long long *snapshot
    int *level
    int *cur
    int *queue
    int *stack
    int *parent


cdef int _net_alloc(Net *net, int n, int m) except -1:
    cdef int num_nodes = n + m + 2
    cdef int arc_count = 2 * (3 * m + n)
    net.n = n
    net.m = m
    net.num_nodes = num_nodes
    net.arc_count = arc_count
    net.src = n + m
    net.snk = n + m + 1
    net.head = <int *>malloc(num_nodes * sizeof(int))
    net.nxt = <int *>malloc(arc_count * sizeof(int))
    net.to = <int *>malloc(arc_count * sizeof(int))
    net.cap = <long long *>malloc(arc_count * sizeof(long long))
    net.snapshot = <long long *>malloc(arc_count * sizeof(long long))
    net.level = <int *>malloc(num_nodes * sizeof(int))
    net.cur = <int *>malloc(num_nodes * sizeof(int))
    net.queue = <int *>malloc(num_nodes * sizeof(int))
    net.stack = <int *>malloc(arc_count * sizeof(int))
    net.parent = <int *>malloc(num_nodes * sizeof(int))
    if (net.head == NULL or net.nxt == NULL or net.to == NULL or net.cap == NULL
            or net.snapshot == NULL or net.level == NULL or net.cur == NULL
            or net.queue == NULL or net.stack == NULL or net.parent == NULL):
        _net_free(net)
        raise MemoryError()
    return 0


cdef void _net_free(Net *net):
    if net.head != NULL: free(net.head)
    if net.nxt != NULL: free(net.nxt)
    if net.to != NULL: free(net.to)
    if net.cap != NULL: free(net.cap)
    if net.snapshot != NULL: free(net.snapshot)
    if net.level != NULL: free(net.level)
    if net.cur != NULL: free(net.cur)
    if net.queue != NULL: free(net.queue)
    if net.stack != NULL: free(net.stack)
    if net.parent != NULL: free(net.parent)


cdef void _add_arc(Net *net, int a, int x, int y, long long c) nogil:
    net.to[a] = y
    net.cap[a] = c
    net.nxt[a] = net.head[x]
    net.head[x] = a
    net.to[a + 1] = x
    net.cap[a + 1] = 0
    net.nxt[a + 1] = net.head[y]
    net.head[y] = a + 1


cdef void _net_build(Net *net, list eu, list ev, long long lam, long long scale):
    cdef int i, j, v
    cdef int n = net.n, m = net.m
    net.lam = lam
    net.scale = scale
    for i in range(net.num_nodes):
        net.head[i] = -1
    for j in range(m):
        _add_arc(net, 2 * j, net.src, n + j, scale)
    for j in range(m):
        _add_arc(net, 2 * m + 4 * j, n + j, <int>eu[j], INF)
        _add_arc(net, 2 * m + 4 * j + 2, n + j, <int>ev[j], INF)
    for v in range(n):
        _add_arc(net, 6 * m + 2 * v, v, net.snk, lam)


cdef long long _dinic(Net *net, long long cutoff) nogil:
    cdef long long flow = 0, bottleneck
    cdef int i, x, y, a, v, qh, qt, sp, pos
    cdef int num_nodes = net.num_nodes
    cdef int src = net.src, snk = net.snk
    while True:
        for i in range(num_nodes):
            net.level[i] = -1
        net.level[src] = 0
        net.queue[0] = src
        qh = 0
        qt = 1
        while qh < qt:
            x = net.queue[qh]
            qh += 1
            a = net.head[x]
            while a != -1:
                y = net.to[a]
                if net.cap[a] > 0 and net.level[y] < 0:
                    net.level[y] = net.level[x] + 1
                    net.queue[qt] = y
                    qt += 1
                a = net.nxt[a]
        if net.level[snk] < 0:
            return flow

        for i in range(num_nodes):
            net.cur[i] = net.head[i]
        sp = 0
        v = src
        while True:
            if v == snk:
                bottleneck = INF
                for i in range(sp):
                    a = net.stack[i]
                    if net.cap[a] < bottleneck:
                        bottleneck = net.cap[a]
                pos = 0
                for i in range(sp):
                    a = net.stack[i]
                    net.cap[a] -= bottleneck
                    net.cap[a ^ 1] += bottleneck
                    if net.cap[a] == 0 and pos == 0:
                        pos = i + 1
                flow += bottleneck
                sp = pos - 1
                v = net.to[net.stack[sp - 1]] if sp > 0 else src
                continue
            a = net.cur[v]
            while a != -1 and not (
                net.cap[a] > 0 and net.level[net.to[a]] == net.level[v] + 1
            ):
                a = net.nxt[a]
                net.cur[v] = a
            if a == -1:
                net.level[v] = -1
                if sp == 0:
                    break
                sp -= 1
                a = net.stack[sp]
                v = net.to[a ^ 1]
                net.cur[v] = net.nxt[a]
            else:
                net.stack[sp] = a
                sp += 1
                v = net.to[a]
        if flow >= cutoff:
            return flow


cdef long long _reroute(Net *net, int r, long long amount) nogil:
    """Push up to ``amount`` from r to the sink; -1 when the augmentation cap
    is hit (caller falls back to a from-scratch anchored flow)."""
    cdef long long pushed = 0, bottleneck
    cdef int augs = 0, i, x, y, a, qh, qt, found
    cdef int snk = net.snk
    while pushed < amount:
        augs += 1
        if augs > AUG_CAP:
            return -1
        for i in range(net.num_nodes):
            net.parent[i] = -1
        net.parent[r] = -2
        net.queue[0] = r
        qh = 0
        qt = 1
        found = 0
        while qh < qt and not found:
            x = net.queue[qh]
            qh += 1
            a = net.head[x]
            while a != -1:
                y = net.to[a]
                if net.cap[a] > 0 and net.parent[y] == -1:
                    net.parent[y] = a
                    if y == snk:
                        found = 1
                        break
                    net.queue[qt] = y
                    qt += 1
                a = net.nxt[a]
        if not found:
            return pushed
        bottleneck = amount - pushed
        y = snk
        while y != r:
            a = net.parent[y]
            if net.cap[a] < bottleneck:
                bottleneck = net.cap[a]
            y = net.to[a ^ 1]
        y = snk
        while y != r:
            a = net.parent[y]
            net.cap[a] -= bottleneck
            net.cap[a ^ 1] += bottleneck
            y = net.to[a ^ 1]
        pushed += bottleneck
    return pushed


cdef list _reachable_vertices(Net *net, int start):
    cdef int i, x, y, a, qh, qt
    for i in range(net.num_nodes):
        net.parent[i] = -1
    net.parent[start] = -2
    net.queue[0] = start
    qh = 0
    qt = 1
    while qh < qt:
        x = net.queue[qh]
        qh += 1
        a = net.head[x]
        while a != -1:
            y = net.to[a]
            if net.cap[a] > 0 and net.parent[y] == -1:
                net.parent[y] = a
                net.queue[qt] = y
                qt += 1
            a = net.nxt[a]
    return [i for i in range(net.n) if net.parent[i] != -1]


cdef void _rebuild_pristine(Net *net, int blocked_vertex) nogil:
    """Reset capacities to the zero-flow state; blocked_vertex >= 0 removes
    that vertex's sink arc."""
    cdef int j, v
    cdef int m = net.m
    for j in range(m):
        net.cap[2 * j] = net.scale
        net.cap[2 * j + 1] = 0
        net.cap[2 * m + 4 * j] = INF
        net.cap[2 * m + 4 * j + 1] = 0
        net.cap[2 * m + 4 * j + 2] = INF
        net.cap[2 * m + 4 * j + 3] = 0
    for v in range(net.n):
        net.cap[6 * m + 2 * v] = net.lam
        net.cap[6 * m + 2 * v + 1] = 0
    if blocked_vertex >= 0:
        net.cap[6 * m + 2 * blocked_vertex] = 0


def anchored_density_scan(int n, object eu_obj, object ev_obj,
                          long long lam_scaled, long long scale, object anchors_obj):
    """See perturb._pure.anchored_density_scan."""
    cdef list eu = [int(x) for x in eu_obj]
    cdef list ev = [int(x) for x in ev_obj]
    cdef list anchors = [int(x) for x in anchors_obj]
    cdef int m = len(eu)
    cdef Net net
    cdef long long full = <long long>m * scale
    cdef long long flow, load, pushed
    cdef int i, r, arc
    cdef object result = None

    net.head = NULL; net.nxt = NULL; net.to = NULL; net.cap = NULL
    net.snapshot = NULL; net.level = NULL; net.cur = NULL
    net.queue = NULL; net.stack = NULL; net.parent = NULL
    _net_alloc(&net, n, m)
    try:
        _net_build(&net, eu, ev, lam_scaled, scale)
        flow = _dinic(&net, full)
        if flow < full:
            return sorted(v for v in range(n) if net.level[v] >= 0)

        for i in range(len(anchors)):
            r = <int>anchors[i]
            arc = 6 * m + 2 * r
            load = lam_scaled - net.cap[arc]
            if load <= 0:
                continue  # the current max flow is already anchored-feasible
            net.cap[arc] = 0
            net.cap[arc ^ 1] = 0
            pushed = _reroute(&net, r, load)
            if pushed == -1:
                # from-scratch anchored flow; on failure its final state is
                # a valid maximum flow to keep drifting from
                _rebuild_pristine(&net, r)
                flow = _dinic(&net, full)
                if flow < full:
                    witness = {v for v in range(n) if net.level[v] >= 0}
                    witness.add(r)
                    result = sorted(witness)
                    break
            elif pushed < load:
                witness = set(_reachable_vertices(&net, r))
                witness.add(r)
                result = sorted(witness)
                break
            net.cap[arc] = lam_scaled  # re-enable, carrying no flow
            net.cap[arc ^ 1] = 0
    finally:
        _net_free(&net)
    return result


def spanning_embed_search(object h_bits_obj, object host_bits_obj, object deg_ok_obj,
                          object order_obj, double time_budget, long long node_budget):
    """See perturb._pure.spanning_embed_search.  Requires n <= 64."""
    cdef int n = len(order_obj)
    if n > 64:
        raise ValueError("compiled spanning_embed_search supports n <= 64")
    cdef unsigned long long h_bits[64]
    cdef unsigned long long host_bits[64]
    cdef unsigned long long deg_ok[64]
    cdef unsigned long long cand[65]
    cdef int order[64]
    cdef int phi[64]
    cdef int i, depth, x, y, v
    cdef unsigned long long used = 0, placed = 0, c, rest
    cdef long long nodes = 0
    cdef double deadline = 0.0

    for i in range(n):
        h_bits[i] = <unsigned long long>int(h_bits_obj[i])
        host_bits[i] = <unsigned long long>int(host_bits_obj[i])
        deg_ok[i] = <unsigned long long>int(deg_ok_obj[i])
        order[i] = <int>int(order_obj[i])
        phi[i] = -1
    if time_budget:
        deadline = time.monotonic() + time_budget

    x = order[0]
    cand[0] = deg_ok[x]  # nothing placed yet
    depth = 0
    while depth >= 0:
        if depth == n:
            return EMBED_FOUND, [phi[i] for i in range(n)]
        c = cand[depth]
        if c == 0:
            depth -= 1
            if depth >= 0:
                x = order[depth]
                used &= ~((<unsigned long long>1) << phi[x])
                placed &= ~((<unsigned long long>1) << x)
                phi[x] = -1
            continue
        v = __builtin_ctzll(c & (0 - c))
        cand[depth] = c & (c - 1)
        x = order[depth]
        phi[x] = v
        used |= (<unsigned long long>1) << v
        placed |= (<unsigned long long>1) << x
        nodes += 1
        if nodes % 8192 == 0:
            if time_budget and time.monotonic() > deadline:
                return EMBED_TIMEOUT, None
            if node_budget and nodes > node_budget:
                return EMBED_TIMEOUT, None
        depth += 1
        if depth < n:
            x = order[depth]
            c = deg_ok[x] & ~used
            rest = h_bits[x] & placed
            while rest and c:
                y = __builtin_ctzll(rest & (0 - rest))
                rest &= rest - 1
                c &= host_bits[phi[y]]
            cand[depth] = c
    return EMBED_NONE, None
