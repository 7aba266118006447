"""Pure-Python kernels: anchored min-cut density scan and spanning-embed search.

This module is the fallback used when the compiled extension is unavailable
(or when PERTURB_PURE=1).  Both backends implement identical semantics,
including iteration orders, so results are interchangeable; only the speed
differs.
"""

from __future__ import annotations

import time
from collections import deque

BACKEND_NAME = "pure"
EMBED_MAX_N = None  # arbitrary-width bitsets

_INF = 1 << 60
_AUG_CAP = 512  # per-anchor rerouting budget before the full-flow fallback

EMBED_FOUND = 0
EMBED_NONE = 1
EMBED_TIMEOUT = 2


class _SupplyNet:
    """Flow network for density probes: the source feeds ``scale`` per edge
    into an edge node joined to both endpoints, and every vertex pays
    ``lam`` to the sink.  min cut = scale*m - max over S of
    (scale*e(S) - lam*|S|)."""

    def __init__(self, n, eu, ev, lam, scale):
        self.n = n
        self.m = m = len(eu)
        self.lam = lam
        self.scale = scale
        self.num_nodes = n + m + 2
        self.src = n + m
        self.snk = n + m + 1
        arc_count = 2 * (3 * m + n)
        self.to = to = [0] * arc_count
        self.nxt = nxt = [-1] * arc_count
        self.head = head = [-1] * self.num_nodes
        self.cap = cap = [0] * arc_count

        def add_arc(a, x, y, c):
            to[a], cap[a] = y, c
            nxt[a] = head[x]
            head[x] = a
            to[a + 1], cap[a + 1] = x, 0
            nxt[a + 1] = head[y]
            head[y] = a + 1

        for j in range(m):
            add_arc(2 * j, self.src, n + j, scale)
        for j in range(m):
            add_arc(2 * m + 4 * j, n + j, eu[j], _INF)
            add_arc(2 * m + 4 * j + 2, n + j, ev[j], _INF)
        for v in range(n):
            add_arc(6 * m + 2 * v, v, self.snk, lam)
        self.level = [0] * self.num_nodes
        self.cur = [0] * self.num_nodes
        self.parent_arc = [-1] * self.num_nodes

    def sink_arc(self, v):
        return 6 * self.m + 2 * v

    def dinic(self, cutoff):
        head, nxt, to, cap = self.head, self.nxt, self.to, self.cap
        level, cur = self.level, self.cur
        src, snk, num_nodes = self.src, self.snk, self.num_nodes
        flow = 0
        queue = deque()
        while True:
            for i in range(num_nodes):
                level[i] = -1
            level[src] = 0
            queue.clear()
            queue.append(src)
            while queue:
                x = queue.popleft()
                a = head[x]
                while a != -1:
                    y = to[a]
                    if cap[a] > 0 and level[y] < 0:
                        level[y] = level[x] + 1
                        queue.append(y)
                    a = nxt[a]
            if level[snk] < 0:
                return flow

            for i in range(num_nodes):
                cur[i] = head[i]
            stack = []
            v = src
            while True:
                if v == snk:
                    bottleneck = min(cap[a] for a in stack)
                    pos = 0
                    for i, a in enumerate(stack):
                        cap[a] -= bottleneck
                        cap[a ^ 1] += bottleneck
                        if cap[a] == 0 and pos == 0:
                            pos = i + 1
                    flow += bottleneck
                    del stack[pos - 1 :]
                    v = to[stack[-1]] if stack else src
                    continue
                a = cur[v]
                while a != -1 and not (cap[a] > 0 and level[to[a]] == level[v] + 1):
                    a = nxt[a]
                    cur[v] = a
                if a == -1:
                    level[v] = -1  # dead end for this phase
                    if not stack:
                        break
                    a = stack.pop()
                    v = to[a ^ 1]
                    cur[v] = nxt[a]
                else:
                    stack.append(a)
                    v = to[a]
            if flow >= cutoff:
                return flow  # saturated: no strictly positive objective

    def reachable_vertices(self, start, skip_arc=-1):
        """Vertices reachable from ``start`` through positive residual arcs."""
        head, nxt, to, cap = self.head, self.nxt, self.to, self.cap
        seen = [False] * self.num_nodes
        seen[start] = True
        queue = deque([start])
        while queue:
            x = queue.popleft()
            a = head[x]
            while a != -1:
                y = to[a]
                if a != skip_arc and cap[a] > 0 and not seen[y]:
                    seen[y] = True
                    queue.append(y)
                a = nxt[a]
        return [v for v in range(self.n) if seen[v]]

    def rebuild_pristine(self, blocked_vertex=None):
        """Reset capacities to the zero-flow state, optionally with one
        vertex's sink arc removed."""
        cap, m, n = self.cap, self.m, self.n
        for j in range(m):
            cap[2 * j] = self.scale
            cap[2 * j + 1] = 0
            cap[2 * m + 4 * j] = _INF
            cap[2 * m + 4 * j + 1] = 0
            cap[2 * m + 4 * j + 2] = _INF
            cap[2 * m + 4 * j + 3] = 0
        for v in range(n):
            cap[6 * m + 2 * v] = self.lam
            cap[6 * m + 2 * v + 1] = 0
        if blocked_vertex is not None:
            cap[self.sink_arc(blocked_vertex)] = 0

    def reroute(self, r, amount):
        """Push up to ``amount`` from r to the sink through the residual.

        Returns the amount actually pushed; a shortfall means no anchored
        flow of full value exists.  Augmentation count is capped; -1 signals
        the cap was hit (caller falls back to a from-scratch computation).
        """
        head, nxt, to, cap = self.head, self.nxt, self.to, self.cap
        parent = self.parent_arc
        snk = self.snk
        pushed = 0
        augs = 0
        queue = deque()
        while pushed < amount:
            augs += 1
            if augs > _AUG_CAP:
                return -1
            for i in range(self.num_nodes):
                parent[i] = -1
            parent[r] = -2
            queue.clear()
            queue.append(r)
            found = False
            while queue and not found:
                x = queue.popleft()
                a = head[x]
                while a != -1:
                    y = to[a]
                    if cap[a] > 0 and parent[y] == -1:
                        parent[y] = a
                        if y == snk:
                            found = True
                            break
                        queue.append(y)
                    a = nxt[a]
            if not found:
                return pushed
            bottleneck = amount - pushed
            y = snk
            while y != r:
                a = parent[y]
                if cap[a] < bottleneck:
                    bottleneck = cap[a]
                y = to[a ^ 1]
            y = snk
            while y != r:
                a = parent[y]
                cap[a] -= bottleneck
                cap[a ^ 1] += bottleneck
                y = to[a ^ 1]
            pushed += bottleneck
        return pushed


def anchored_density_scan(n, eu, ev, lam_scaled, scale, anchors):
    """First vertex set S (|S| >= 2) found with scale*e(S) > lam_scaled*(|S|-1).

    One unanchored max flow decides the easy direction: if it cannot
    saturate every edge supply, the source-side vertices of the min cut are
    already such a set.  Otherwise each anchor r in turn has its sink arc
    removed and its sink load rerouted through the residual; a reroute that
    stalls proves that r lies in a dense set, returned as the vertex nodes
    of the stalled frontier.  A fully rerouted anchor fails; its sink arc is
    re-enabled (empty) and the drifted flow, still maximum, carries over to
    the next anchor, whose reroute then drains into the freshly freed
    capacity instead of re-gathering fragmented slack.  Returns the sorted
    witness or None when every anchor fails.
    """
    eu = [int(x) for x in eu]
    ev = [int(x) for x in ev]
    lam_scaled = int(lam_scaled)
    scale = int(scale)
    net = _SupplyNet(n, eu, ev, lam_scaled, scale)
    full = net.m * scale
    flow = net.dinic(full)
    if flow < full:
        return sorted(v for v in range(n) if net.level[v] >= 0)

    for r in anchors:
        r = int(r)
        arc = net.sink_arc(r)
        load = lam_scaled - net.cap[arc]
        if load <= 0:
            continue  # the current max flow is already anchored-feasible
        net.cap[arc] = 0
        net.cap[arc ^ 1] = 0
        pushed = net.reroute(r, load)
        if pushed == -1:
            # from-scratch anchored flow; on failure its final state is a
            # valid maximum flow to keep drifting from
            net.rebuild_pristine(blocked_vertex=r)
            flow = net.dinic(full)
            if flow < full:
                witness = {v for v in range(n) if net.level[v] >= 0}
                witness.add(r)
                return sorted(witness)
        elif pushed < load:
            witness = set(net.reachable_vertices(r))
            witness.add(r)
            return sorted(witness)
        net.cap[arc] = lam_scaled  # re-enable, carrying no flow
        net.cap[arc ^ 1] = 0
    return None


def spanning_embed_search(h_bits, host_bits, deg_ok, order, time_budget, node_budget):
    """Backtracking search for a spanning embedding given bitset adjacency.

    ``h_bits[x]``/``host_bits[y]`` are neighborhood bitmasks, ``deg_ok[x]``
    masks the host vertices whose degree is large enough to receive x, and
    ``order`` fixes the assignment sequence.  Candidates are tried in
    ascending host id.  Returns (status, mapping or None).
    """
    h_bits = [int(b) for b in h_bits]
    host_bits = [int(b) for b in host_bits]
    deg_ok = [int(b) for b in deg_ok]
    order = [int(x) for x in order]
    n = len(order)
    phi = [-1] * n
    cand = [0] * (n + 1)
    used = 0
    placed = 0
    nodes = 0
    deadline = time.monotonic() + time_budget if time_budget else None

    def initial_cand(depth):
        x = order[depth]
        c = deg_ok[x] & ~used
        rest = h_bits[x] & placed
        while rest and c:
            y = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            c &= host_bits[phi[y]]
        return c

    depth = 0
    cand[0] = initial_cand(0)
    while depth >= 0:
        if depth == n:
            return EMBED_FOUND, list(phi)
        c = cand[depth]
        if c == 0:
            depth -= 1
            if depth >= 0:
                x = order[depth]
                used &= ~(1 << phi[x])
                placed &= ~(1 << x)
                phi[x] = -1
            continue
        v = (c & -c).bit_length() - 1
        cand[depth] = c & (c - 1)
        x = order[depth]
        phi[x] = v
        used |= 1 << v
        placed |= 1 << x
        nodes += 1
        if nodes % 8192 == 0:
            if deadline is not None and time.monotonic() > deadline:
                return EMBED_TIMEOUT, None
            if node_budget and nodes > node_budget:
                return EMBED_TIMEOUT, None
        depth += 1
        if depth < n:
            cand[depth] = initial_cand(depth)
    return EMBED_NONE, None
