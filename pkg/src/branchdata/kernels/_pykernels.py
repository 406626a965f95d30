"""Pure-Python tuple enumeration kernel; reference semantics for the compiled one."""

BACKEND = "python"


def _ncycles_and_type(p, d):
    seen = [False] * d
    lens = []
    for x in range(d):
        if not seen[x]:
            n = 0
            while not seen[x]:
                seen[x] = True
                x = p[x]
                n += 1
            lens.append(n)
    lens.sort(reverse=True)
    return lens


def _ncycles(p, d):
    seen = [False] * d
    n = 0
    for x in range(d):
        if not seen[x]:
            n += 1
            while not seen[x]:
                seen[x] = True
                x = p[x]
    return n


def _transitive(perms, d):
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = d
    for p in perms:
        for x in range(d):
            rx, ry = find(x), find(p[x])
            if rx != ry:
                parent[rx] = ry
                comps -= 1
                if comps == 1:
                    return True
    return comps == 1


def canonical_key(perms, d):
    """
    Minimal relabelled form of a transitive tuple under simultaneous
    conjugation, and the number of start points attaining it (the order
    of the centralizer).
    """
    if not 1 <= d <= 255:
        raise ValueError("canonical keys need 1 <= d <= 255")
    for i, p in enumerate(perms):
        if len(p) != d or any(not 0 <= y < d for y in p):
            raise ValueError("permutation %d is not a list of %d images in range" % (i, d))
    k = len(perms)
    best = None
    aut = 0
    label = [-1] * d
    order = [0] * d
    for start in range(d):
        for x in range(d):
            label[x] = -1
        label[start] = 0
        order[0] = start
        nxt = 1
        head = 0
        while head < nxt:
            x = order[head]
            head += 1
            for p in perms:
                y = p[x]
                if label[y] < 0:
                    label[y] = nxt
                    order[nxt] = y
                    nxt += 1
        if nxt < d:
            raise ValueError("canonical keys are defined for transitive tuples only")
        key = bytes(label[p[order[i]]] for p in perms for i in range(d))
        if best is None or key < best:
            best = key
            aut = 1
        elif key == best:
            aut += 1
    return best, aut


def _components(parent, g, comps):
    # union the cycles of g into a copy of parent; return the copy and the new count
    parent = list(parent)
    for x in range(len(g)):
        rx = x
        while parent[rx] != rx:
            rx = parent[rx]
        ry = g[x]
        while parent[ry] != ry:
            ry = parent[ry]
        if rx != ry:
            parent[rx] = ry
            comps -= 1
    return parent, comps


def _cut(genus_cut, d, comps, moved, rest):
    """
    Split a tuple of total branching ``V`` and genus ``g`` at a prefix whose
    group has ``comps`` orbits and whose product has ``d - moved`` cycles,
    with ``rest`` branching still to place. Gluing the two partial covers along the cycles of the prefix product
    needs ``2 (comps - 1) <= rest - moved``, and the prefix part alone
    already has genus ``(V - rest + moved - 2d + 2 comps) / 2 <= g``.
    """
    total, twice_genus = genus_cut
    return (2 * (comps - 1) > rest - moved
            or total - rest + moved - 2 * d + 2 * comps > twice_genus)


def enumerate_tuples(d, first, cands, offsets, last_type, rem, collect, stop_first,
                     max_nodes, lo=0, hi=-1, genus_cut=None):
    """
    Depth-first enumeration of ``(first, g_1, ..., g_r, last)`` with ``g_j``
    drawn from ``cands[offsets[j]:offsets[j+1]]`` and ``last`` the inverse of
    the prefix product, required to have cycle type ``last_type``.

    ``rem[j]`` bounds the branching still available after ``j`` middle
    factors are placed. When ``genus_cut = (V, twice_genus)`` is given,
    prefixes that cannot be completed to a transitive tuple of that genus
    are cut (see :func:`_cut`); ``tuples`` then only counts the surviving
    leaves. Returns ``(tuples, transitive, classes, solution, nodes,
    exhausted)``.
    """
    r = len(offsets) - 1
    first = list(first)
    last_type = list(last_type)
    tuples = 0
    transitive = 0
    classes = {} if collect else None
    nodes = 0
    exhausted = False
    solution = None
    stack = [first]
    chosen = [0] * r
    uf = None
    if genus_cut is not None:
        uf = [_components(list(range(d)), first, d)]
    if hi < 0:
        hi = offsets[1] - offsets[0] if r else 1

    def leaf(prefix):
        nonlocal tuples, transitive, solution
        if _ncycles_and_type(prefix, d) != last_type:
            return False
        tuples += 1
        perms = [first] + [list(cands[chosen[j]]) for j in range(r)] + [prefix]
        if not _transitive(perms, d):
            return False
        transitive += 1
        if collect:
            inv = [0] * d
            for x, y in enumerate(prefix):
                inv[y] = x
            perms[-1] = inv
            key, aut = canonical_key(perms, d)
            classes[key] = aut
        if stop_first:
            solution = list(chosen)
            return True
        return False

    if r == 0:
        if lo == 0 and hi > 0:
            leaf(first)
        return tuples, transitive, classes, solution, nodes, exhausted

    def rec(j):
        nonlocal nodes, exhausted
        prefix = stack[j]
        start, end = offsets[j], offsets[j + 1]
        if j == 0:
            start, end = offsets[0] + lo, offsets[0] + hi
        for c in range(start, end):
            nodes += 1
            if max_nodes and nodes > max_nodes:
                exhausted = True
                return True
            g = cands[c]
            nxt = [prefix[y] for y in g]
            moved = d - _ncycles(nxt, d)
            if moved > rem[j + 1]:
                continue
            if uf is not None:
                parent, comps = _components(uf[j][0], g, uf[j][1])
                if _cut(genus_cut, d, comps, moved, rem[j + 1]):
                    continue
                if len(uf) > j + 1:
                    uf[j + 1] = (parent, comps)
                else:
                    uf.append((parent, comps))
            chosen[j] = c
            if j + 1 == r:
                if leaf(nxt):
                    return True
            else:
                stack.append(nxt)
                stop = rec(j + 1)
                stack.pop()
                if stop:
                    return True
        return False

    rec(0)
    return tuples, transitive, classes, solution, nodes, exhausted
