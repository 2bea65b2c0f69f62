"""Pure-Python implementations of the hot loops.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and results.  Tables arrive as C-contiguous int64 numpy arrays; words for
reduction arrive as ``bytes`` (one byte per letter index).
"""


def assoc_witness(t):
    rows = t.tolist()
    n = len(rows)
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            rxy = rows[rx[y]]
            ry = rows[y]
            for z in range(n):
                if rxy[z] != rx[ry[z]]:
                    return (x, y, z)
    return None


def light_witness(t, gens):
    rows = t.tolist()
    n = len(rows)
    for g in gens.tolist():
        rg = rows[g]
        for x in range(n):
            rxg = rows[rows[x][g]]
            rx = rows[x]
            for y in range(n):
                if rxg[y] != rx[rg[y]]:
                    return (x, g, y)
    return None


def hom_witness(src, dst, f):
    s = src.tolist()
    d = dst.tolist()
    fm = f.tolist()
    n = len(s)
    for x in range(n):
        fx = d[fm[x]]
        sx = s[x]
        for y in range(n):
            if fm[sx[y]] != fx[fm[y]]:
                return (x, y)
    return None


def hom_failures(src, dst, f):
    s = src.tolist()
    d = dst.tolist()
    fm = f.tolist()
    n = len(s)
    count = 0
    for x in range(n):
        fx = d[fm[x]]
        sx = s[x]
        for y in range(n):
            if fm[sx[y]] != fx[fm[y]]:
                count += 1
    return count


def is_closed(t, members):
    rows = t.tolist()
    ms = members.tolist()
    inside = [False] * len(rows)
    for m in ms:
        inside[m] = True
    for x in ms:
        rx = rows[x]
        for y in ms:
            if not inside[rx[y]]:
                return False
    return True


def closure(t, seeds):
    rows = t.tolist()
    inside = [False] * len(rows)
    elems = []
    for s in seeds.tolist():
        if not inside[s]:
            inside[s] = True
            elems.append(s)
    # products of old*new and new*old until nothing new appears
    i = 0
    while i < len(elems):
        x = elems[i]
        for j in range(i + 1):
            y = elems[j]
            for p in (rows[x][y], rows[y][x]):
                if not inside[p]:
                    inside[p] = True
                    elems.append(p)
        i += 1
    return sorted(elems)


def _leftmost(w, lhs, start):
    best = -1
    bi = -1
    for i, pat in enumerate(lhs):
        p = w.find(pat, start)
        if p != -1 and (best == -1 or p < best):
            best = p
            bi = i
    return best, bi


def reduce_once(w, lhs, rhs):
    p, i = _leftmost(w, lhs, 0)
    if i < 0:
        return None
    return w[:p] + rhs[i] + w[p + len(lhs[i]):]


def normal_form(w, lhs, rhs, limit):
    """Return ``(word, steps, done)``; ``done`` is False when ``limit`` ran out."""
    if not lhs:
        return w, 0, True
    back = max(len(x) for x in lhs) - 1
    start = 0
    steps = 0
    while True:
        p, i = _leftmost(w, lhs, start)
        if i < 0:
            return w, steps, True
        if steps >= limit:
            return w, steps, False
        w = w[:p] + rhs[i] + w[p + len(lhs[i]):]
        steps += 1
        start = p - back if p > back else 0
