"""Pure-Python search kernels.

Relations are passed as lists of bitmask rows: ``rel[r][i]`` has bit ``j``
set iff ``(i, j)`` belongs to relation ``r``.  The compiled module
``_csearch`` implements the same functions with the same search order.
"""

BOUNDARY = 254
DIAGONAL = 255


def _signature(rel, v, size):
    sig = []
    for rows in rel:
        out = bin(rows[v]).count("1")
        inc = sum((rows[u] >> v) & 1 for u in range(size))
        sig.append((out, inc, (rows[v] >> v) & 1))
    return tuple(sig)


def find_maps(a_rel, b_rel, na, nb, bijective, limit=0, forced_a=-1, forced_b=-1):
    """Enumerate maps ``a -> b`` preserving every relation in both directions.

    Pattern vertices are assigned in index order and host candidates are
    tried in index order, so results come out lexicographically.  With
    ``bijective`` the map must be onto (``na == nb``); otherwise it is an
    induced embedding.  ``limit=0`` returns every map.  A forced pair pins
    pattern vertex ``forced_a`` to host vertex ``forced_b``.
    """
    if bijective and na != nb:
        return []
    if na > nb:
        return []
    nrel = len(a_rel)
    if bijective:
        sig_b = [_signature(b_rel, j, nb) for j in range(nb)]
        cands = []
        for i in range(na):
            s = _signature(a_rel, i, na)
            cands.append([j for j in range(nb) if sig_b[j] == s])
    else:
        cands = []
        for i in range(na):
            loops = tuple((rows[i] >> i) & 1 for rows in a_rel)
            cands.append([j for j in range(nb)
                          if tuple((rows[j] >> j) & 1 for rows in b_rel) == loops])
    if forced_a >= 0:
        if forced_b not in cands[forced_a]:
            return []
        cands = [[forced_b] if i == forced_a else [j for j in c if j != forced_b]
                 for i, c in enumerate(cands)]

    results = []
    image = [0] * na

    def extend(d, used):
        if d == na:
            results.append(tuple(image))
            return bool(limit) and len(results) >= limit
        for j in cands[d]:
            if (used >> j) & 1:
                continue
            ok = True
            for r in range(nrel):
                arow = a_rel[r]
                brow = b_rel[r]
                ad = arow[d]
                bj = brow[j]
                for i in range(d):
                    mi = image[i]
                    if ((ad >> i) & 1) != ((bj >> mi) & 1):
                        ok = False
                        break
                    if ((arow[i] >> d) & 1) != ((brow[mi] >> j) & 1):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                image[d] = j
                if extend(d + 1, used | (1 << j)):
                    return True
        return False

    extend(0, 0)
    return results


def relate_table(nums, denom, n):
    """Arc index of every ordered pair of circle points ``nums[i]/denom``.

    Entry ``i*N + j`` is ``floor(n * frac((nums[i]-nums[j])/denom))``;
    the diagonal holds ``DIAGONAL`` and pairs whose difference is an exact
    multiple of ``1/n`` hold ``BOUNDARY``.
    """
    size = len(nums)
    out = bytearray()
    for i, a in enumerate(nums):
        row = [((a - b) % denom) * n for b in nums]
        row = [BOUNDARY if t % denom == 0 else t // denom for t in row]
        row[i] = DIAGONAL
        out.extend(row)
    return bytes(out)
