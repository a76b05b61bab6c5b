"""Pure-Python enumeration kernels (fallback for the compiled extension).

Two hot loops live here:

* ``regular_edge_masks`` enumerates edge subsets whose subgraph (on the
  covered vertices) is connected, spurless, and nonempty.  Only connected
  subsets are visited, via anchored growth, instead of the raw powerset.
* ``subgraph_curvature_extrema`` scans every edge subset once and closes
  over the number of extra isolated vertices analytically, yielding the
  extremal scaled curvatures over all nonempty subgraphs.

Angles enter as integers: ``weights[e]`` is ``scale * (1 - angle(e))`` for a
common denominator ``scale``, so all arithmetic is exact.
"""

from __future__ import annotations

BACKEND = "pure"

MAX_EDGES = 62
MAX_SCAN_EDGES = 22


def _spurless(mask: int, tails, heads) -> bool:
    valence: dict[int, int] = {}
    i = 0
    m = mask
    while m:
        if m & 1:
            valence[tails[i]] = valence.get(tails[i], 0) + 1
            valence[heads[i]] = valence.get(heads[i], 0) + 1
        m >>= 1
        i += 1
    return all(v >= 2 for v in valence.values())


def regular_edge_masks(num_vertices: int, tails, heads) -> list[int]:
    """Masks of nonempty connected spurless edge subsets, ascending."""
    ne = len(tails)
    if ne > MAX_EDGES:
        raise ValueError(f"too many edges for section enumeration ({ne})")
    incident: list[list[int]] = [[] for _ in range(num_vertices)]
    for i in range(ne):
        incident[tails[i]].append(i)
        if heads[i] != tails[i]:
            incident[heads[i]].append(i)
    out: list[int] = []

    def neighbours(e: int, excluded: int) -> list[int]:
        found = []
        seen = excluded
        for v in (tails[e], heads[e]):
            for c in incident[v]:
                if not (seen >> c) & 1:
                    found.append(c)
                    seen |= 1 << c
        return found

    def grow(mask: int, cands: list[int], banned: int):
        if _spurless(mask, tails, heads):
            out.append(mask)
        for idx, e in enumerate(cands):
            # include e; candidates before it stay excluded in this branch
            local_banned = banned
            for prev in cands[:idx]:
                local_banned |= 1 << prev
            new_mask = mask | (1 << e)
            extra = neighbours(e, local_banned | new_mask | _to_mask(cands[idx + 1 :]))
            grow(new_mask, cands[idx + 1 :] + extra, local_banned)

    for anchor in range(ne):
        banned = (1 << anchor) - 1
        seed = neighbours(anchor, banned | (1 << anchor))
        grow(1 << anchor, seed, banned)
    return sorted(out)


def _to_mask(items) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def subgraph_curvature_extrema(num_vertices: int, tails, heads, weights, scale: int):
    """Extremal scaled curvatures over all nonempty subgraphs.

    Returns ``(max_negative, max_nonnegative)``, each ``None`` when no
    subgraph attains a value of that sign.  The value of a subgraph with
    edge set ``S`` and ``k`` extra isolated vertices is
    ``(2 - |V(S)| - k) * scale + sum(weights[e] for e in S)``.
    """
    ne = len(tails)
    if ne > MAX_SCAN_EDGES:
        raise ValueError(f"too many edges for subgraph scan ({ne})")
    vbit = [(1 << tails[i]) | (1 << heads[i]) for i in range(ne)]
    total = 1 << ne
    cov = [0] * total
    wsum = [0] * total
    max_neg = None
    max_pos = None
    for mask in range(total):
        if mask:
            low = mask & -mask
            i = low.bit_length() - 1
            rest = mask ^ low
            cmask = cov[rest] | vbit[i]
            cov[mask] = cmask
            wsum[mask] = wsum[rest] + weights[i]
            covered = bin(cmask).count("1")
            kmin = 0
        else:
            covered = 0
            kmin = 1
        kmax = num_vertices - covered
        if kmin > kmax:
            continue
        base = (2 - covered) * scale + wsum[mask]
        v0 = base - kmin * scale
        if v0 < 0:
            if max_neg is None or v0 > max_neg:
                max_neg = v0
        else:
            if max_pos is None or v0 > max_pos:
                max_pos = v0
            kstar = base // scale + 1
            if kstar < kmin:
                kstar = kmin
            if kstar <= kmax:
                v1 = base - kstar * scale
                if max_neg is None or v1 > max_neg:
                    max_neg = v1
    return max_neg, max_pos
