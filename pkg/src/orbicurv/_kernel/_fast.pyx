# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled enumeration kernels; mirrors orbicurv._kernel.pure exactly."""

from libc.stdlib cimport free, malloc

BACKEND = "fast"

MAX_EDGES = 62
MAX_SCAN_EDGES = 24

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef struct Ctx:
    int ne
    int *tails
    int *heads
    int *inc_start   # CSR over vertices, length nv + 1
    int *inc_edges


cdef int _spurless(Ctx *ctx, unsigned long long mask) nogil:
    cdef int i, v
    cdef int valence[62]
    cdef int touched[124]
    cdef int ntouched = 0
    # valence indexed by vertex id; only touched entries are valid
    for i in range(ctx.ne):
        if (mask >> i) & 1:
            v = ctx.tails[i]
            if valence_probe(valence, touched, &ntouched, v) == 0:
                pass
            valence[v] += 1
            v = ctx.heads[i]
            if valence_probe(valence, touched, &ntouched, v) == 0:
                pass
            valence[v] += 1
    for i in range(ntouched):
        if valence[touched[i]] < 2:
            return 0
    return 1


cdef inline int valence_probe(int *valence, int *touched, int *ntouched, int v) nogil:
    cdef int j
    for j in range(ntouched[0]):
        if touched[j] == v:
            return 1
    touched[ntouched[0]] = v
    ntouched[0] += 1
    valence[v] = 0
    return 0


cdef void _grow(
    Ctx *ctx,
    unsigned long long mask,
    unsigned long long banned,
    int *cands,
    int ncands,
    list out,
):
    cdef int idx, j, e, c, v, side, k
    cdef unsigned long long local_banned, new_mask, seen
    cdef int *next_cands
    if _spurless(ctx, mask):
        out.append(mask)
    local_banned = banned
    for idx in range(ncands):
        e = cands[idx]
        new_mask = mask | (<unsigned long long> 1 << e)
        seen = local_banned | new_mask
        for j in range(idx + 1, ncands):
            seen |= <unsigned long long> 1 << cands[j]
        next_cands = <int *> malloc(ctx.ne * sizeof(int))
        k = 0
        for j in range(idx + 1, ncands):
            next_cands[k] = cands[j]
            k += 1
        for side in range(2):
            v = ctx.tails[e] if side == 0 else ctx.heads[e]
            for j in range(ctx.inc_start[v], ctx.inc_start[v + 1]):
                c = ctx.inc_edges[j]
                if not (seen >> c) & 1:
                    next_cands[k] = c
                    k += 1
                    seen |= <unsigned long long> 1 << c
        _grow(ctx, new_mask, local_banned, next_cands, k, out)
        free(next_cands)
        local_banned |= <unsigned long long> 1 << e


def regular_edge_masks(int num_vertices, tails, heads):
    """Masks of nonempty connected spurless edge subsets, ascending."""
    cdef int ne = len(tails)
    if ne > MAX_EDGES:
        raise ValueError(f"too many edges for section enumeration ({ne})")
    if num_vertices > 62:
        raise ValueError("too many vertices for section enumeration")
    cdef int i, v, anchor, k, j, c
    cdef Ctx ctx
    ctx.ne = ne
    ctx.tails = <int *> malloc(max(ne, 1) * sizeof(int))
    ctx.heads = <int *> malloc(max(ne, 1) * sizeof(int))
    ctx.inc_start = <int *> malloc((num_vertices + 2) * sizeof(int))
    ctx.inc_edges = <int *> malloc(max(2 * ne, 1) * sizeof(int))
    cdef int *seed = <int *> malloc(max(ne, 1) * sizeof(int))
    out = []
    try:
        for i in range(ne):
            ctx.tails[i] = tails[i]
            ctx.heads[i] = heads[i]
        for v in range(num_vertices + 2):
            ctx.inc_start[v] = 0
        for i in range(ne):
            ctx.inc_start[ctx.tails[i] + 1] += 1
            if ctx.heads[i] != ctx.tails[i]:
                ctx.inc_start[ctx.heads[i] + 1] += 1
        for v in range(num_vertices):
            ctx.inc_start[v + 1] += ctx.inc_start[v]
        fill = <int *> malloc((num_vertices + 1) * sizeof(int))
        for v in range(num_vertices):
            fill[v] = ctx.inc_start[v]
        for i in range(ne):
            ctx.inc_edges[fill[ctx.tails[i]]] = i
            fill[ctx.tails[i]] += 1
            if ctx.heads[i] != ctx.tails[i]:
                ctx.inc_edges[fill[ctx.heads[i]]] = i
                fill[ctx.heads[i]] += 1
        free(fill)
        for anchor in range(ne):
            banned = (<unsigned long long> 1 << anchor) - 1
            seen = banned | (<unsigned long long> 1 << anchor)
            k = 0
            for side in range(2):
                v = ctx.tails[anchor] if side == 0 else ctx.heads[anchor]
                for j in range(ctx.inc_start[v], ctx.inc_start[v + 1]):
                    c = ctx.inc_edges[j]
                    if not (seen >> c) & 1:
                        seed[k] = c
                        k += 1
                        seen |= <unsigned long long> 1 << c
            _grow(&ctx, <unsigned long long> 1 << anchor, banned, seed, k, out)
    finally:
        free(ctx.tails)
        free(ctx.heads)
        free(ctx.inc_start)
        free(ctx.inc_edges)
        free(seed)
    out.sort()
    return out


cdef long long NEG_SENTINEL = -(<long long> 1 << 62)


cdef void _scan(
    int i,
    int ne,
    int num_vertices,
    unsigned long long cmask,
    long long wsum,
    int nonempty,
    unsigned long long *vbit,
    long long *weights,
    long long scale,
    long long *best,   # best[0] = max_neg, best[1] = max_pos
) nogil:
    cdef int covered, kmin, kmax
    cdef long long base, v0, v1, kstar
    if i == ne:
        covered = __builtin_popcountll(cmask)
        kmin = 0 if nonempty else 1
        kmax = num_vertices - covered
        if kmin > kmax:
            return
        base = (2 - covered) * scale + wsum
        v0 = base - kmin * scale
        if v0 < 0:
            if v0 > best[0]:
                best[0] = v0
        else:
            if v0 > best[1]:
                best[1] = v0
            kstar = base // scale + 1
            if kstar < kmin:
                kstar = kmin
            if kstar <= kmax:
                v1 = base - kstar * scale
                if v1 > best[0]:
                    best[0] = v1
        return
    _scan(i + 1, ne, num_vertices, cmask, wsum, nonempty, vbit, weights, scale, best)
    _scan(
        i + 1,
        ne,
        num_vertices,
        cmask | vbit[i],
        wsum + weights[i],
        1,
        vbit,
        weights,
        scale,
        best,
    )


def subgraph_curvature_extrema(int num_vertices, tails, heads, weights, scale):
    """Extremal scaled curvatures over all nonempty subgraphs."""
    cdef int ne = len(tails)
    if ne > MAX_SCAN_EDGES:
        raise ValueError(f"too many edges for subgraph scan ({ne})")
    if num_vertices > 62:
        raise ValueError("too many vertices for subgraph scan")
    cdef unsigned long long *vbit = <unsigned long long *> malloc(
        max(ne, 1) * sizeof(unsigned long long)
    )
    cdef long long *w = <long long *> malloc(max(ne, 1) * sizeof(long long))
    cdef long long best[2]
    cdef long long c_scale = scale
    cdef int i
    best[0] = NEG_SENTINEL
    best[1] = NEG_SENTINEL
    try:
        for i in range(ne):
            vbit[i] = (
                (<unsigned long long> 1 << <int> tails[i])
                | (<unsigned long long> 1 << <int> heads[i])
            )
            w[i] = weights[i]
        _scan(0, ne, num_vertices, 0, 0, 0, vbit, w, c_scale, best)
    finally:
        free(vbit)
        free(w)
    max_neg = None if best[0] == NEG_SENTINEL else int(best[0])
    max_pos = None if best[1] == NEG_SENTINEL else int(best[1])
    return max_neg, max_pos
