# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled reduction loop.

Mirrors ``reducer.reduce_python`` step for step on raw half-edge arrays; the
two must produce identical sequences and counters.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memmove

cdef enum:
    CONVEX = 0
    GEOMETRIC = 1
    COMBINATORIAL = 2


cdef struct State:
    # half-edge h keeps its origin at he[2h] and its successor at he[2h+1];
    # one array keeps a flip inside few cache lines
    int *he
    long long *xs
    long long *ys
    int mode
    int *seq
    int n
    int k
    long long ops


cdef inline int ORG(State *S, int h) noexcept nogil:
    return S.he[2 * h]


cdef inline int NXT(State *S, int h) noexcept nogil:
    return S.he[2 * h + 1]


cdef inline void flip(State *S, int s) noexcept nogil:
    cdef int h = 2 * s
    cdef int t = h + 1
    cdef int *he = S.he
    cdef int h1 = he[2 * h + 1]
    cdef int h2 = he[2 * h1 + 1]
    cdef int t1 = he[2 * t + 1]
    cdef int t2 = he[2 * t1 + 1]
    he[2 * h] = he[2 * h2]
    he[2 * t] = he[2 * t2]
    he[2 * h + 1] = t2
    he[2 * t2 + 1] = h1
    he[2 * h1 + 1] = h
    he[2 * t + 1] = h2
    he[2 * h2 + 1] = t1
    he[2 * t1 + 1] = t


cdef inline long long orient(State *S, int p, int q, int r) noexcept nogil:
    return (S.xs[q] - S.xs[p]) * (S.ys[r] - S.ys[p]) - (S.ys[q] - S.ys[p]) * (S.xs[r] - S.xs[p])


cdef inline bint opposite(long long u, long long v) noexcept nogil:
    return (u > 0 and v < 0) or (u < 0 and v > 0)


cdef inline bint flippable(State *S, int s) noexcept nogil:
    cdef int h = 2 * s
    cdef int t = h + 1
    cdef int a, b, c, d, h1, t1
    h1 = NXT(S, h)
    t1 = NXT(S, t)
    if h1 < 0 or t1 < 0:
        return False
    # both sides in one face
    if t == h1 or t == NXT(S, h1):
        return False
    c = ORG(S, NXT(S, h1))
    d = ORG(S, NXT(S, t1))
    if c == d:
        return False
    if S.mode == GEOMETRIC:
        a = ORG(S, h)
        b = ORG(S, t)
        if not opposite(orient(S, c, d, a), orient(S, c, d, b)):
            return False
        if not opposite(orient(S, a, b, c), orient(S, a, b, d)):
            return False
    return True


cdef inline bint in_face(State *S, int g, int h) noexcept nogil:
    # h lies on the face of half-edge g (g interior)
    cdef int g1 = NXT(S, g)
    return h == g or h == g1 or h == NXT(S, g1)


cdef inline int overlap(State *S, int si, int sj) noexcept nogil:
    cdef int g0 = 2 * si
    cdef int g1 = g0 + 1
    cdef int h, k
    cdef int n = 0
    for k in range(2):
        h = 2 * sj + k
        if NXT(S, h) < 0:
            continue
        if (NXT(S, g0) >= 0 and in_face(S, g0, h)) or (NXT(S, g1) >= 0 and in_face(S, g1, h)):
            n += 1
    return n


cdef inline void seek(State *S, int k) noexcept nogil:
    if k > S.k:
        S.ops += k - S.k
    else:
        S.ops += S.k - k
    while S.k < k:
        flip(S, S.seq[S.k])
        S.k += 1
    while S.k > k:
        S.k -= 1
        flip(S, S.seq[S.k])


# outcomes
cdef enum:
    CANCELLED = 0
    TRANSPOSED = 1
    NOT_REDUCIBLE = 2


cdef int attempt(State *S, int p, int q) noexcept nogil:
    cdef int *seq = S.seq
    cdef int i = seq[p]
    cdef int a = p
    cdef int j, x, m
    cdef bint ok
    cdef long long ops = 0
    seek(S, p)
    while a + 1 < q:
        j = seq[a + 1]
        ops += 1
        if overlap(S, i, j) != 0 or not flippable(S, j):
            break
        flip(S, j)
        if not flippable(S, i):
            flip(S, j)
            break
        seq[a] = j
        seq[a + 1] = i
        a += 1
        S.k = a
    if q > a + 1:
        seek(S, q - 1)
        while q > a + 1:
            j = seq[q - 1]
            ops += 1
            if overlap(S, j, i) != 0 or not flippable(S, i):
                break
            flip(S, i)
            ok = flippable(S, j)
            flip(S, i)
            if not ok:
                break
            seq[q - 1] = i
            seq[q] = j
            q -= 1
            if q > a + 1:
                seek(S, q - 1)
        seek(S, a)
    S.ops += ops
    if q == a + 1:
        memmove(&seq[a], &seq[a + 2], (S.n - a - 2) * sizeof(int))
        S.n -= 2
        return CANCELLED
    if q == a + 2:
        j = seq[a + 1]
        if j != i and overlap(S, i, j) == 1 and flippable(S, j):
            flip(S, j)
            ok = flippable(S, i)
            flip(S, j)
            if ok:
                seq[a] = j
                seq[a + 1] = i
                memmove(&seq[a + 2], &seq[a + 3], (S.n - a - 3) * sizeof(int))
                S.n -= 1
                for m in range(a + 2, S.n):
                    x = seq[m]
                    if x == i:
                        seq[m] = j
                    elif x == j:
                        seq[m] = i
                return TRANSPOSED
    if a > p:
        seek(S, p)
        memmove(&seq[p + 1], &seq[p], (a - p) * sizeof(int))
        seq[p] = i
    return NOT_REDUCIBLE


def reduce_slots(org, nxt, xs, ys, int mode, seq):
    """Reduce a sequence of edge slots; returns ``(slots, counters)``.

    ``org``/``nxt`` are the half-edge arrays, ``xs``/``ys`` the vertex
    coordinates (may be empty outside the geometric setting). The inputs are
    copied and left untouched.
    """
    cdef int m = len(org)
    cdef int E = m // 2
    cdef int V = len(xs)
    cdef int f = len(seq)
    cdef State S
    cdef int *remaining
    cdef int p, q, i, r, outcome
    cdef long long attempts = 0, restarts = 0, cancellations = 0, transpositions = 0
    cdef Py_ssize_t k

    S.he = <int *> malloc(max(2 * m, 1) * sizeof(int))
    S.xs = <long long *> malloc(max(V, 1) * sizeof(long long))
    S.ys = <long long *> malloc(max(V, 1) * sizeof(long long))
    S.seq = <int *> malloc(max(f, 1) * sizeof(int))
    remaining = <int *> malloc(max(E, 1) * sizeof(int))
    if not (S.he and S.xs and S.ys and S.seq and remaining):
        free(S.he); free(S.xs); free(S.ys); free(S.seq); free(remaining)
        raise MemoryError()
    try:
        for k in range(m):
            S.he[2 * k] = org[k]
            S.he[2 * k + 1] = nxt[k]
        for k in range(V):
            S.xs[k] = xs[k]
            S.ys[k] = ys[k]
        for k in range(f):
            S.seq[k] = seq[k]
        S.mode = mode
        S.n = f
        S.k = 0
        S.ops = 0
        with nogil:
            for r in range(E):
                remaining[r] = 0
            for r in range(S.n):
                remaining[S.seq[r]] += 1
            p = 0
            while p < S.n:
                i = S.seq[p]
                remaining[i] -= 1
                if remaining[i] <= 0:
                    p += 1
                    continue
                q = p + 1
                while S.seq[q] != i:
                    q += 1
                attempts += 1
                outcome = attempt(&S, p, q)
                if outcome == NOT_REDUCIBLE:
                    p += 1
                    continue
                if outcome == CANCELLED:
                    cancellations += 1
                else:
                    transpositions += 1
                restarts += 1
                for r in range(E):
                    remaining[r] = 0
                for r in range(S.n):
                    remaining[S.seq[r]] += 1
                p = 0
            seek(&S, 0)
        out = [S.seq[k] for k in range(S.n)]
        counts = dict(
            cancellations=cancellations,
            transpositions=transpositions,
            attempts=attempts,
            restarts=restarts,
            operations=S.ops,
        )
        return out, counts
    finally:
        free(S.he)
        free(S.xs)
        free(S.ys)
        free(S.seq)
        free(remaining)
