# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled segment router; must mirror _routing_py exactly.

Same contract: row-major segment order, ascending neighbours, first
complete routing wins.  All pruning is sound, so both backends return
identical results; the test suite checks that on a shared corpus.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef class _Router:
    cdef int n
    cdef int[::1] indptr
    cdef int[::1] indices
    cdef unsigned char *freev
    cdef unsigned char *seen
    cdef int *queue
    cdef int *path
    cdef int plen
    cdef int t1[3]
    cdef int t2[3]
    cdef list segs

    def __cinit__(self, int n, int[::1] indptr, int[::1] indices):
        self.n = n
        self.indptr = indptr
        self.indices = indices
        self.freev = <unsigned char *> malloc(n)
        self.seen = <unsigned char *> malloc(n)
        self.queue = <int *> malloc(n * sizeof(int))
        # one stack shared by all nine nested segments
        self.path = <int *> malloc(9 * (n + 2) * sizeof(int))
        if (self.freev == NULL or self.seen == NULL
                or self.queue == NULL or self.path == NULL):
            raise MemoryError()

    def __dealloc__(self):
        free(self.freev)
        free(self.seen)
        free(self.queue)
        free(self.path)

    cdef bint reachable(self, int start, int goal):
        cdef int head = 0, tail = 0, x, w, a
        memset(self.seen, 0, self.n)
        self.seen[start] = 1
        self.queue[tail] = start
        tail += 1
        while head < tail:
            x = self.queue[head]
            head += 1
            for a in range(self.indptr[x], self.indptr[x + 1]):
                w = self.indices[a]
                if w == goal:
                    return True
                if self.freev[w] and not self.seen[w]:
                    self.seen[w] = 1
                    self.queue[tail] = w
                    tail += 1
        return False

    cdef bint forward_check(self, int k):
        cdef int idx
        for idx in range(k, 9):
            if not self.reachable(self.t1[idx // 3], self.t2[idx % 3]):
                return False
        return True

    cdef bint extend(self, int cur, int goal, int k, int base):
        # self.path is one stack shared by the nested segments; this
        # segment's vertices live at [base, plen)
        cdef int a, w, i
        for a in range(self.indptr[cur], self.indptr[cur + 1]):
            w = self.indices[a]
            if w == goal:
                self.path[self.plen] = w
                self.plen += 1
                self.segs[k] = tuple(
                    [self.path[i] for i in range(base, self.plen)])
                if self.solve(k + 1):
                    return True
                self.segs[k] = None
                self.plen -= 1
            elif self.freev[w]:
                self.freev[w] = 0
                self.path[self.plen] = w
                self.plen += 1
                if self.extend(w, goal, k, base):
                    return True
                self.plen -= 1
                self.freev[w] = 1
        return False

    cdef bint solve(self, int k):
        cdef int base
        if k == 9:
            return True
        if not self.forward_check(k):
            return False
        base = self.plen
        self.path[self.plen] = self.t1[k // 3]
        self.plen += 1
        if self.extend(self.t1[k // 3], self.t2[k % 3], k, base):
            return True
        self.plen = base
        return False

    def run(self, t1, t2, allowed):
        cdef int v, f
        for v in range(3):
            self.t1[v] = t1[v]
            self.t2[v] = t2[v]
        if allowed is None:
            memset(self.freev, 1, self.n)
        else:
            for v in range(self.n):
                self.freev[v] = 1 if allowed[v] else 0
        for v in range(3):
            self.freev[self.t1[v]] = 0
            self.freev[self.t2[v]] = 0
        self.segs = [None] * 9
        self.plen = 0
        if self.solve(0):
            return tuple(self.segs)
        return None


def route_segments_csr(int n, int[::1] indptr, int[::1] indices,
                       t1, t2, allowed=None):
    """Nine internally disjoint paths over a CSR adjacency, or None."""
    feet = tuple(t1) + tuple(t2)
    if len(set(feet)) != 6:
        raise ValueError("feet must be six distinct vertices")
    r = _Router(n, indptr, indices)
    return r.run(tuple(t1), tuple(t2), allowed)
