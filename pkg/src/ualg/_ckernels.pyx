# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Signatures and return values match the pure-Python module exactly.
"""

from libc.stdlib cimport malloc, free


cdef struct Tables:
    int nops
    int *arity
    long *offset      # start of table i inside data
    long *data


cdef int _load(Tables *t, arities, tables) except -1:
    cdef int i, k
    cdef long total = 0, j, pos
    t.nops = len(arities)
    t.arity = <int *> malloc(max(t.nops, 1) * sizeof(int))
    t.offset = <long *> malloc(max(t.nops, 1) * sizeof(long))
    for i in range(t.nops):
        t.arity[i] = arities[i]
        t.offset[i] = total
        total += len(tables[i])
    t.data = <long *> malloc(max(total, 1) * sizeof(long))
    if t.arity == NULL or t.offset == NULL or t.data == NULL:
        _release(t)
        raise MemoryError()
    pos = 0
    for i in range(t.nops):
        for j in tables[i]:
            t.data[pos] = j
            pos += 1
    return 0


cdef void _release(Tables *t):
    free(t.arity)
    free(t.offset)
    free(t.data)
    t.arity = NULL
    t.offset = NULL
    t.data = NULL


cdef inline long _ipow(long b, int e):
    cdef long r = 1
    while e > 0:
        r *= b
        e -= 1
    return r


def hom_violation(int dom_size, int cod_size, arities, dom_tables, cod_tables, hmap):
    cdef Tables D, C
    cdef int i, k, j
    cdef long idx, count, rest, img, lhs, mult
    cdef long *h = <long *> malloc(dom_size * sizeof(long))
    if h == NULL:
        raise MemoryError()
    D.arity = NULL; D.offset = NULL; D.data = NULL
    C.arity = NULL; C.offset = NULL; C.data = NULL
    try:
        _load(&D, arities, dom_tables)
        _load(&C, arities, cod_tables)
        for j in range(dom_size):
            h[j] = hmap[j]
        for i in range(D.nops):
            k = D.arity[i]
            count = _ipow(dom_size, k)
            for idx in range(count):
                # image of the argument tuple, re-flattened in the codomain
                rest = idx
                img = 0
                mult = 1
                for j in range(k):
                    img += h[rest % dom_size] * mult
                    rest //= dom_size
                    mult *= cod_size
                lhs = h[D.data[D.offset[i] + idx]]
                if lhs != C.data[C.offset[i] + img]:
                    return (i, idx)
        return None
    finally:
        free(h)
        _release(&D)
        _release(&C)


def congruence_violation(int size, arities, tables, labels):
    cdef Tables T
    cdef int i, k, j
    cdef long idx, count, rest, rep, mult
    cdef long *lab = <long *> malloc(size * sizeof(long))
    if lab == NULL:
        raise MemoryError()
    T.arity = NULL; T.offset = NULL; T.data = NULL
    try:
        _load(&T, arities, tables)
        for j in range(size):
            lab[j] = labels[j]
        for i in range(T.nops):
            k = T.arity[i]
            count = _ipow(size, k)
            for idx in range(count):
                rest = idx
                rep = 0
                mult = 1
                for j in range(k):
                    rep += lab[rest % size] * mult
                    rest //= size
                    mult *= size
                if lab[T.data[T.offset[i] + idx]] != lab[T.data[T.offset[i] + rep]]:
                    return (i, idx)
        return None
    finally:
        free(lab)
        _release(&T)


def closure_violation(int size, arities, tables, members):
    cdef Tables T
    cdef int i, k, j, nm
    cdef long idx, count, rest, flat, mult, r
    ordered = sorted(set(members))
    nm = len(ordered)
    cdef long *mem = <long *> malloc(max(nm, 1) * sizeof(long))
    cdef char *inside = <char *> malloc(size * sizeof(char))
    if mem == NULL or inside == NULL:
        free(mem); free(inside)
        raise MemoryError()
    T.arity = NULL; T.offset = NULL; T.data = NULL
    try:
        _load(&T, arities, tables)
        for j in range(size):
            inside[j] = 0
        for j in range(nm):
            mem[j] = ordered[j]
            inside[mem[j]] = 1
        for i in range(T.nops):
            k = T.arity[i]
            count = _ipow(nm, k)
            for idx in range(count):
                rest = idx
                flat = 0
                mult = 1
                for j in range(k):
                    flat += mem[rest % nm] * mult
                    rest //= nm
                    mult *= size
                r = T.data[T.offset[i] + flat]
                if not inside[r]:
                    args = []
                    rest = idx
                    for j in range(k):
                        args.append(mem[rest % nm])
                        rest //= nm
                    return (i, tuple(reversed(args)), r)
        return None
    finally:
        free(mem)
        free(inside)
        _release(&T)


def closure(int size, arities, tables, seed):
    cdef Tables T
    cdef int i, k, j, n, done, snap
    cdef long idx, count, rest, flat, mult, r, newest
    cdef long *mem = <long *> malloc(size * sizeof(long))
    cdef char *inside = <char *> malloc(size * sizeof(char))
    if mem == NULL or inside == NULL:
        free(mem); free(inside)
        raise MemoryError()
    T.arity = NULL; T.offset = NULL; T.data = NULL
    try:
        _load(&T, arities, tables)
        for j in range(size):
            inside[j] = 0
        n = 0
        for x in seed:
            if not inside[<long> x]:
                inside[<long> x] = 1
                mem[n] = x
                n += 1
        for i in range(T.nops):
            if T.arity[i] == 0:
                r = T.data[T.offset[i]]
                if not inside[r]:
                    inside[r] = 1
                    mem[n] = r
                    n += 1
        done = 0
        while done < n:
            snap = n
            for i in range(T.nops):
                k = T.arity[i]
                if k == 0:
                    continue
                count = _ipow(snap, k)
                for idx in range(count):
                    rest = idx
                    flat = 0
                    mult = 1
                    newest = 0
                    for j in range(k):
                        if rest % snap > newest:
                            newest = rest % snap
                        flat += mem[rest % snap] * mult
                        rest //= snap
                        mult *= size
                    if newest < done:
                        continue
                    r = T.data[T.offset[i] + flat]
                    if not inside[r]:
                        inside[r] = 1
                        mem[n] = r
                        n += 1
            done = snap
        return [j for j in range(size) if inside[j]]
    finally:
        free(mem)
        free(inside)
        _release(&T)


cdef struct Search:
    int n
    int m
    long limit
    bint injective
    bint surjective
    long *fixed
    long *hmap
    long *used
    int uncovered
    # constraints grouped by completing position
    long *group_start    # n + 1 entries
    long *c_op
    long *c_res
    long *c_arg_start    # into c_args; arity = c_arity
    int *c_arity
    long *c_args
    Tables cod


cdef inline long _image(Search *s, long c):
    cdef long flat = 0
    cdef int j
    cdef long a0 = s.c_arg_start[c]
    for j in range(s.c_arity[c]):
        flat = flat * s.m + s.hmap[s.c_args[a0 + j]]
    return s.cod.data[s.cod.offset[s.c_op[c]] + flat]


cdef inline long _max_arg(Search *s, long c):
    cdef long best = -1
    cdef int j
    cdef long a0 = s.c_arg_start[c]
    for j in range(s.c_arity[c]):
        if s.c_args[a0 + j] > best:
            best = s.c_args[a0 + j]
    return best


cdef int _extend(Search *s, int p, list results) except -1:
    """Returns 1 when the limit is reached."""
    cdef long c, v, lo, hi, forced = -1, img
    cdef bint ok
    if p == s.n:
        results.append(tuple([s.hmap[j] for j in range(s.n)]))
        return 1 if (s.limit >= 0 and len(results) >= s.limit) else 0
    for c in range(s.group_start[p], s.group_start[p + 1]):
        if s.c_res[c] == p and _max_arg(s, c) < p:
            img = _image(s, c)
            if forced == -1:
                forced = img
            elif forced != img:
                return 0
    if forced >= 0:
        if s.fixed[p] >= 0 and s.fixed[p] != forced:
            return 0
        lo = forced
        hi = forced + 1
    elif s.fixed[p] >= 0:
        lo = s.fixed[p]
        hi = lo + 1
    else:
        lo = 0
        hi = s.m
    for v in range(lo, hi):
        if s.injective and s.used[v]:
            continue
        s.hmap[p] = v
        s.used[v] += 1
        if s.used[v] == 1:
            s.uncovered -= 1
        ok = True
        for c in range(s.group_start[p], s.group_start[p + 1]):
            if s.hmap[s.c_res[c]] != _image(s, c):
                ok = False
                break
        if ok and s.surjective and s.uncovered > s.n - p - 1:
            ok = False
        if ok and _extend(s, p + 1, results):
            s.used[v] -= 1
            if s.used[v] == 0:
                s.uncovered += 1
            s.hmap[p] = -1
            return 1
        s.used[v] -= 1
        if s.used[v] == 0:
            s.uncovered += 1
        s.hmap[p] = -1
    return 0


def search_homs(int dom_size, int cod_size, arities, dom_tables, cod_tables,
                long limit=-1, bint injective=False, bint surjective=False, fixed=None):
    cdef Search s
    cdef int n = dom_size, m = cod_size, i, k, j
    cdef long idx, count, rest, total = 0, nargs = 0, c, p, r
    if (injective and m < n) or (surjective and n < m):
        return []
    results = []
    if limit == 0:
        return results

    # bucket equations by completing position, stable within a bucket
    buckets = [[] for _ in range(n)]
    for i in range(len(arities)):
        k = arities[i]
        dt = dom_tables[i]
        count = _ipow(n, k)
        for idx in range(count):
            args = []
            rest = idx
            for j in range(k):
                args.append(rest % n)
                rest //= n
            args.reverse()
            r = dt[idx]
            p = max(args + [r])
            buckets[p].append((i, r, args))
            total += 1
            nargs += k

    s.n = n
    s.m = m
    s.limit = limit
    s.injective = injective
    s.surjective = surjective
    s.uncovered = m
    s.fixed = <long *> malloc(n * sizeof(long))
    s.hmap = <long *> malloc(n * sizeof(long))
    s.used = <long *> malloc(m * sizeof(long))
    s.group_start = <long *> malloc((n + 1) * sizeof(long))
    s.c_op = <long *> malloc(max(total, 1) * sizeof(long))
    s.c_res = <long *> malloc(max(total, 1) * sizeof(long))
    s.c_arg_start = <long *> malloc(max(total, 1) * sizeof(long))
    s.c_arity = <int *> malloc(max(total, 1) * sizeof(int))
    s.c_args = <long *> malloc(max(nargs, 1) * sizeof(long))
    s.cod.arity = NULL; s.cod.offset = NULL; s.cod.data = NULL
    try:
        if (s.fixed == NULL or s.hmap == NULL or s.used == NULL or s.group_start == NULL
                or s.c_op == NULL or s.c_res == NULL or s.c_arg_start == NULL
                or s.c_arity == NULL or s.c_args == NULL):
            raise MemoryError()
        _load(&s.cod, arities, cod_tables)
        for j in range(n):
            s.fixed[j] = -1 if fixed is None else fixed[j]
            s.hmap[j] = -1
        for j in range(m):
            s.used[j] = 0
        c = 0
        nargs = 0
        for p in range(n):
            s.group_start[p] = c
            for (i, r, args) in buckets[p]:
                s.c_op[c] = i
                s.c_res[c] = r
                s.c_arity[c] = len(args)
                s.c_arg_start[c] = nargs
                for a in args:
                    s.c_args[nargs] = a
                    nargs += 1
                c += 1
        s.group_start[n] = c
        _extend(&s, 0, results)
        return results
    finally:
        free(s.fixed); free(s.hmap); free(s.used); free(s.group_start)
        free(s.c_op); free(s.c_res); free(s.c_arg_start); free(s.c_arity); free(s.c_args)
        _release(&s.cod)
