"""Pure-Python versions of the hot kernels.

Every function here has a twin of the same name and signature in
``_ckernels.pyx``. Inputs are plain sequences of ints: ``arities[i]`` and
``tables[i]`` describe the i-th operation of an algebra in flat row-major
layout. The twins must return identical values.
"""


def _tuples(size, arity):
    """All arity-tuples over range(size) in flat_index order."""
    out = [()]
    for _ in range(arity):
        out = [t + (a,) for t in out for a in range(size)]
    return out


def _flat(args, size):
    idx = 0
    for a in args:
        idx = idx * size + a
    return idx


def hom_violation(dom_size, cod_size, arities, dom_tables, cod_tables, hmap):
    """First (op, flat index) where ``hmap`` fails to commute, else None."""
    for i, k in enumerate(arities):
        dt, ct = dom_tables[i], cod_tables[i]
        for idx, args in enumerate(_tuples(dom_size, k)):
            lhs = hmap[dt[idx]]
            rhs = ct[_flat([hmap[a] for a in args], cod_size)]
            if lhs != rhs:
                return (i, idx)
    return None


def congruence_violation(size, arities, tables, labels):
    """First (op, flat index of a) with labels[f(a)] != labels[f(labels o a)]."""
    for i, k in enumerate(arities):
        t = tables[i]
        for idx, args in enumerate(_tuples(size, k)):
            rep = _flat([labels[a] for a in args], size)
            if labels[t[idx]] != labels[t[rep]]:
                return (i, idx)
    return None


def closure_violation(size, arities, tables, members):
    """First (op, args, result) escaping ``members``, else None.

    Tuples are scanned per op in lexicographic order over the ascending
    member list.
    """
    members = sorted(set(members))
    inside = set(members)
    for i, k in enumerate(arities):
        t = tables[i]
        for args in _tuples(len(members), k):
            real = tuple(members[j] for j in args)
            r = t[_flat(real, size)]
            if r not in inside:
                return (i, real, r)
    return None


def closure(size, arities, tables, seed):
    """Least subset containing ``seed`` closed under every operation."""
    inside = [False] * size
    members = []
    for x in seed:
        if not inside[x]:
            inside[x] = True
            members.append(x)
    for i, k in enumerate(arities):
        if k == 0 and not inside[tables[i][0]]:
            inside[tables[i][0]] = True
            members.append(tables[i][0])
    # semi-naive: members[:done] have already been combined with each other
    done = 0
    while done < len(members):
        snapshot = members[:]
        for i, k in enumerate(arities):
            if k == 0:
                continue
            t = tables[i]
            for pos in _tuples(len(snapshot), k):
                if max(pos) < done:
                    continue
                r = t[_flat([snapshot[j] for j in pos], size)]
                if not inside[r]:
                    inside[r] = True
                    members.append(r)
        done = len(snapshot)
    return sorted(members)


def _constraints(dom_size, arities, dom_tables):
    """Group compatibility equations by the position that completes them."""
    groups = [[] for _ in range(dom_size)]
    for i, k in enumerate(arities):
        dt = dom_tables[i]
        for idx, args in enumerate(_tuples(dom_size, k)):
            r = dt[idx]
            p = max(args + (r,))
            groups[p].append((i, args, r))
    return groups


def search_homs(dom_size, cod_size, arities, dom_tables, cod_tables,
                limit=-1, injective=False, surjective=False, fixed=None):
    """All homomorphisms as tuples, in lexicographic order, up to ``limit``.

    ``fixed[p]`` is -1 for a free position or the value it must take.
    """
    n, m = dom_size, cod_size
    if fixed is None:
        fixed = [-1] * n
    if injective and m < n or surjective and n < m:
        return []
    groups = _constraints(n, arities, dom_tables)
    hmap = [-1] * n
    used = [0] * m
    uncovered = [m]
    results = []

    def satisfied(p):
        for i, args, r in groups[p]:
            ct = cod_tables[i]
            if hmap[r] != ct[_flat([hmap[a] for a in args], m)]:
                return False
        return True

    def forced(p):
        # equations whose result is p and whose arguments are all earlier
        value = -1
        for i, args, r in groups[p]:
            if r == p and (not args or max(args) < p):
                v = cod_tables[i][_flat([hmap[a] for a in args], m)]
                if value == -1:
                    value = v
                elif value != v:
                    return -2
        return value

    def extend(p):
        if p == n:
            results.append(tuple(hmap))
            return limit >= 0 and len(results) >= limit
        f = forced(p)
        if f == -2:
            return False
        if f >= 0:
            candidates = [f] if fixed[p] < 0 or fixed[p] == f else []
        elif fixed[p] >= 0:
            candidates = [fixed[p]]
        else:
            candidates = range(m)
        for v in candidates:
            if injective and used[v]:
                continue
            hmap[p] = v
            used[v] += 1
            if used[v] == 1:
                uncovered[0] -= 1
            ok = satisfied(p)
            if ok and surjective and uncovered[0] > n - p - 1:
                ok = False
            stop = ok and extend(p + 1)
            used[v] -= 1
            if used[v] == 0:
                uncovered[0] += 1
            hmap[p] = -1
            if stop:
                return True
        return False

    if limit != 0:
        extend(0)
    return results
