"""Brute-force reference checks in plain Python.

Nothing here touches the numpy index tables; products come straight from
``ring.rule`` / ``module.action`` into dicts and every law is a nested loop.
"""

import itertools


def product_dict(ring):
    return {
        (x, a, y): ring.rule(x, a, y)
        for x in ring.carrier.elements
        for a in ring.gamma.elements
        for y in ring.carrier.elements
    }


def gamma_ring_law(ring):
    """Name of the first violated law, or None."""
    R, G = ring.carrier, ring.gamma
    P = product_dict(ring)
    members = set(R.elements)
    if any(v not in members for v in P.values()):
        return "closure"
    xs, gs = R.elements, G.elements
    for x, y, a, z in itertools.product(xs, xs, gs, xs):
        if P[(R.add(x, y), a, z)] != R.add(P[(x, a, z)], P[(y, a, z)]):
            return "left"
    for x, a, b, z in itertools.product(xs, gs, gs, xs):
        if P[(x, G.add(a, b), z)] != R.add(P[(x, a, z)], P[(x, b, z)]):
            return "gamma"
    for x, a, y, z in itertools.product(xs, gs, xs, xs):
        if P[(x, a, R.add(y, z))] != R.add(P[(x, a, y)], P[(x, a, z)]):
            return "right"
    for x, a, y, b, z in itertools.product(xs, gs, xs, gs, xs):
        if P[(P[(x, a, y)], b, z)] != P[(x, a, P[(y, b, z)])]:
            return "associativity"
    return None


def module_law(module):
    R, G, M = module.ring.carrier, module.gamma, module.carrier
    act = {(r, a, m): module.action(r, a, m) for r in R.elements for a in G.elements for m in M.elements}
    if any(v not in set(M.elements) for v in act.values()):
        return "closure"
    rs, gs, ms = R.elements, G.elements, M.elements
    for r, a, m1, m2 in itertools.product(rs, gs, ms, ms):
        if act[(r, a, M.add(m1, m2))] != M.add(act[(r, a, m1)], act[(r, a, m2)]):
            return "i"
    for r1, r2, a, m in itertools.product(rs, rs, gs, ms):
        if act[(R.add(r1, r2), a, m)] != M.add(act[(r1, a, m)], act[(r2, a, m)]):
            return "ii"
    for r, a, b, m in itertools.product(rs, gs, gs, ms):
        if act[(r, G.add(a, b), m)] != M.add(act[(r, a, m)], act[(r, b, m)]):
            return "iii"
    for r1, a1, r2, a2, m in itertools.product(rs, gs, rs, gs, ms):
        if act[(module.ring.rule(r1, a1, r2), a2, m)] != act[(r1, a1, act[(r2, a2, m)])]:
            return "iv"
    return None


def span(group, gens):
    """Smallest subset containing 0 and gens that is closed under +."""
    out = {group.zero}
    frontier = list(out)
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.add(x, g)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return out


def is_direct_sum(group, pieces):
    """Every element is a unique sum of one element from each piece."""
    counts = {}
    for choice in itertools.product(*[list(p) for p in pieces]):
        s = group.zero
        for x in choice:
            s = group.add(s, x)
        counts[s] = counts.get(s, 0) + 1
    return set(counts) == set(group.elements) and all(c == 1 for c in counts.values())


def grading_law(ring, G, components):
    """``components``: label -> set of elements."""
    if not is_direct_sum(ring.carrier, [components[g] for g in G.labels]):
        return "direct-sum"
    for g, h in itertools.product(G.labels, G.labels):
        target = components[G.mul(g, h)]
        for x in components[g]:
            for a in ring.gamma.elements:
                for y in components[h]:
                    if ring.rule(x, a, y) not in target:
                        return "containment"
    return None


def all_homs(M, K):
    """Every function M -> K that is additive and equivariant, by full enumeration."""
    Mc, Kc = M.carrier, K.carrier
    xs = Mc.elements
    out = []
    for image in itertools.product(Kc.elements, repeat=len(xs)):
        f = dict(zip(xs, image))
        if any(f[Mc.add(x, y)] != Kc.add(f[x], f[y]) for x in xs for y in xs):
            continue
        if any(
            f[M.action(r, a, x)] != K.action(r, a, f[x])
            for r in M.ring.carrier.elements
            for a in M.gamma.elements
            for x in xs
        ):
            continue
        out.append(f)
    return out


def is_associative(table):
    n = len(table)
    return all(table[table[a][b]][c] == table[a][table[b][c]] for a in range(n) for b in range(n) for c in range(n))


def submodule_closed(module, elements):
    S = set(elements)
    if module.carrier.zero not in S:
        return False
    if any(module.carrier.add(x, y) not in S for x in S for y in S):
        return False
    return all(module.action(r, a, m) in S for r in module.ring.carrier.elements for a in module.gamma.elements for m in S)
