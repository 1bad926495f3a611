#!/usr/bin/env python3
"""Write the group fixtures in fixtures/.

Small groups are emitted as permutation generators. Q8, Q16, the dicyclic
group of order 120 and the two order-32 groups are emitted as Cayley tables
computed here, independently of the Rust code, and validated before writing.

The first order-32 group was found by a seeded random search over monomial
groups inside C8 wr D8 (run with --search to repeat it); the second is a
split extension of C8 x C2 by an involution. Both are identified only by
the invariants printed into their meta lines.
"""

import argparse
import collections
import itertools
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


# permutations on 0..n-1 as tuples; x*y applies x first

def pmul(a, b):
    return tuple(b[a[i]] for i in range(len(a)))


def pinv(a):
    r = [0] * len(a)
    for i, v in enumerate(a):
        r[v] = i
    return tuple(r)


def from_cycles(cycles, n):
    p = list(range(n))
    for c in cycles:
        for i, x in enumerate(c):
            p[x - 1] = c[(i + 1) % len(c)] - 1
    return tuple(p)


def closure(gens, cap=None):
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident: 0}
    order = [ident]
    i = 0
    while i < len(order):
        x = order[i]
        for g in gens:
            y = pmul(x, g)
            if y not in seen:
                seen[y] = len(order)
                order.append(y)
                if cap is not None and len(order) > cap:
                    return None
        i += 1
    return order


def cayley_from_perms(gens):
    elems = closure(gens)
    index = {x: i for i, x in enumerate(elems)}
    return [[index[pmul(x, y)] for y in elems] for x in elems]


def cayley_dicyclic(m):
    """a^i b^j -> i + 2m j with a^{2m} = 1, b^2 = a^m, b a b^-1 = a^-1."""
    n = 2 * m

    def mul(x, y):
        i1, j1 = x % n, x // n
        i2, j2 = y % n, y // n
        if j1 == 0:
            return (i1 + i2) % n + n * j2
        if j2 == 0:
            return (i1 - i2) % n + n
        return (i1 - i2 + m) % n

    return [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]


# checks on Cayley tables

def validate(table):
    n = len(table)
    assert all(len(r) == n for r in table)
    rng = set(range(n))
    assert all(set(r) == rng for r in table)
    assert all({table[i][j] for i in range(n)} == rng for j in range(n))
    assert all(table[0][x] == x and table[x][0] == x for x in range(n))
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise AssertionError(f"not associative at {(a, b, c)}")


class Table:
    def __init__(self, table):
        self.t = table
        self.n = len(table)
        self.inv = [next(y for y in range(self.n) if table[x][y] == 0) for x in range(self.n)]

    def mul(self, a, b):
        return self.t[a][b]

    def conj(self, x, g):
        return self.mul(self.mul(self.inv[g], x), g)

    def comm(self, a, b):
        return self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))

    def elem_order(self, x):
        k, y = 1, x
        while y != 0:
            y, k = self.mul(y, x), k + 1
        return k

    def generated(self, xs):
        h = {0}
        frontier = [0]
        xs = list(xs)
        while frontier:
            y = frontier.pop()
            for x in xs:
                z = self.mul(y, x)
                if z not in h:
                    h.add(z)
                    frontier.append(z)
        return frozenset(h)

    def class_count(self):
        seen, k = set(), 0
        for x in range(self.n):
            if x not in seen:
                k += 1
                seen.update(self.conj(x, g) for g in range(self.n))
        return k

    def centre(self):
        return frozenset(z for z in range(self.n) if all(self.mul(z, x) == self.mul(x, z) for x in range(self.n)))

    def bracket(self, a, b):
        return self.generated({self.comm(x, y) for x in a for y in b})

    def nilpotency_class(self):
        whole = frozenset(range(self.n))
        term, c = whole, 0
        while len(term) > 1:
            nxt = self.bracket(term, whole)
            if nxt == term:
                return None
            term, c = nxt, c + 1
        return c

    def subgroups(self):
        subs = {frozenset([0])}
        frontier = [frozenset([0])]
        while frontier:
            h = frontier.pop()
            for x in range(self.n):
                if x not in h:
                    k = self.generated(set(h) | {x})
                    if k not in subs:
                        subs.add(k)
                        frontier.append(k)
        return subs

    def is_normal(self, h):
        return all(self.conj(x, g) in h for x in h for g in range(self.n))

    def splits(self):
        """Normal subgroups that have a complement, as (|N|, N abelian)."""
        subs = self.subgroups()
        out = []
        for m in subs:
            if 1 < len(m) < self.n and self.is_normal(m):
                if any(len(h) * len(m) == self.n and len(h & m) == 1 for h in subs):
                    abelian = all(self.mul(a, b) == self.mul(b, a) for a in m for b in m)
                    out.append((len(m), abelian))
        return sorted(out)

    def is_direct_product(self):
        normals = [m for m in self.subgroups() if self.is_normal(m)]
        return any(1 < len(a) < self.n and len(a) * len(b) == self.n and len(a & b) == 1
                   for a in normals for b in normals)

    def order_statistics(self):
        return dict(sorted(collections.Counter(self.elem_order(x) for x in range(self.n)).items()))


# the order-32 groups

def monomial(sigma, shifts):
    """Monomial matrix on 4 coordinates with entries in <ζ_8>, acting on 32 points."""
    return tuple(8 * sigma[p // 8] + ((p % 8) + shifts[p // 8]) % 8 for p in range(32))


D8_ON_4 = [(0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2), (2, 1, 0, 3), (0, 3, 2, 1), (1, 0, 3, 2), (3, 2, 1, 0)]

NMI_32 = [
    (6, 7, 0, 1, 2, 3, 4, 5, 10, 11, 12, 13, 14, 15, 8, 9, 18, 19, 20, 21, 22, 23, 16, 17, 30, 31, 24, 25, 26, 27, 28, 29),
    (10, 11, 12, 13, 14, 15, 8, 9, 17, 18, 19, 20, 21, 22, 23, 16, 30, 31, 24, 25, 26, 27, 28, 29, 3, 4, 5, 6, 7, 0, 1, 2),
]


def cayley_c8xc2_by_c2():
    """(C8 x C2):C2 with a^8 = b^2 = c^2 = 1, ab = ba, bc = cb, c a c = a^3 b.

    a^u b^v c^e -> u + 8v + 16e.
    """
    def act(u, v):
        return (3 * u) % 8, (u + v) % 2

    def mul(x, y):
        u1, v1, e1 = x % 8, (x // 8) % 2, x // 16
        u2, v2, e2 = y % 8, (y // 8) % 2, y // 16
        if e1:
            u2, v2 = act(u2, v2)
        return (u1 + u2) % 8 + 8 * ((v1 + v2) % 2) + 16 * ((e1 + e2) % 2)

    return [[mul(x, y) for y in range(32)] for x in range(32)]


def fingerprint(t):
    derived = t.bracket(range(t.n), range(t.n))
    return {
        "classes": t.class_count(),
        "centre": len(t.centre()),
        "derived": len(derived),
        "class": t.nilpotency_class(),
        "orders": t.order_statistics(),
    }


def search(seed, trials):
    rng = random.Random(seed)
    found = {}
    for _ in range(trials):
        gens = [monomial(rng.choice(D8_ON_4), [rng.randrange(8) for _ in range(4)]) for _ in range(2)]
        elems = closure(gens, cap=32)
        if elems is None or len(elems) != 32:
            continue
        t = Table(cayley_from_perms(gens))
        fp = fingerprint(t)
        key = repr(fp)
        if key not in found and fp["classes"] == 11 and fp["class"] == 3 and not t.splits():
            found[key] = gens
            print(fp, gens)
    return found


# output

def write_generators(name, cycles_list, n, meta=()):
    lines = [f"name: {name}"]
    lines += [f"meta: {k} = {v}" for k, v in meta]
    lines.append("generators:")
    letters = "abcdefgh"
    for letter, cycles in zip(letters, cycles_list):
        body = "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles) or "()"
        lines.append(f"{letter}: {body}")
    order = len(closure([from_cycles(c, n) for c in cycles_list]))
    return "\n".join(lines) + "\n", order


def write_cayley(name, table, meta=()):
    validate(table)
    lines = [f"name: {name}"]
    lines += [f"meta: {k} = {v}" for k, v in meta]
    lines.append("cayley:")
    lines += [" ".join(str(x) for x in row) for row in table]
    return "\n".join(lines) + "\n"


def sl23_generators():
    vectors = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    index = {v: i + 1 for i, v in enumerate(vectors)}

    def perm(m):
        images = {index[v]: index[((m[0][0] * v[0] + m[0][1] * v[1]) % 3, (m[1][0] * v[0] + m[1][1] * v[1]) % 3)] for v in vectors}
        cycles, seen = [], set()
        for start in sorted(images):
            if start in seen or images[start] == start:
                continue
            c, x = [], start
            while x not in seen:
                seen.add(x)
                c.append(x)
                x = images[x]
            cycles.append(tuple(c))
        return cycles

    return [perm(((1, 1), (0, 1))), perm(((0, 2), (1, 0)))]


def cyclic(n):
    return [[tuple(range(1, n + 1))]] if n > 1 else [[]]


def dihedral(n):
    flip = [(i, n + 2 - i) for i in range(2, n // 2 + 1 + (n % 2)) if i < n + 2 - i]
    return [[tuple(range(1, n + 1))], flip]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--search", action="store_true", help="rerun the order-32 search")
    ap.add_argument("--out", type=Path, default=ROOT)
    args = ap.parse_args()
    if args.search:
        search(1, 300000)
        return

    args.out.mkdir(parents=True, exist_ok=True)
    files = {}
    small = [
        ("c2", "C2", cyclic(2), 2, 2),
        ("c4", "C4", cyclic(4), 4, 4),
        ("c2xc2", "C2xC2", [[(1, 2)], [(3, 4)]], 4, 4),
        ("c9", "C9", cyclic(9), 9, 9),
        ("c20", "C20", cyclic(20), 20, 20),
        ("s3", "S3", [[(1, 2)], [(1, 2, 3)]], 3, 6),
        ("d8", "D8", dihedral(4), 4, 8),
        ("d10", "D10", dihedral(5), 5, 10),
        ("a4", "A4", [[(1, 2, 3)], [(2, 3, 4)]], 4, 12),
        ("d12", "D12", dihedral(6), 6, 12),
        ("d16", "D16", dihedral(8), 8, 16),
        ("d18", "D18", dihedral(9), 9, 18),
        ("sl23", "SL(2,3)", sl23_generators(), 8, 24),
        ("s4", "S4", [[(1, 2, 3, 4)], [(1, 2)]], 4, 24),
    ]
    for stem, name, gens, degree, order in small:
        text, got = write_generators(name, gens, degree)
        assert got == order, (stem, got, order)
        files[stem] = text
    files["trivial"] = write_cayley("1", [[0]])
    files["q8"] = write_cayley("Q8", cayley_dicyclic(2))
    files["q16"] = write_cayley("Q16", cayley_dicyclic(4))

    dic = cayley_dicyclic(30)
    t = Table(dic)
    cyclic20 = [h for h in (t.generated([x]) for x in range(120)) if len(h) == 20 and t.is_normal(h)]
    assert cyclic20, "dicyclic 120 lost its cyclic normal subgroup of order 20"
    files["dic120"] = write_cayley("Dic120", dic, [
        ("construction", "dicyclic group of order 120, a^60 = 1, b^2 = a^30, b a b^-1 = a^-1"),
        ("catalog", "SmallGroup(120,3)"),
        ("catalog_verified", "no"),
        ("classes", t.class_count()),
    ])

    for stem, name, table, catalog in [
        ("g32_nmi", "G32a", cayley_from_perms(NMI_32), "SmallGroup(32,8)"),
        ("g32_class3", "G32b", cayley_c8xc2_by_c2(), "SmallGroup(32,9)"),
    ]:
        t = Table(table)
        fp = fingerprint(t)
        splits = t.splits()
        if stem == "g32_nmi":
            assert fp["classes"] == 11 and fp["class"] == 3 and fp["derived"] == 4 and not splits, fp
            shape = "no normal subgroup has a complement; G' = C2xC2, G/G' = C4xC2"
        else:
            assert fp["classes"] == 14 and fp["class"] == 3 and not t.is_direct_product(), fp
            assert (16, True) in splits
            shape = "split extension (C8xC2):C2, not a direct product"
        orders = " ".join(f"{k}:{v}" for k, v in fp["orders"].items())
        files[stem] = write_cayley(name, table, [
            ("catalog", catalog),
            ("catalog_verified", "no"),
            ("classes", fp["classes"]),
            ("centre", fp["centre"]),
            ("derived", fp["derived"]),
            ("nilpotency_class", fp["class"]),
            ("element_orders", orders),
            ("shape", shape),
        ])

    for stem, text in sorted(files.items()):
        (args.out / f"{stem}.grp").write_text(text)
        print(f"wrote {stem}.grp", file=sys.stderr)


if __name__ == "__main__":
    main()
