#!/usr/bin/env python3
"""Writes permutation-generator files for the groups of order 16, F21 and Z9:Z3.

Each group is given by a multiplication rule on normal-form tuples; the file
lists the left-regular permutations of a generating set, 1-based cycles.
"""
import os
import sys


def metacyclic(m, c, r):
    # a^i b^j with b a = a b^r; tuple (i, j)
    def mul(x, y):
        i, j = x
        k, l = y
        return ((i + k) % m, (j * pow(r, k, c) + l) % c)
    return mul, [(1, 0), (0, 1)], (0, 0)


def cyclic_semidirect(n, m, s):
    # Z_n : Z_m with generator y acting x -> x^s; tuple (i, j) = x^i y^j
    def mul(p, q):
        i, j = p
        k, l = q
        return ((i + k * pow(s, j, n)) % n, (j + l) % m)
    return mul, [(1, 0), (0, 1)], (0, 0)


def abelian(*ns):
    def mul(x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, ns))
    gens = []
    for t in range(len(ns)):
        g = [0] * len(ns)
        g[t] = 1
        gens.append(tuple(g))
    return mul, gens, tuple([0] * len(ns))


def direct(g1, g2):
    m1, s1, e1 = g1
    m2, s2, e2 = g2
    def mul(x, y):
        return (m1(x[0], y[0]), m2(x[1], y[1]))
    gens = [(g, e2) for g in s1] + [(e1, g) for g in s2]
    return mul, gens, (e1, e2)


def dicyclic16():
    # a^i b^j, a^8 = 1, b^2 = a^4, b a = a^-1 b
    def mul(x, y):
        i, j = x
        k, l = y
        e = (i + (k if j == 0 else -k) + (4 if j == 1 and l == 1 else 0)) % 8
        return (e, (j + l) % 2)
    return mul, [(1, 0), (0, 1)], (0, 0)


def quaternion8():
    # a^i b^j, a^4 = 1, b^2 = a^2, b a = a^-1 b
    def mul(x, y):
        i, j = x
        k, l = y
        e = (i + (k if j == 0 else -k) + (2 if j == 1 and l == 1 else 0)) % 4
        return (e, (j + l) % 2)
    return mul, [(1, 0), (0, 1)], (0, 0)


def id3():
    # (a, b, c): a of order 4, b, c of order 2, ab = ba, bc = cb, c a c = a b
    def act(c, i, j):
        # c^c applied to a^i b^j: a -> a b, b -> b
        return (i, (j + (i if c else 0)) % 2)
    def mul(x, y):
        i, j, c = x
        k, l, d = y
        k2, l2 = act(c, k, l)
        return ((i + k2) % 4, (j + l2) % 2, (c + d) % 2)
    return mul, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], (0, 0, 0)


def pauli():
    # central product Z4 o D8 as 2x2 matrices over Z[i]; entries are
    # Gaussian integers (re, im)
    def cm(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
    def ca(a, b):
        return (a[0] + b[0], a[1] + b[1])
    def mul(x, y):
        r = []
        for i in range(2):
            for j in range(2):
                s = (0, 0)
                for t in range(2):
                    s = ca(s, cm(x[2 * i + t], y[2 * t + j]))
                r.append(s)
        return tuple(r)
    o, z, m, i = (1, 0), (0, 0), (-1, 0), (0, 1)
    X = (z, o, o, z)
    Z = (o, z, z, m)
    I = (i, z, z, i)
    return mul, [X, Z, I], (o, z, z, o)


GROUPS = [
    ("16_01", "Z16", abelian(16)),
    ("16_02", "Z4^2", abelian(4, 4)),
    ("16_03", "(Z4xZ2):Z2", id3()),
    ("16_04", "Z4:Z4", cyclic_semidirect(4, 4, 3)),
    ("16_05", "Z8xZ2", abelian(8, 2)),
    ("16_06", "Z8:Z2", cyclic_semidirect(8, 2, 5)),
    ("16_07", "D16", cyclic_semidirect(8, 2, 7)),
    ("16_08", "QD16", cyclic_semidirect(8, 2, 3)),
    ("16_09", "Q16", dicyclic16()),
    ("16_10", "Z4xZ2^2", abelian(4, 2, 2)),
    ("16_11", "Z2xD8", direct(abelian(2), cyclic_semidirect(4, 2, 3))),
    ("16_12", "Z2xQ8", direct(abelian(2), quaternion8())),
    ("16_13", "(Z4xZ2):Z2", pauli()),
    ("16_14", "Z2^4", abelian(2, 2, 2, 2)),
    ("21_01", "F21", metacyclic(3, 7, 2)),
    ("21_02", "Z21", abelian(21)),
    ("27_04", "Z9:Z3", metacyclic(3, 9, 4)),
]


def closure(mul, gens, e):
    elems = [e]
    seen = {e}
    for x in elems:
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                elems.append(y)
    return elems


def cycles(perm):
    out = []
    seen = [False] * len(perm)
    for s in range(len(perm)):
        if seen[s] or perm[s] == s:
            continue
        c = []
        x = s
        while not seen[x]:
            seen[x] = True
            c.append(x + 1)
            x = perm[x]
        out.append("(" + ",".join(map(str, c)) + ")")
    return "".join(out) or "()"


def main(outdir):
    os.makedirs(outdir, exist_ok=True)
    for gid, name, (mul, gens, e) in GROUPS:
        elems = closure(mul, gens, e)
        index = {x: n for n, x in enumerate(elems)}
        with open(os.path.join(outdir, gid + ".group"), "w") as f:
            f.write(f"group {name} order {len(elems)}\n")
            f.write(f"permgens {len(elems)}\n")
            for g in gens:
                f.write(cycles([index[mul(g, x)] for x in elems]) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data", "groups"))
