"""Naive reference implementation used to cross-check the engine.

Dense lists, plain Gauss-Jordan elimination, every full subcomplex's
homology recomputed from scratch and a dense differential. Slow on
purpose; only meant for m <= 8.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations


class NaiveField:
    def __init__(self, p: int) -> None:
        self.p = p

    def norm(self, x):
        return Fraction(x) if self.p == 0 else int(x) % self.p

    def inv(self, x):
        return 1 / x if self.p == 0 else pow(int(x), -1, self.p)


def field_for(label: str) -> NaiveField:
    if label == "gf2":
        return NaiveField(2)
    if label == "q":
        return NaiveField(0)
    return NaiveField(int(label.split(":")[1]))


def rref(F: NaiveField, rows, ncols):
    a = [[F.norm(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.norm(x * inv) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [F.norm(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(F: NaiveField, rows, ncols) -> int:
    return len(rref(F, rows, ncols)[1])


def nullspace(F: NaiveField, rows, ncols):
    R, piv = rref(F, rows, ncols)
    basis = []
    for f in range(ncols):
        if f in piv:
            continue
        v = [F.norm(0)] * ncols
        v[f] = F.norm(1)
        for row, pc in zip(R, piv):
            v[pc] = F.norm(-row[f])
        basis.append(v)
    return basis


def solve(F: NaiveField, columns, b, nrows):
    ncols = len(columns)
    aug = [[columns[j][i] for j in range(ncols)] + [b[i]] for i in range(nrows)]
    R, piv = rref(F, aug, ncols + 1)
    if ncols in piv:
        return None
    x = [F.norm(0)] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    return x


def all_faces(facets):
    """Every face (as a sorted vertex tuple) of the complex spanned by ``facets``."""
    out = {()}
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return out


def faces_in(faces, J, d):
    return sorted(f for f in faces if len(f) == d + 1 and set(f) <= J)


def boundary(F, lower, upper):
    pos = {f: i for i, f in enumerate(lower)}
    mat = [[F.norm(0)] * len(upper) for _ in lower]
    for j, s in enumerate(upper):
        for i in range(len(s)):
            mat[pos[s[:i] + s[i + 1:]]][j] = F.norm((-1) ** i)
    return mat


def columns_of(mat, ncols):
    return [[row[j] for row in mat] for j in range(ncols)]


class NaiveHomology:
    """Homology of one full subcomplex in one degree."""

    def __init__(self, F, faces, J, d):
        self.F = F
        self.chains = faces_in(faces, J, d)
        n = len(self.chains)
        if d == -1:
            cycles = [[F.norm(1)]] if n else []
        else:
            lower = faces_in(faces, J, d - 1)
            cycles = nullspace(F, boundary(F, lower, self.chains), n) if n else []
        upper = faces_in(faces, J, d + 1)
        self.image = columns_of(boundary(F, self.chains, upper), len(upper)) if n else []
        self.reps = []
        for z in cycles:
            base = self.image + self.reps
            if rank(F, base + [z], n) > rank(F, base, n):
                self.reps.append(z)

    def coords(self, chain_by_face):
        vec = [chain_by_face.get(f, self.F.norm(0)) for f in self.chains]
        x = solve(self.F, self.image + self.reps, vec, len(self.chains))
        assert x is not None, "not a cycle modulo boundaries"
        return x[len(self.image):]


def _tuple(J):
    return frozenset(b + 1 for b in range(J.bit_length()) if J >> b & 1)


def naive_tables(facets, m, label):
    """``(hochster, hh)`` as ``{(k, 2l): dim}`` dictionaries."""
    F = field_for(label)
    faces = all_faces(facets)
    dim = max(len(f) for f in faces) - 1
    hom = {}
    hochster = defaultdict(int)
    for J in range(1 << m):
        Jset = _tuple(J)
        for d in range(-1, dim + 1):
            H = NaiveHomology(F, faces, Jset, d)
            if H.reps:
                hom[(J, d)] = H
                l = len(Jset)
                hochster[(d + 1 - l, 2 * l)] += len(H.reps)

    hh = {}
    for j in range(0, dim + 2):
        d = j - 1
        levels = {l: [J for J in range(1 << m) if bin(J).count("1") == l and (J, d) in hom] for l in range(m + 1)}
        dims = {l: sum(len(hom[(J, d)].reps) for J in levels[l]) for l in levels}
        ranks = {}
        for l in range(m):
            rows_total = dims[l + 1]
            offsets, off = {}, 0
            for J in levels[l + 1]:
                offsets[J] = off
                off += len(hom[(J, d)].reps)
            cols = []
            for J in levels[l]:
                src = hom[(J, d)]
                for rep in src.reps:
                    col = [F.norm(0)] * rows_total
                    chain = dict(zip(src.chains, rep))
                    for x in range(m):
                        if J >> x & 1 or (J | 1 << x) not in offsets:
                            continue
                        sign = (-1) ** bin(J & ((1 << x) - 1)).count("1")
                        target = J | 1 << x
                        coords = hom[(target, d)].coords(chain)
                        for i, c in enumerate(coords):
                            col[offsets[target] + i] = F.norm(col[offsets[target] + i] + sign * c)
                    cols.append(col)
            ranks[l] = rank(F, cols, rows_total) if cols and rows_total else 0
        for l in range(m + 1):
            h = dims[l] - ranks.get(l, 0) - ranks.get(l - 1, 0)
            if h:
                hh[(j - l, 2 * l)] = h
    return dict(hochster), hh


def naive_rank_gf2(rows, ncols):
    return rank(NaiveField(2), rows, ncols)
