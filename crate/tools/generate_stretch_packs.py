#!/usr/bin/env python3
"""Offline generator for the compiled-in data packs of types B3, C3 and D4.

The Rust crate ships JSON packs with, for each stored Cartan type, the
unipotent principal-series characters (dimension and generic degree) and the
rational nilpotent adjoint orbits (dimension, number of F_q-points, Green
polynomial).  The rank-2 packs (B2, G2) are transcribed from the classical
tables; this tool derives the rank-3/4 classical packs from first principles:

* Generic degrees come from Schur elements of the equal-parameter
  Iwahori-Hecke algebra, built from Hoefsmit's seminormal representations on
  standard bitableaux.  Characters are evaluated at integer samples of q and
  the degrees recovered by exact Lagrange interpolation.  The B-type pipeline
  is calibrated against the known B2 degrees; the D-type pipeline (type B at
  Q = 1, restricted to the even subalgebra) is calibrated against type A
  hook-length degrees through the isomorphism D3 = A3.

* Nilpotent orbit data is derived for so7, sp6 and so8 over odd prime fields.
  Rational classes are enumerated by Jordan type plus the discriminant/Witt
  invariants of the induced forms on multiplicity spaces; orbit sizes come
  from centralizer-order formulas; Green polynomials count nilpotent-stable
  complete isotropic flags via a stratified descent recursion (isotropic
  lines in ker N grouped by Jordan height and the square class of the induced
  form value, with closed quadric counts for stratum sizes), memoized on the
  form invariants.  Everything is sampled at many odd primes and interpolated
  exactly, with overdetermined samples so that any non-polynomial behaviour
  would surface as a nonzero interpolation residual.  The adjoint groups of
  types C3 and D4 act through similitudes, which fuses pairs of isometry
  classes whose multiplicity-form discriminants flip under a non-square
  multiplier; fused rows get summed sizes.

Self-checks performed on every run:

* the seminormal matrices satisfy the defining relations;
* the B2 Hecke pipeline reproduces the shipped b2.json generic degrees;
* the D3 Hecke pipeline reproduces the type A3 hook-length degrees;
* regenerated so5 orbit data matches the shipped b2.json exactly;
* brute-force flag counts (an independent code path with no stratification
  and no memoization) agree with the fast recursion at q = 3;
* sum dim^2 = |W| and sum dim * degree = Poincare polynomial;
* orbit sizes sum to q^(2N); sum size * green = q^N * Poincare;
* the zero orbit's Green polynomial equals the Poincare polynomial.

Usage:  python3 tools/generate_stretch_packs.py [--out DIR] [--skip-brute]
"""

import argparse
import itertools
import json
import os
import sys
from fractions import Fraction

# ---------------------------------------------------------------------------
# exact polynomials (coefficient lists, constant term first)
# ---------------------------------------------------------------------------


def ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(a, b):
    n = max(len(a), len(b))
    return ptrim(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    )


def pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return ptrim(out)


def pscale(a, c):
    return ptrim([x * c for x in a])


def peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pdivexact(num, den):
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = Fraction(num[i + len(den) - 1], 1) / den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert all(x == 0 for x in num), "inexact polynomial division"
    return ptrim(out)


def lagrange(points):
    """Exact interpolation through [(x, y)] with Fraction values."""
    result = []
    for i, (xi, yi) in enumerate(points):
        term = [Fraction(yi)]
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            term = pmul(term, [Fraction(-xj), Fraction(1)])
            term = pscale(term, Fraction(1, xi - xj))
        result = padd(result, term)
    return result


def interp_checked(samples, degree):
    """Interpolate through the first degree+1 samples, assert the rest fit."""
    pts = list(samples)
    assert len(pts) >= degree + 1, (len(pts), degree)
    poly = lagrange(pts[: degree + 1])
    for x, y in pts[degree + 1:]:
        assert peval(poly, x) == y, f"interpolation residual at q={x}"
    return poly


def pstr(p):
    return [str(Fraction(c)) for c in p] if p else ["0"]


def poincare_poly(degrees):
    poly = [Fraction(1)]
    for d in degrees:
        poly = pmul(poly, [Fraction(1)] * d)
    return poly


# ---------------------------------------------------------------------------
# Weyl groups of types B_n and D_n as signed permutations
# ---------------------------------------------------------------------------


def sp_compose(w, v):
    """(w . v)(e_i) = w(v(e_i)); entries are signed 1-based images."""
    out = []
    for x in v:
        y = w[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def b_generators(n):
    gens = []
    g0 = list(range(1, n + 1))
    g0[0] = -1
    gens.append(tuple(g0))
    for i in range(n - 1):
        g = list(range(1, n + 1))
        g[i], g[i + 1] = g[i + 1], g[i]
        gens.append(tuple(g))
    return gens


def d_generators(n):
    gens = []
    g0 = list(range(1, n + 1))
    g0[0], g0[1] = -2, -1
    gens.append(tuple(g0))
    for i in range(n - 1):
        g = list(range(1, n + 1))
        g[i], g[i + 1] = g[i + 1], g[i]
        gens.append(tuple(g))
    return gens


def enumerate_group(gens, n):
    """BFS: list of (element, length, word) with shortest words, parents first."""
    e = tuple(range(1, n + 1))
    seen = {e: (0, ())}
    order = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            lw, word = seen[w]
            for gi, g in enumerate(gens):
                u = sp_compose(w, g)
                if u not in seen:
                    seen[u] = (lw + 1, word + (gi,))
                    order.append(u)
                    nxt.append(u)
        frontier = nxt
    return [(w, seen[w][0], seen[w][1]) for w in order]


# ---------------------------------------------------------------------------
# seminormal representations of the type-B Hecke algebra on bitableaux
# ---------------------------------------------------------------------------


def partitions_of(n, cap=None):
    if n == 0:
        yield ()
        return
    cap = n if cap is None else cap
    for first in range(min(n, cap), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def bipartitions(n):
    out = []
    for a in range(n + 1):
        for alpha in partitions_of(a):
            for beta in partitions_of(n - a):
                out.append((alpha, beta))
    return out


def standard_bitableaux(shape):
    """All standard fillings; each maps entry k -> (side, row, col), 0-based."""
    alpha, beta = shape
    n = sum(alpha) + sum(beta)

    def forward(filled_a, filled_b, entry):
        if entry > n:
            yield {}
            return
        options = []
        for side, shp, filled in ((0, alpha, filled_a), (1, beta, filled_b)):
            for r, target in enumerate(shp):
                cur = filled[r]
                if cur < target and (r == 0 or filled[r - 1] > cur):
                    options.append((side, r, cur))
        for side, r, c in options:
            if side == 0:
                na = list(filled_a)
                na[r] += 1
                rest_iter = forward(tuple(na), filled_b, entry + 1)
            else:
                nb = list(filled_b)
                nb[r] += 1
                rest_iter = forward(filled_a, tuple(nb), entry + 1)
            for rest in rest_iter:
                d = dict(rest)
                d[entry] = (side, r, c)
                yield d

    start_a = tuple(0 for _ in alpha)
    start_b = tuple(0 for _ in beta)
    result = []
    for d in forward(start_a, start_b, 1):
        result.append(tuple(d[i] for i in range(1, n + 1)))
    return result


def seminormal_matrices(shape, n, Qv, qv):
    """Matrices of T_0 .. T_{n-1} on the seminormal basis, over Fraction."""
    basis = standard_bitableaux(shape)
    index = {t: i for i, t in enumerate(basis)}
    dim = len(basis)

    def content(box):
        side, r, c = box
        val = Fraction(qv) ** (c - r)
        return Qv * val if side == 0 else -val

    mats = []
    m0 = [[Fraction(0)] * dim for _ in range(dim)]
    for t, i in index.items():
        side = t[0][0]
        m0[i][i] = Fraction(Qv) if side == 0 else Fraction(-1)
    mats.append(m0)
    for k in range(1, n):
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for t, i in index.items():
            bi, bj = t[k - 1], t[k]
            same_side = bi[0] == bj[0]
            if same_side and bi[1] == bj[1]:
                m[i][i] = Fraction(qv)
                continue
            if same_side and bi[2] == bj[2]:
                m[i][i] = Fraction(-1)
                continue
            tl = list(t)
            tl[k - 1], tl[k] = tl[k], tl[k - 1]
            j = index[tuple(tl)]
            a, b = content(bi), content(bj)
            assert a != b
            m[i][i] = (qv - 1) * b / (b - a)
            if i < j:
                m[i][j] = Fraction(1)
            else:
                m[i][j] = -(qv * b - a) * (qv * a - b) / ((b - a) ** 2)
        mats.append(m)
    return basis, mats


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x == 0:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j] != 0:
                    oi[j] += x * bt[j]
    return out


def mat_eq(a, b):
    return all(a[i][j] == b[i][j] for i in range(len(a)) for j in range(len(a[0])))


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def check_b_relations(mats, qv, Qv):
    n = len(mats)
    dim = len(mats[0])
    ident = [
        [Fraction(1) if i == j else Fraction(0) for j in range(dim)] for i in range(dim)
    ]

    def quad(m, x, y):
        mm = mat_mul(m, m)
        for i in range(dim):
            for j in range(dim):
                val = mm[i][j] - (x + y) * m[i][j] + (x * y) * ident[i][j]
                assert val == 0

    quad(mats[0], Fraction(Qv), Fraction(-1))
    for m in mats[1:]:
        quad(m, Fraction(qv), Fraction(-1))
    if n >= 2:
        ab = mat_mul(mats[0], mats[1])
        ba = mat_mul(mats[1], mats[0])
        assert mat_eq(mat_mul(ab, ab), mat_mul(ba, ba))
    for i in range(1, n - 1):
        assert mat_eq(
            mat_mul(mat_mul(mats[i], mats[i + 1]), mats[i]),
            mat_mul(mat_mul(mats[i + 1], mats[i]), mats[i + 1]),
        )
    for i in range(n):
        for j in range(i + 2, n):
            assert mat_eq(mat_mul(mats[i], mats[j]), mat_mul(mats[j], mats[i]))


def characters_along_group(group, gen_mats):
    """Traces of T_w and of T_{w^-1} for every listed group element."""
    dim = len(gen_mats[0])
    ident = [
        [Fraction(1) if i == j else Fraction(0) for j in range(dim)] for i in range(dim)
    ]
    fwd = {(): ident}
    rev = {(): ident}
    out = []
    for _, lw, word in group:
        if word not in fwd:
            prefix = word[:-1]
            g = word[-1]
            fwd[word] = mat_mul(fwd[prefix], gen_mats[g])
            rev[word] = mat_mul(gen_mats[g], rev[prefix])
        out.append((lw, trace(fwd[word]), trace(rev[word])))
    return out


def hook_degree(lam):
    """Type A generic degree of the unipotent character for partition lam."""
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    nstat = sum(i * p for i, p in enumerate(lam))
    num = [Fraction(0)] * nstat + [Fraction(1)]
    for k in range(1, n + 1):
        num = pmul(num, [Fraction(1)] * k)
    den = [Fraction(1)]
    for i, ln in enumerate(lam):
        for j in range(ln):
            h = ln - j + conj[j] - i - 1
            den = pmul(den, [Fraction(1)] * h)
    return pdivexact(num, den)


def compute_b_unipotent(n, calibration=None):
    """Unipotent table for W(B_n) with equal Hecke parameters."""
    gens = b_generators(n)
    group = enumerate_group(gens, n)
    nref = max(lw for _, lw, _ in group)
    shapes = bipartitions(n)
    samples = list(range(2, 2 + nref + 3))

    per_label = {s: [] for s in shapes}
    pw_samples = []
    for q0 in samples:
        pw = Fraction(0)
        for _, lw, _ in group:
            pw += Fraction(q0) ** lw
        pw_samples.append((q0, pw))
        for shape in shapes:
            _, mats = seminormal_matrices(shape, n, Fraction(q0), Fraction(q0))
            if q0 == samples[0]:
                check_b_relations(mats, Fraction(q0), Fraction(q0))
            dim = len(mats[0])
            total = Fraction(0)
            for lw, tr_f, tr_r in characters_along_group(group, mats):
                total += tr_f * tr_r / Fraction(q0) ** lw
            c = total / dim
            per_label[shape].append((q0, pw / c))
    poincare = interp_checked(pw_samples, nref)
    table = {}
    for shape in shapes:
        poly = interp_checked(per_label[shape], nref)
        dim0 = peval(poly, 1)
        assert dim0.denominator == 1
        table[shape] = (int(dim0), poly)
    assert sum(d * d for d, _ in table.values()) == len(group)
    flag = []
    for d, poly in table.values():
        flag = padd(flag, pscale(poly, d))
    assert flag == poincare, "flag identity fails"
    if calibration is not None:
        got = sorted((d, tuple(poly)) for d, poly in table.values())
        want = sorted((d, tuple(ptrim(poly))) for d, poly in calibration)
        assert got == want, ("B-pipeline calibration failed", got, want)
    return table, poincare


def compute_d_unipotent(n, calibrate_a3=False):
    """Unipotent table for W(D_n), via type B at Q = 1.

    Restricting a bipartition module to the even subalgebra keeps it
    irreducible when the two components differ; when they coincide it splits
    into two constituents of equal dimension and equal generic degree (they
    are exchanged by the length-preserving diagram automorphism), so the
    common Schur element can be read off from the combined character.
    """
    gens = d_generators(n)
    group = enumerate_group(gens, n)
    nref = max(lw for _, lw, _ in group)
    unordered = []
    seen = set()
    for a, b in bipartitions(n):
        key = tuple(sorted([a, b]))
        if key not in seen:
            seen.add(key)
            unordered.append((a, b))
    samples = list(range(2, 2 + nref + 3))

    per_label = {s: [] for s in unordered}
    pw_samples = []
    for q0 in samples:
        pw = Fraction(0)
        for _, lw, _ in group:
            pw += Fraction(q0) ** lw
        pw_samples.append((q0, pw))
        for shape in unordered:
            _, bm = seminormal_matrices(shape, n, Fraction(1), Fraction(q0))
            if q0 == samples[0]:
                check_b_relations(bm, Fraction(q0), Fraction(1))
            u1 = mat_mul(mat_mul(bm[0], bm[1]), bm[0])
            mats = [u1] + bm[1:]
            dim = len(mats[0])
            total = Fraction(0)
            for lw, tr_f, tr_r in characters_along_group(group, mats):
                total += tr_f * tr_r / Fraction(q0) ** lw
            c = total / dim
            per_label[shape].append((q0, pw / c))
    poincare = interp_checked(pw_samples, nref)
    table = {}
    for (a, b) in unordered:
        poly = interp_checked(per_label[(a, b)], nref)
        dim0 = peval(poly, 1)
        assert dim0.denominator == 1
        if a == b:
            # The full trace sum is c * (d+ + d-) with equal Schur elements,
            # so P_W / c is already the degree of each constituent.
            table[(a, b, "+")] = (int(dim0), poly)
            table[(a, b, "-")] = (int(dim0), poly)
        else:
            table[(a, b, "")] = (int(dim0), poly)
    assert sum(d * d for d, _ in table.values()) == len(group)
    flag = []
    for d, poly in table.values():
        assert peval(poly, 1) == d
        flag = padd(flag, pscale(poly, d))
    assert flag == poincare, "flag identity fails for D"
    if calibrate_a3:
        assert n == 3
        want = sorted(
            (int(peval(hook_degree(lam), 1)), tuple(hook_degree(lam)))
            for lam in partitions_of(4)
        )
        got = sorted((d, tuple(poly)) for d, poly in table.values())
        assert got == want, "D3 = A3 calibration failed"
    return table, poincare


# ---------------------------------------------------------------------------
# prime field linear algebra
# ---------------------------------------------------------------------------


def f_rref(rows, p):
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    cols = len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def f_nullspace(mat, p):
    if not mat:
        return []
    cols = len(mat[0])
    red, pivots = f_rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fc]) % p
        basis.append(v)
    return basis


def f_matvec(mat, v, p):
    return [sum(a * b for a, b in zip(row, v)) % p for row in mat]


def f_matmul(a, b, p):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)]
        for i in range(n)
    ]


def f_rank(mat, p):
    _, piv = f_rref(mat, p)
    return len(piv)


def f_det(mat, p):
    m = [[x % p for x in r] for r in mat]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = (det * m[c][c]) % p
        inv = pow(m[c][c], p - 2, p)
        for i in range(c + 1, n):
            if m[i][c]:
                f = (m[i][c] * inv) % p
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return det % p


def f_solve(mat, rhs, p):
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [list(mat[i]) + [rhs[i] % p] for i in range(rows)]
    red, piv = f_rref(aug, p)
    x = [0] * cols
    for r, pc in enumerate(piv):
        if pc == cols:
            return None
        x[pc] = red[r][cols]
    return x


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def nonsquare(p):
    for a in range(2, p):
        if legendre(a, p) == -1:
            return a
    raise AssertionError


# ---------------------------------------------------------------------------
# quadric point counts for a nondegenerate symmetric Gram matrix
# ---------------------------------------------------------------------------


def witt_type(gram, p):
    """+1/-1 type of a nondegenerate symmetric form of even dimension."""
    m = len(gram)
    assert m % 2 == 0 and m > 0
    d = f_det(gram, p)
    assert d != 0
    return legendre((pow(-1, m // 2, p) * d) % p, p)


def value_counts(gram, p):
    """Counts of nonzero vectors v by the square class of v^T G v.

    Returns {0: #isotropic nonzero, 1: #(square values), -1: #(nonsquare)}.
    """
    m = len(gram)
    d = f_det(gram, p)
    assert d != 0
    if m % 2 == 0:
        eps = witt_type(gram, p)
        n0 = p ** (m - 1) + eps * (p ** (m // 2) - p ** (m // 2 - 1))
        nc = (p ** m - n0) // (p - 1)
        return {0: n0 - 1, 1: nc * (p - 1) // 2, -1: nc * (p - 1) // 2}
    half = (m - 1) // 2
    out = {0: p ** (m - 1) - 1}
    for cls in (1, -1):
        c = 1 if cls == 1 else nonsquare(p)
        per_value = p ** (m - 1) + p ** half * legendre(
            (pow(-1, half, p) * c * d) % p, p
        )
        out[cls] = per_value * (p - 1) // 2
    return out


def value_counts_selftest():
    for p in (3, 5, 7):
        nu = nonsquare(p)
        for gram in (
            [[1]],
            [[nu]],
            [[2, 0], [0, 1]],
            [[1, 0], [0, (-nu) % p]],
            [[0, 1], [1, 0]],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 0, 0], [0, 1, 0], [0, 0, nu]],
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        ):
            if f_det(gram, p) == 0:
                continue
            m = len(gram)
            got = value_counts(gram, p)
            brute = {0: 0, 1: 0, -1: 0}
            for v in itertools.product(range(p), repeat=m):
                if not any(v):
                    continue
                val = sum(v[i] * gram[i][j] * v[j] for i in range(m) for j in range(m))
                brute[legendre(val, p)] += 1
            assert got == brute, (p, gram, got, brute)


# ---------------------------------------------------------------------------
# nilpotents with an invariant form over F_p
# ---------------------------------------------------------------------------


def jordan_types(total, kind):
    """Partitions of total with the parity-multiplicity constraint."""
    out = []
    for lam in partitions_of(total):
        mult = {}
        for part in lam:
            mult[part] = mult.get(part, 0) + 1
        ok = True
        for part, m in mult.items():
            if kind == "orth" and part % 2 == 0 and m % 2 == 1:
                ok = False
            if kind == "symp" and part % 2 == 1 and m % 2 == 1:
                ok = False
        if ok:
            out.append(lam)
    return out


def carrier_sizes(lam, kind):
    """Part sizes whose multiplicity space carries a symmetric form."""
    mult = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    want_odd = kind == "orth"
    return sorted(d for d in mult if (d % 2 == 1) == want_odd), mult


def build_rep(lam, scales, kind, p):
    """Gram and nilpotent matrices for Jordan type lam with given scales."""
    carriers, mult = carrier_sizes(lam, kind)
    dim = sum(lam)
    B = [[0] * dim for _ in range(dim)]
    N = [[0] * dim for _ in range(dim)]
    pos = 0

    def single_block(d, a):
        nonlocal pos
        base = pos
        for i in range(d - 1):
            N[base + i + 1][base + i] = 1
        for i in range(d):
            B[base + i][base + d - 1 - i] = (a * pow(-1, i, p)) % p
        pos += d

    def paired_block(d):
        nonlocal pos
        base = pos
        for i in range(d - 1):
            N[base + i + 1][base + i] = 1
            N[base + d + i + 1][base + d + i] = 1
        for i in range(d):
            j = d - 1 - i
            s = pow(-1, i, p)
            B[base + i][base + d + j] = s
            B[base + d + j][base + i] = s if kind == "orth" else (-s) % p
        pos += 2 * d

    for d in sorted(mult, reverse=True):
        m = mult[d]
        if d in carriers:
            sc = scales.get(d, [1] * m)
            assert len(sc) == m
            for a in sc:
                single_block(d, a)
        else:
            assert m % 2 == 0
            for _ in range(m // 2):
                paired_block(d)
    assert pos == dim
    for i in range(dim):
        for j in range(dim):
            if kind == "orth":
                assert B[i][j] == B[j][i]
            else:
                assert B[i][j] == (-B[j][i]) % p
    Nt = [[N[j][i] for j in range(dim)] for i in range(dim)]
    NtB = f_matmul(Nt, B, p)
    BN = f_matmul(B, N, p)
    for i in range(dim):
        for j in range(dim):
            assert (NtB[i][j] + BN[i][j]) % p == 0
    return B, N


def jordan_of(N, p):
    dim = len(N)
    ranks = [dim]
    power = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    while True:
        power = f_matmul(power, N, p)
        r = f_rank(power, p)
        ranks.append(r)
        if r == 0:
            break
    parts = []
    for d in range(1, len(ranks)):
        prev = ranks[d - 1]
        cur = ranks[d]
        nxt = ranks[d + 1] if d + 1 < len(ranks) else 0
        parts += [d] * (prev - 2 * cur + nxt)
    return tuple(sorted(parts, reverse=True))


def intersect_spaces(basis_a, basis_b, p, dim):
    if not basis_a or not basis_b:
        return []
    cols = len(basis_a) + len(basis_b)
    mat = [[0] * cols for _ in range(dim)]
    for j, v in enumerate(basis_a):
        for i in range(dim):
            mat[i][j] = v[i]
    for j, v in enumerate(basis_b):
        for i in range(dim):
            mat[i][len(basis_a) + j] = (-v[i]) % p
    out = []
    for ker in f_nullspace(mat, p):
        coeffs = ker[: len(basis_a)]
        vec = [0] * dim
        for c, v in zip(coeffs, basis_a):
            for i in range(dim):
                vec[i] = (vec[i] + c * v[i]) % p
        if any(vec):
            out.append(vec)
    red, _ = f_rref(out, p)
    return red


def complement_basis(sub, full, p):
    cur = [list(v) for v in sub]
    out = []
    rank = f_rank(cur, p) if cur else 0
    for v in full:
        cand = cur + [list(v)]
        r = f_rank(cand, p)
        if r > rank:
            cur = cand
            rank = r
            out.append(list(v))
    return out


class NilpotentInstance:
    """A nilpotent matrix with an invariant bilinear form over F_p."""

    def __init__(self, kind, B, N, p):
        self.kind = kind
        self.B = B
        self.N = N
        self.p = p
        self.dim = len(B)

    def bform(self, x, y):
        p = self.p
        total = 0
        for i in range(self.dim):
            xi = x[i]
            if xi:
                row = self.B[i]
                total += xi * sum(row[j] * y[j] for j in range(self.dim))
        return total % p

    def kernel_filtration(self):
        """K_d = ker N  intersect  im N^(d-1), for d = 1..maxpart, then []."""
        p = self.p
        dim = self.dim
        ker = f_nullspace(self.N, p)
        lam = jordan_of(self.N, p)
        maxd = lam[0] if lam else 0
        levels = []
        power = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        for d in range(1, maxd + 1):
            if d == 1:
                img = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
            else:
                power = f_matmul(power, self.N, p)
                cols = [[power[i][j] for i in range(dim)] for j in range(dim)]
                img, _ = f_rref(cols, p)
            levels.append(intersect_spaces(ker, img, p, dim))
        levels.append([])
        return lam, levels

    def multiplicity_gram(self, d, levels):
        """Representatives of K_d / K_{d+1} and the induced Gram matrix."""
        p = self.p
        kd = levels[d - 1]
        kd1 = levels[d]
        reps = complement_basis(kd1, kd, p)
        if not reps:
            return [], []
        dim = self.dim
        power = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        for _ in range(d - 1):
            power = f_matmul(power, self.N, p)
        gram = []
        for x in reps:
            u = f_solve(power, x, p)
            assert u is not None
            gram.append([self.bform(u, y) for y in reps])
        return reps, gram

    def invariant_key(self):
        """Class key: Jordan type plus form data per part size.

        Symmetric multiplicity forms of even dimension contribute their Witt
        type (polynomially uniform in q); odd-dimensional ones contribute
        their discriminant class.  The key is canonicalized under global
        scaling of the ambient form (a nonsquare scale flips every
        odd-dimensional discriminant), and for even orthogonal ambient
        spaces the flippable discriminants are masked entirely: there the
        similitude action of the adjoint group fuses the flip-pair into one
        orbit, and the split-ambient constraint makes the raw labels
        prime-dependent.
        """
        p = self.p
        lam, levels = self.kernel_filtration()
        mult = {}
        for part in lam:
            mult[part] = mult.get(part, 0) + 1
        entries = []
        for d in sorted(mult):
            m = mult[d]
            symmetric = (d % 2 == 1) if self.kind == "orth" else (d % 2 == 0)
            if not symmetric:
                entries.append((d, m, None))
                continue
            _, gram = self.multiplicity_gram(d, levels)
            assert len(gram) == m
            det = f_det(gram, p)
            assert det != 0, "degenerate multiplicity form"
            if m % 2 == 0:
                entries.append((d, m, ("wt", witt_type(gram, p))))
            else:
                entries.append((d, m, ("disc", legendre(det, p))))
        if self.kind == "orth" and self.dim % 2 == 0:
            masked = []
            for d, m, inv in entries:
                if inv is not None and inv[0] == "disc":
                    masked.append((d, m, ("disc", "*")))
                else:
                    masked.append((d, m, inv))
            entries = masked
        key = (self.kind, self.dim, tuple(entries))
        return min(key, flip_key(key))

    def descend(self, v):
        """ell-perp / ell with the induced form and nilpotent, ell = <v>."""
        p = self.p
        dim = self.dim
        row = [sum(v[i] * self.B[i][j] for i in range(dim)) % p for j in range(dim)]
        assert any(row)
        perp = f_nullspace([row], p)
        quot = complement_basis([v], perp, p)
        k = len(quot)
        assert k == dim - 2
        gram = [[self.bform(x, y) for y in quot] for x in quot]
        mat = [[0] * (k + 1) for _ in range(dim)]
        for j, c in enumerate(quot):
            for i in range(dim):
                mat[i][j] = c[i]
        for i in range(dim):
            mat[i][k] = v[i]
        Nbar = [[0] * k for _ in range(k)]
        for jdx, x in enumerate(quot):
            img = f_matvec(self.N, x, p)
            sol = f_solve(mat, img, p)
            assert sol is not None
            for i in range(k):
                Nbar[i][jdx] = sol[i]
        return NilpotentInstance(self.kind, gram, Nbar, p)


def flip_key(key):
    kind, dim, entries = key
    out = []
    for d, m, inv in entries:
        if inv is not None and inv[0] == "disc" and inv[1] != "*":
            out.append((d, m, ("disc", -inv[1])))
        else:
            out.append((d, m, inv))
    return (kind, dim, tuple(out))


def find_class_vector(gram, cls, p):
    m = len(gram)
    for v in itertools.product(range(p), repeat=m):
        if not any(v):
            continue
        val = sum(v[i] * gram[i][j] * v[j] for i in range(m) for j in range(m))
        if legendre(val, p) == cls:
            return list(v)
    raise AssertionError("no vector in requested class")


def combine(reps, coeffs, p, dim):
    v = [0] * dim
    for c, r in zip(coeffs, reps):
        if c:
            for i in range(dim):
                v[i] = (v[i] + c * r[i]) % p
    return v


def flag_count(inst, memo):
    """Number of nilpotent-stable complete isotropic flags.

    Flags are chains of isotropic subspaces of dimensions 1..r, where r is
    the Witt index for odd orthogonal and symplectic spaces and r - 1 for
    even orthogonal spaces (the last step of such a chain determines the
    two completions, and its stabilizer is a Borel subgroup).  A stable
    line under a nilpotent lies in its kernel; lines are stratified by the
    Jordan-filtration height d and the square class of the induced
    multiplicity-form value, the descent class depends only on the stratum
    (Witt extension inside the centralizer), and stratum sizes come from
    closed quadric counts.
    """
    kind, p = inst.kind, inst.p
    if kind == "orth" and inst.dim <= 2:
        return 1
    if kind == "symp" and inst.dim == 0:
        return 1
    key = inst.invariant_key()
    if key in memo:
        return memo[key]
    lam, levels = inst.kernel_filtration()
    mult = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    total = 0
    for d in sorted(mult):
        m = mult[d]
        reps, gram = inst.multiplicity_gram(d, levels)
        assert len(reps) == m
        fiber = p ** len(levels[d])
        symmetric = (d % 2 == 1) if kind == "orth" else (d % 2 == 0)
        if symmetric:
            counts = value_counts(gram, p)
            allowed = [0] if (d == 1 and kind == "orth") else [0, 1, -1]
            for cls in allowed:
                cnt = counts.get(cls, 0)
                if cnt == 0:
                    continue
                vbar = find_class_vector(gram, cls, p)
                v = combine(reps, vbar, p, inst.dim)
                sub = flag_count(inst.descend(v), memo)
                assert cnt * fiber % (p - 1) == 0
                total += (cnt * fiber // (p - 1)) * sub
        else:
            cnt = p ** m - 1
            vbar = [1] + [0] * (m - 1)
            v = combine(reps, vbar, p, inst.dim)
            sub = flag_count(inst.descend(v), memo)
            assert cnt * fiber % (p - 1) == 0
            total += (cnt * fiber // (p - 1)) * sub
    memo[key] = total
    return total


def brute_flag_count(inst):
    """Independent slow path: enumerate stable isotropic lines directly."""
    kind, p = inst.kind, inst.p
    if kind == "orth" and inst.dim <= 2:
        return 1
    if kind == "symp" and inst.dim == 0:
        return 1
    ker = f_nullspace(inst.N, p)
    k = len(ker)
    total = 0
    for coeffs in itertools.product(range(p), repeat=k):
        nz = next((i for i, c in enumerate(coeffs) if c), None)
        if nz is None or coeffs[nz] != 1:
            continue
        v = combine(ker, list(coeffs), p, inst.dim)
        if kind == "orth" and inst.bform(v, v) != 0:
            continue
        total += brute_flag_count(inst.descend(v))
    return total


# ---------------------------------------------------------------------------
# group orders, centralizer orders, orbit sizes
# ---------------------------------------------------------------------------


def order_o(m, eps, q):
    if m == 0:
        return 1
    if m == 1:
        return 2
    if m % 2 == 1:
        k = (m - 1) // 2
        val = 2 * q ** (k * k)
        for i in range(1, k + 1):
            val *= q ** (2 * i) - 1
        return val
    k = m // 2
    val = 2 * q ** (k * (k - 1)) * (q ** k - eps)
    for i in range(1, k):
        val *= q ** (2 * i) - 1
    return val


def order_sp(m, q):
    assert m % 2 == 0
    k = m // 2
    val = q ** (k * k)
    for i in range(1, k + 1):
        val *= q ** (2 * i) - 1
    return val


def ambient_order(kind, dim, q):
    """|SO(F_q)| of the split form, or |Sp(F_q)|."""
    if kind == "symp":
        return order_sp(dim, q)
    if dim % 2 == 1:
        return order_o(dim, 0, q) // 2
    return order_o(dim, 1, q) // 2


def centralizer_data(kind, lam, eps_of, q):
    """(|C(N)(F_q)| in the full isometry group O/Sp, dim C(N))."""
    mult = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    conj = [sum(1 for x in lam if x > j) for j in range(lam[0])] if lam else []
    conj_sq = sum(c * c for c in conj)
    odd_count = sum(1 for x in lam if x % 2 == 1)
    if kind == "orth":
        dim_c = (conj_sq - odd_count) // 2
    else:
        dim_c = (conj_sq + odd_count) // 2
    dim_red = 0
    red = 1
    for d, m in mult.items():
        o_factor = (d % 2 == 1) if kind == "orth" else (d % 2 == 0)
        if o_factor:
            dim_red += m * (m - 1) // 2
            red *= order_o(m, eps_of.get(d, 1), q)
        else:
            dim_red += m * (m + 1) // 2
            red *= order_sp(m, q)
    return q ** (dim_c - dim_red) * red, dim_c


# ---------------------------------------------------------------------------
# orbit enumeration and pack row assembly
# ---------------------------------------------------------------------------


def enumerate_rational_classes(kind, dim, p):
    """Canonical invariant key -> representative instance, at this prime."""
    nu = nonsquare(p)
    classes = {}
    for lam in jordan_types(dim, kind):
        carriers, mult = carrier_sizes(lam, kind)
        for choice in itertools.product((1, nu), repeat=len(carriers)):
            scales = {}
            for d, s in zip(carriers, choice):
                sc = [1] * mult[d]
                sc[-1] = s
                scales[d] = sc
            B, N = build_rep(lam, scales, kind, p)
            if kind == "orth" and dim % 2 == 0 and witt_type(B, p) != 1:
                continue  # the ambient space carries the split form
            inst = NilpotentInstance(kind, B, N, p)
            classes.setdefault(inst.invariant_key(), inst)
    return classes


def key_jordan(key):
    lam = []
    for d, m, _ in key[2]:
        lam += [d] * m
    return tuple(sorted(lam, reverse=True))


def key_eps_of(key):
    return {d: inv[1] for d, m, inv in key[2] if inv is not None and inv[0] == "wt"}


def generate_orbit_rows(kind, dim, adjoint_fusion, so_split_pairs, primes, poincare):
    """Exact orbit rows (jordan, orbit_dim, size, green) for one Lie algebra.

    adjoint_fusion: the acting group is the adjoint group, which reaches
    every similitude multiplier; classes with an odd-multiplicity carrier
    part come in fused pairs whose sizes add.  so_split_pairs: wholly even
    Jordan types split into two special orthogonal orbits with identical
    data.
    """
    rank = dim // 2
    per_sample = {}
    keys_ref = None
    for p in primes:
        classes = enumerate_rational_classes(kind, dim, p)
        per_sample[p] = classes
        if keys_ref is None:
            keys_ref = set(classes)
        else:
            assert set(classes) == keys_ref, f"class set not uniform at q={p}"
    green_memo = {p: {} for p in primes}
    rows = []
    for key in sorted(keys_ref, key=repr):
        lam = key_jordan(key)
        carriers, mult = carrier_sizes(lam, kind)
        flippable = any(mult[d] % 2 == 1 for d in carriers)
        constituents = 2 if (adjoint_fusion and flippable) else 1
        _, dim_c = centralizer_data(kind, lam, key_eps_of(key), 3)
        alg_dim = dim * (dim - 1) // 2 if kind == "orth" else dim * (dim + 1) // 2
        orbit_dim = alg_dim - dim_c
        size_samples = []
        for p in primes:
            c_order, _ = centralizer_data(kind, lam, key_eps_of(key), p)
            amb = ambient_order(kind, dim, p)
            if kind == "orth":
                has_odd = any(x % 2 == 1 for x in lam)
                c_in_so = Fraction(c_order, 2) if has_odd else Fraction(c_order)
            else:
                c_in_so = Fraction(c_order)
            size_samples.append((p, Fraction(constituents) * amb / c_in_so))
        size_poly = interp_checked(size_samples, orbit_dim)
        assert (dim_c - rank) % 2 == 0
        green_deg = (dim_c - rank) // 2
        if orbit_dim == 0:
            p0 = primes[0]
            got = flag_count(per_sample[p0][key], green_memo[p0])
            assert got == peval(poincare, p0), "zero orbit green != Poincare"
            green_poly = list(poincare)
        else:
            green_samples = []
            for p in primes[: green_deg + 2]:
                val = flag_count(per_sample[p][key], green_memo[p])
                green_samples.append((p, Fraction(val)))
            green_poly = interp_checked(green_samples, green_deg)
        assert all(Fraction(c).denominator == 1 for c in green_poly)
        assert all(c >= 0 for c in green_poly)
        row = {
            "jordan": lam,
            "key": key,
            "orbit_dim": orbit_dim,
            "size": size_poly,
            "green": green_poly,
        }
        if so_split_pairs and lam and all(x % 2 == 0 for x in lam):
            for tag in ("+", "-"):
                rows.append(dict(row, split=tag))
        else:
            rows.append(dict(row, split=""))
    return rows


def label_rows(rows):
    """Pack labels: partition digits, '*' for the smaller-green member of an
    invariant pair, '+'/'-' for split special orthogonal pairs."""
    grouped = {}
    for row in rows:
        grouped.setdefault(row["jordan"], []).append(row)
    for jordan, members in grouped.items():
        base = "".join(str(x) for x in jordan)
        plain = [r for r in members if r["split"] == ""]
        for r in members:
            if r["split"]:
                r["label"] = base + r["split"]
        if len(plain) == 1:
            plain[0]["label"] = base
        elif len(plain) == 2:
            plain.sort(
                key=lambda r: (peval(r["green"], 1000), peval(r["size"], 1000)),
                reverse=True,
            )
            plain[0]["label"] = base
            plain[1]["label"] = base + "*"
        elif len(plain) > 2:
            raise AssertionError(f"unexpected class multiplicity for {jordan}")
    return rows


def validate_pack_tables(unip_rows, nilp_rows, poincare, num_positive):
    flag = []
    for d, poly in unip_rows:
        flag = padd(flag, pscale(poly, d))
    assert flag == poincare
    total_size = []
    springer = []
    for row in nilp_rows:
        total_size = padd(total_size, row["size"])
        springer = padd(springer, pmul(row["size"], row["green"]))
        assert len(ptrim(row["size"])) - 1 == row["orbit_dim"]
    expect = [Fraction(0)] * (2 * num_positive) + [Fraction(1)]
    assert total_size == expect, "orbit sizes must partition the nilpotent cone"
    expect2 = pmul([Fraction(0)] * num_positive + [Fraction(1)], poincare)
    assert springer == expect2, "Springer identity fails"


def emit_pack(path, cartan_type, unip_rows, nilp_rows, outer):
    data = {
        "cartan_type": cartan_type,
        "unipotent": [
            {"rho": rho, "dim": d, "generic_degree": pstr(poly)}
            for rho, d, poly in unip_rows
        ],
        "nilpotent": [
            {
                "label": row["label"],
                "orbit_dim": row["orbit_dim"],
                "size": pstr(row["size"]),
                "green": pstr(row["green"]),
            }
            for row in nilp_rows
        ],
        "outer_action": outer,
    }
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")
    print(f"wrote {path}")


def bip_label(alpha, beta, suffix=""):
    return "({}|{}){}".format(
        "".join(str(x) for x in alpha), "".join(str(x) for x in beta), suffix
    )


PRIMES = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107,
]


def brute_check(kind, dim, rows, skip):
    if skip:
        return
    p = 3
    classes = enumerate_rational_classes(kind, dim, p)
    checked = 0
    for row in rows:
        if row["orbit_dim"] == 0:
            continue  # covered by the Poincare identity instead
        if len(row["jordan"]) >= 6:
            continue  # kernel too large for the unmemoized path
        inst = classes[row["key"]]
        brute = brute_flag_count(inst)
        fast = peval(row["green"], p)
        assert brute == fast, (kind, dim, row["jordan"], brute, fast)
        checked += 1
    print(f"  brute-force flag counts agree for {checked} orbits ({kind}{dim})")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument(
        "--out",
        default=os.path.join(
            os.path.dirname(os.path.abspath(__file__)),
            "..", "crates", "charcount", "data", "stretch",
        ),
    )
    ap.add_argument("--skip-brute", action="store_true")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    value_counts_selftest()
    print("quadric count self-test passed")

    half = Fraction(1, 2)
    b2_expected = [
        (1, [Fraction(1)]),
        (1, [Fraction(0), half, Fraction(0), half]),
        (1, [Fraction(0), half, Fraction(0), half]),
        (2, [Fraction(0), half, Fraction(1), half]),
        (1, [Fraction(0)] * 4 + [Fraction(1)]),
    ]
    compute_b_unipotent(2, calibration=b2_expected)
    print("B2 Hecke calibration passed")

    compute_d_unipotent(3, calibrate_a3=True)
    print("D3 = A3 Hecke calibration passed")

    # --- so5 regeneration against the shipped rank-2 pack -------------------
    b2_rows = label_rows(
        generate_orbit_rows(
            "orth", 5,
            adjoint_fusion=False,
            so_split_pairs=False,
            primes=PRIMES[:11],
            poincare=poincare_poly([2, 4]),
        )
    )
    bundled = os.path.join(
        os.path.dirname(os.path.abspath(__file__)),
        "..", "crates", "charcount", "data", "bundled", "b2.json",
    )
    with open(bundled) as fh:
        b2_json = json.load(fh)
    shipped = {
        r["label"]: (
            r["orbit_dim"],
            tuple(ptrim([Fraction(c) for c in r["size"]])),
            tuple(ptrim([Fraction(c) for c in r["green"]])),
        )
        for r in b2_json["nilpotent"]
    }
    regen = {
        r["label"]: (r["orbit_dim"], tuple(ptrim(r["size"])), tuple(ptrim(r["green"])))
        for r in b2_rows
    }
    assert shipped == regen, (shipped, regen)
    print("so5 regeneration matches the shipped b2 pack")

    # --- B3 / C3 -------------------------------------------------------------
    b3_table, b3_poincare = compute_b_unipotent(3)
    b3_unip = [
        (bip_label(alpha, beta), d, poly)
        for (alpha, beta), (d, poly) in sorted(b3_table.items())
    ]
    print(f"B3 unipotent table: {len(b3_unip)} characters")

    b3_rows = label_rows(
        generate_orbit_rows(
            "orth", 7,
            adjoint_fusion=False,
            so_split_pairs=False,
            primes=PRIMES[:21],
            poincare=b3_poincare,
        )
    )
    print(f"B3 nilpotent table: {len(b3_rows)} orbits")
    brute_check("orth", 7, b3_rows, args.skip_brute)

    c3_rows = label_rows(
        generate_orbit_rows(
            "symp", 6,
            adjoint_fusion=True,
            so_split_pairs=False,
            primes=PRIMES[:21],
            poincare=b3_poincare,
        )
    )
    print(f"C3 nilpotent table: {len(c3_rows)} orbits")
    brute_check("symp", 6, c3_rows, args.skip_brute)

    validate_pack_tables([(d, poly) for _, d, poly in b3_unip], b3_rows, b3_poincare, 9)
    validate_pack_tables([(d, poly) for _, d, poly in b3_unip], c3_rows, b3_poincare, 9)
    print("pack-level identities hold for B3 and C3")

    # --- D4 ------------------------------------------------------------------
    d4_table, d4_poincare = compute_d_unipotent(4)
    d4_unip = [
        (bip_label(alpha, beta, tag), d, poly)
        for (alpha, beta, tag), (d, poly) in sorted(d4_table.items())
    ]
    print(f"D4 unipotent table: {len(d4_unip)} characters")

    d4_rows = label_rows(
        generate_orbit_rows(
            "orth", 8,
            adjoint_fusion=True,
            so_split_pairs=True,
            primes=PRIMES,
            poincare=d4_poincare,
        )
    )
    print(f"D4 nilpotent table: {len(d4_rows)} orbits")
    brute_check("orth", 8, d4_rows, args.skip_brute)

    validate_pack_tables([(d, poly) for _, d, poly in d4_unip], d4_rows, d4_poincare, 12)
    print("pack-level identities hold for D4")

    def find_rows(rows, jordan):
        return sorted(r["label"] for r in rows if r["jordan"] == jordan)

    d4_outer = [
        {
            "order": 2,
            "unipotent_orbits": [
                ["(2|2)+", "(2|2)-"],
                ["(11|11)+", "(11|11)-"],
            ],
            "nilpotent_orbits": [
                find_rows(d4_rows, (2, 2, 2, 2)),
                find_rows(d4_rows, (4, 4)),
            ],
        },
        {
            "order": 3,
            "unipotent_orbits": [
                ["(|31)", "(2|2)+", "(2|2)-"],
                ["(|211)", "(11|11)+", "(11|11)-"],
            ],
            "nilpotent_orbits": [
                find_rows(d4_rows, (3, 1, 1, 1, 1, 1))
                + find_rows(d4_rows, (2, 2, 2, 2)),
                find_rows(d4_rows, (5, 1, 1, 1)) + find_rows(d4_rows, (4, 4)),
            ],
        },
    ]

    emit_pack(os.path.join(args.out, "b3.json"), "B3", b3_unip, b3_rows, [])
    emit_pack(os.path.join(args.out, "c3.json"), "C3", b3_unip, c3_rows, [])
    emit_pack(os.path.join(args.out, "d4.json"), "D4", d4_unip, d4_rows, d4_outer)
    print("done")


if __name__ == "__main__":
    sys.setrecursionlimit(100000)
    main()
