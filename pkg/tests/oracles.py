"""Brute-force oracles.  None of these call into the code paths they check."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from math import lcm

import numpy as np


def solve_exact(rows, rhs):
    """Solve a square rational system by Gauss-Jordan; None when singular."""
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                k = a[r][col]
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


# ---- linear feasibility -------------------------------------------------

def _holds(coeffs, strict, rhs, point, relax=False):
    lhs = sum(c * x for c, x in zip(coeffs, point))
    if strict and not relax:
        return lhs < rhs
    return lhs <= rhs


def brute_force_feasible(system, nvars, box=10_000):
    """``system``: list of (coeff list, strict, rhs).

    Vertices of the closed relaxation intersected with a big box come from
    every choice of ``nvars`` hyperplanes.  If the strict system is feasible
    its solutions contain the relative interior of the relaxation, so the
    centroid of the vertices decides it; small perturbations of each vertex
    are tried as well.
    """
    planes = [(list(c), b) for c, _, b in system]
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 1
        planes.append((e, box))
        planes.append(([-v for v in e], box))
    bounded = system + [(p, False, b) for p, b in planes[len(system):]]
    verts = set()
    for combo in combinations(planes, nvars):
        sol = solve_exact([c for c, _ in combo], [b for _, b in combo])
        if sol is None:
            continue
        if all(_holds(c, s, b, sol, relax=True) for c, s, b in bounded):
            verts.add(tuple(sol))
    if nvars == 0:
        verts.add(())
    if not verts:
        return False
    verts = sorted(verts)
    centroid = [sum(v[i] for v in verts) / len(verts) for i in range(nvars)]
    candidates = [centroid] + [list(v) for v in verts]
    denoms = [Fraction(b).denominator for _, _, b in system] + [1]
    k = 2 * np.prod(denoms, dtype=object) * 64
    for v in verts:
        for d in product((-1, 0, 1), repeat=nvars):
            candidates.append([x + Fraction(s, k) for x, s in zip(v, d)])
    return any(all(_holds(c, s, b, pt) for c, s, b in system) for pt in candidates)


# ---- interval covering --------------------------------------------------

def sweep_covers(lo, hi, pieces):
    """Endpoint sweep: test every endpoint and every midpoint between consecutive ones."""
    pts = {lo, hi}
    for a, b in pieces:
        for v in (a, b):
            if lo <= v <= hi:
                pts.add(v)
    pts = sorted(pts)
    probes = list(pts) + [(x + y) / 2 for x, y in zip(pts, pts[1:])]
    return all(any(a <= t <= b for a, b in pieces) for t in probes)


# ---- hyperconvexity -----------------------------------------------------

def _scaled(space):
    scale = 1
    for row in space.matrix:
        for v in row:
            scale = lcm(scale, v.denominator)
    # a step of 1/2 in these units is fine enough for any violation to show
    return np.array([[int(v * scale * 2) for v in row] for row in space.matrix], dtype=np.int64), scale * 2


def _excluded_all(P, S, radii, ap):
    """Boolean mask over sample rows: True where no point is a witness."""
    n = P.shape[0]
    any_witness = np.zeros(radii.shape[0], dtype=bool)
    for x in range(n):
        ok = np.ones(radii.shape[0], dtype=bool)
        for col, u in enumerate(S):
            base = P[u, u] if ap else P[x, x]
            ok &= P[x, u] <= base + radii[:, col]
        any_witness |= ok
    return ~any_witness


def _admissible(P, S, radii):
    ok = np.ones(radii.shape[0], dtype=bool)
    for a, u in enumerate(S):
        for b, v in enumerate(S):
            if b >= a:
                ok &= radii[:, a] + radii[:, b] >= P[u, v]
    return ok


def _polytope_vertices(P, S, top):
    """Vertices of {r >= 0, r <= top, r_u + r_v >= p(u,v)} over center set S."""
    k = len(S)
    planes = []
    for a in range(k):
        e = [0] * k
        e[a] = 1
        planes.append((e, 0))
        planes.append((e, top))
        for b in range(a, k):
            row = [0] * k
            row[a] += 1
            row[b] += 1
            planes.append((row, int(P[S[a], S[b]])))
    verts = set()
    for combo in combinations(planes, k):
        sol = solve_exact([c for c, _ in combo], [b for _, b in combo])
        if sol is None or any(v < 0 or v > top for v in sol):
            continue
        if all(sol[a] + sol[b] >= P[S[a], S[b]] for a in range(k) for b in range(a, k)):
            verts.add(tuple(sol))
    return sorted(verts)


def brute_force_hyperconvex(space, notion, interior_samples=64, seed=0):
    """Search admissible families by sampling; returns (holds, family or None).

    Samples: a full grid of step 1/2 (scaled units) up to the diameter, every
    vertex of the bounded admissibility polytope, pairwise vertex midpoints
    and random rational convex combinations of vertices.
    """
    ap = str(getattr(notion, "value", notion)) == "ap"
    P, scale = _scaled(space)
    n = P.shape[0]
    top = int(P.max())
    rng = random.Random(seed)
    for k in range(1, n + 1):
        for S in combinations(range(n), k):
            axis = np.arange(0, top + 1, dtype=np.int64)
            grid = np.array(np.meshgrid(*([axis] * k), indexing="ij")).reshape(k, -1).T
            bad = _admissible(P, S, grid) & _excluded_all(P, S, grid, ap)
            if bad.any():
                r = grid[np.argmax(bad)]
                return False, {space.points[u]: Fraction(int(v), scale) for u, v in zip(S, r)}
            verts = _polytope_vertices(P, S, top)
            samples = list(verts)
            samples += [tuple((a + b) / 2 for a, b in zip(v, w)) for v, w in combinations(verts, 2)]
            for _ in range(interior_samples if verts else 0):
                wts = [Fraction(rng.randint(1, 20)) for _ in verts]
                tot = sum(wts)
                samples.append(tuple(sum(w * v[i] for w, v in zip(wts, verts)) / tot for i in range(k)))
            for r in samples:
                if not all(r[a] + r[b] >= P[S[a], S[b]] for a in range(k) for b in range(a, k)):
                    continue
                witness = False
                for x in range(n):
                    if all(P[x, u] <= (P[u, u] if ap else P[x, x]) + r[c] for c, u in enumerate(S)):
                        witness = True
                        break
                if not witness:
                    return False, {space.points[u]: Fraction(v) / scale for u, v in zip(S, r)}
    return True, None


def brute_force_witnesses(space, balls, ap):
    """Witness set of a (possibly redundant) list of (center, radius) balls."""
    out = set()
    for x in space.points:
        if all(
            space.p(x, u) <= (space.size(u) if ap else space.size(x)) + r for u, r in balls
        ):
            out.add(x)
    return out


def random_partial_metric(rng, n, top=4, den=1, weighted=True):
    """Independent generator: weighted pseudometric construction with redraws."""
    from pmhyper.core import pmetric_violations, validate_pmetric

    labels = [chr(97 + i) for i in range(n)]
    while True:
        if weighted:
            d = [[Fraction(0)] * n for _ in range(n)]
            for i, j in combinations(range(n), 2):
                d[i][j] = d[j][i] = Fraction(rng.randint(0, top * den), den)
            for k in range(n):
                for i in range(n):
                    for j in range(n):
                        d[i][j] = min(d[i][j], d[i][k] + d[k][j])
            w = [Fraction(rng.randint(0, top * den), den) for _ in range(n)]
            m = [[d[i][j] + max(w[i], w[j]) for j in range(n)] for i in range(n)]
        else:
            m = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    m[i][j] = m[j][i] = Fraction(rng.randint(0, top * den), den)
        if not pmetric_violations(labels, m):
            return validate_pmetric(labels, m)
