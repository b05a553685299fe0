"""Floating-point monodromy of tangency fibrations.

Tracks the d tangency points of a foliation along loops in a generic pencil
of lines (or the d preimages of a rational self-map of the line around its
branch values), recovers the permutation generators, the group order by
closure, cycle types, and a numeric genus via Riemann-Hurwitz.  Results are
never certified; they corroborate the symbolic verdicts.
"""

from __future__ import annotations

import cmath
import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .multipoly import MultiPoly
from .polyops import resultant, squarefree_part
from .foliation import PlaneFoliation

SU = ("s", "u")


class TrackingFailure(Exception):
    def __init__(self, message, loop_index=None):
        self.loop_index = loop_index
        super().__init__(message)


class DegeneratePencil(Exception):
    pass


@dataclass
class Fibration:
    """Family q_s(u) of degree-d fibre polynomials with numeric coefficients.

    ``coeff_polys[k]`` holds the numpy coefficient vector (high to low in s)
    of the u^k coefficient.
    """

    degree: int
    coeff_polys: list
    branch_candidates: list
    label: str = ""

    def coeffs_at(self, s: complex) -> np.ndarray:
        return np.array(
            [np.polyval(c, s) for c in self.coeff_polys], dtype=complex
        )  # low to high in u


@dataclass
class MonodromyResult:
    base_parameter: complex
    branch_parameters: list
    generators: list
    group_order: int
    cycle_types: list
    numeric_bw: list
    numeric_genus: int
    degree: int
    galois_flag: bool | None = None
    certified: bool = dc_field(default=False)

    def summary(self) -> str:
        return (
            f"order {self.group_order}, cycle types {self.cycle_types}, "
            f"genus {self.numeric_genus} (numeric, not certified)"
        )


# -- fibration construction ---------------------------------------------------------


def _exact_branch_poly(q: MultiPoly) -> MultiPoly:
    """Resultant Res_u(q, dq/du) as an exact polynomial in s."""
    return resultant(q, q.derivative("u"), "u")


def _numeric_roots(poly: MultiPoly, var: str) -> list[complex]:
    """Roots of the squarefree part, so every numeric root is simple."""
    if poly.total_degree() > 0:
        poly = squarefree_part(poly)
    coeffs = poly.univariate_coeffs(var)
    vec = [complex(c.constant_value()) for c in coeffs]
    arr = np.array(list(reversed(vec)), dtype=complex)
    arr = np.trim_zeros(arr, "f")
    if arr.size <= 1:
        return []
    return list(np.roots(arr))


def pencil_fibration(
    F: PlaneFoliation, rng: random.Random, max_attempts: int = 5
) -> Fibration:
    """Tangency fibration over a generic pencil of lines through a random point.

    The pencil parameter is twisted by a random rational direction frame so
    that no branch value sits at the parameter's infinity (verified later by
    the product-identity check).
    """
    d = F.degree
    field = F.field
    last_error = None
    for _ in range(max_attempts):
        a0 = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
        b0 = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
        c2 = Fraction(rng.randint(-4, 4))
        c4 = Fraction(rng.randint(1, 4))
        # direction (lambda, mu) = (1 + c2 s, s * c4 - ...) keep it simple:
        # (lambda, mu) = (1 + c2*s, c4*s + c3)
        c3 = Fraction(rng.randint(-4, 4))
        s = MultiPoly.variable(field, SU, "s")
        u = MultiPoly.variable(field, SU, "u")
        lam = 1 + s.scale(c2)
        mu = s.scale(c4) + MultiPoly.constant(field, SU, c3)
        ca = MultiPoly.constant(field, SU, a0)
        cb = MultiPoly.constant(field, SU, b0)
        # point on line: (a + lam*u, b + mu*u); tangency: mu*A - lam*B = 0
        xs = ca + lam * u
        ys = cb + mu * u
        sub = {"x": xs, "y": ys}
        abar = F.a_bar.substitute(sub, target=SU)
        bbar = F.b_bar.substitute(sub, target=SU)
        cbar = F.c_bar.substitute(sub, target=SU)
        const = mu * ca - lam * cb
        q = mu * abar - lam * bbar + const * cbar
        if q.degree_in("u") != d:
            last_error = "tangency family dropped degree"
            continue
        disc = _exact_branch_poly(q)
        if disc.is_zero():
            last_error = "discriminant vanished identically"
            continue
        candidates = _numeric_roots(disc, "s")
        lc = q.univariate_coeffs("u")[d]
        if not lc.is_constant():
            candidates += _numeric_roots(lc, "s")
        coeffs = []
        for cpoly in q.univariate_coeffs("u"):
            dense = [0j] * (cpoly.degree_in("s") + 1)
            for e, c in cpoly.terms.items():
                dense[e[0]] = complex(c)
            coeffs.append(np.array(list(reversed(dense)), dtype=complex))
        return Fibration(d, coeffs, candidates, label=f"pencil through ({a0}, {b0})")
    raise DegeneratePencil(
        f"foliation too degenerate for a numeric pencil: {last_error}"
    )


def map_fibration(f, rng: random.Random, max_attempts: int = 6) -> Fibration:
    """Fibration num(u) - y den(u) of a self-map of the line, with a random
    left Möbius twist keeping every branch value at finite parameter."""
    from .klein1d import BinaryRationalMap

    assert isinstance(f, BinaryRationalMap)
    d = f.degree
    field = f.field
    for _ in range(max_attempts):
        while True:
            m = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
            if m[0] * m[3] - m[1] * m[2] != 0 and m[2] != 0:
                break
        num = f.num.rename_vars({"z": "u"}).with_vars(SU)
        den = f.den.rename_vars({"z": "u"}).with_vars(SU)
        # mu(w) = (m0 w + m1)/(m2 w + m3); twisted map value s = mu(num/den)
        tw_num = num.scale(m[0]) + den.scale(m[1])
        tw_den = num.scale(m[2]) + den.scale(m[3])
        s = MultiPoly.variable(field, SU, "s")
        q = tw_num - s * tw_den
        if q.degree_in("u") != d:
            continue
        disc = _exact_branch_poly(q)
        if disc.is_zero():
            raise DegeneratePencil("map has identically singular fibres")
        candidates = _numeric_roots(disc, "s")
        lc = q.univariate_coeffs("u")[d]
        if not lc.is_constant():
            candidates += _numeric_roots(lc, "s")
        coeffs = []
        for cpoly in q.univariate_coeffs("u"):
            dense = [0j] * (cpoly.degree_in("s") + 1)
            for e, c in cpoly.terms.items():
                dense[e[0]] = complex(c)
            coeffs.append(np.array(list(reversed(dense)), dtype=complex))
        return Fibration(d, coeffs, candidates, label="direct 1-d mode")
    raise DegeneratePencil("could not find a working Möbius twist")


# -- tracking --------------------------------------------------------------------------


def _chordal(u, v) -> float:
    if u is None and v is None:
        return 0.0
    if u is None:
        return 1.0 / (1.0 + abs(v) ** 2) ** 0.5
    if v is None:
        return 1.0 / (1.0 + abs(u) ** 2) ** 0.5
    return abs(u - v) / ((1.0 + abs(u) ** 2) ** 0.5 * (1.0 + abs(v) ** 2) ** 0.5)


def _fiber_points(fib: Fibration, s: complex):
    """Roots of q_s as points of the sphere (None encodes infinity)."""
    vec = fib.coeffs_at(s)  # low to high
    arr = np.array(list(reversed(vec)), dtype=complex)
    scale = np.max(np.abs(arr))
    if scale == 0:
        raise TrackingFailure("fibre polynomial vanished identically")
    trimmed = list(arr)
    pad = 0
    while trimmed and abs(trimmed[0]) < 1e-11 * scale:
        trimmed.pop(0)
        pad += 1
    roots = list(np.roots(np.array(trimmed, dtype=complex))) if len(trimmed) > 1 else []
    pts = [None] * pad + [complex(r) for r in roots]
    pts = [None if (p is not None and abs(p) > 1e9) else p for p in pts]
    if len(pts) != fib.degree:
        raise TrackingFailure(
            f"fibre cardinality {len(pts)} != degree {fib.degree} at s={s}"
        )
    return pts


def _match(prev, cur):
    """Injective nearest-point assignment prev -> cur in the chordal metric."""
    from scipy.optimize import linear_sum_assignment

    n = len(prev)
    cost = np.zeros((n, n))
    for i, p in enumerate(prev):
        for j, c in enumerate(cur):
            cost[i, j] = _chordal(p, c)
    rows, cols = linear_sum_assignment(cost)
    perm = [0] * n
    for i, j in zip(rows, cols):
        perm[i] = j
    return perm, cost[rows, cols].max()


def _min_gap(pts) -> float:
    gaps = [
        _chordal(a, b) for a, b in itertools.combinations(pts, 2)
    ]
    return min(gaps) if gaps else 1.0


def _track_path(fib, path, start_pts, collision=1e-8, floor=1e-12, loop_index=None,
                trace=None):
    """Follow the fibre along a piecewise-linear path; returns the end fibre
    in the order continued from ``start_pts``."""
    pts = list(start_pts)
    step_no = 0
    for seg_start, seg_end in zip(path, path[1:]):
        if seg_start == seg_end:
            continue
        cur_t = 0.0
        step = 0.25
        while cur_t < 1.0 - 1e-15:
            target = min(1.0, cur_t + step)
            s_next = seg_start + (seg_end - seg_start) * target
            nxt = _fiber_points(fib, s_next)
            gap = _min_gap(nxt)
            assign, move = _match(pts, nxt)
            if gap < collision or move > 0.33 * max(gap, _min_gap(pts)):
                step /= 2
                if step * abs(seg_end - seg_start) < floor:
                    raise TrackingFailure(
                        f"step floor reached near s={s_next}", loop_index
                    )
                continue
            pts = [nxt[assign[i]] for i in range(fib.degree)]
            cur_t = target
            step = min(0.25, step * 1.6)
            step_no += 1
            if trace is not None:
                for idx, p in enumerate(pts):
                    re, im = (float("inf"), float("inf")) if p is None else (p.real, p.imag)
                    trace.append((loop_index, step_no, idx, re, im))
    return pts


def _loop_paths(base: complex, centers: list, radii: dict):
    """Piecewise-linear loops: to the circle, around it, and back."""
    loops = []
    for c in centers:
        r = radii[c]
        direction = (c - base) / abs(c - base)
        narc = 24
        circle = [
            c - direction * r * cmath.exp(2j * cmath.pi * k / narc)
            for k in range(narc + 1)
        ]
        loops.append([base] + circle + [base])
    return loops


def _closure_order(gens, degree, cap=500_000) -> int:
    idp = tuple(range(degree))
    seen = {idp}
    frontier = [idp]
    gens_t = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens_t:
                prod = tuple(g[h[i]] for i in range(degree))
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > cap:
                        raise TrackingFailure("group closure exceeded the cap")
        frontier = nxt
    return len(seen)


def _cycle_type(perm) -> tuple:
    n = len(perm)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        l = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            l += 1
        out.append(l)
    return tuple(sorted(out, reverse=True))


def track_loops(fib: Fibration, rng: random.Random, collision=1e-8, floor=1e-12,
                dump_csv=None) -> MonodromyResult:
    """Permutation generators around every branch parameter.

    ``dump_csv`` (path or writable handle) records the tracked paths as rows
    ``loop_index,step,root_index,re,im`` for offline inspection.
    """
    d = fib.degree
    centers = _cluster(fib.branch_candidates)
    if not centers:
        gens = []
        return MonodromyResult(0j, [], [], 1, [], [], 1 - d + 0, d)
    spread = max(abs(c) for c in centers) + 1.0
    # base point far away, at a random angle; prefer angles whose rays clear
    # every foreign disk, but accept crowded geometries on later attempts
    # (a ray traversed there and back never winds a foreign point, so only
    # numerical root collisions matter, and the tracker guards those)
    for attempt in range(16):
        lenient = attempt >= 8
        theta = rng.uniform(0, 2 * cmath.pi)
        base = 3.0 * spread * cmath.exp(1j * theta)
        radii = {}
        ok = True
        for c in centers:
            others = [abs(c - o) for o in centers if o != c]
            r = min([abs(base - c) / 3.0] + [o / 3.0 for o in others])
            if r <= 0:
                ok = False
                break
            radii[c] = r
        if not ok:
            continue

        def clears(cj):
            seg = cj - base
            for ck in centers:
                if ck == cj:
                    continue
                tt = ((ck - base).conjugate() * seg).real / abs(seg) ** 2
                tt = min(1.0, max(0.0, tt))
                dist = abs(base + tt * seg - ck)
                if dist < 2.2 * radii[ck]:
                    return False
            return True

        if not lenient and not all(clears(c) for c in centers):
            continue
        ordered = sorted(centers, key=lambda c: cmath.phase(c - base))
        loops = _loop_paths(base, ordered, radii)
        start = _fiber_points(fib, base)
        if _min_gap(start) < collision:
            continue
        gens = []
        trace = [] if dump_csv is not None else None
        try:
            for li, path in enumerate(loops):
                pts = _track_path(fib, path, start, collision, floor, li, trace)
                # the loop lift starting at start[i] ends at pts[i], which is
                # again a point of the base fibre
                end_match, slack = _match(pts, start)
                if slack > 0.2 * _min_gap(start):
                    raise TrackingFailure("end fibre did not land on the start fibre", li)
                perm = tuple(end_match[i] for i in range(d))
                gens.append(perm)
        except TrackingFailure:
            continue
        prod = tuple(range(d))
        for g in gens:
            prod = tuple(g[prod[i]] for i in range(d))
        if any(prod[i] != i for i in range(d)):
            # a branch value sits at the parameter's infinity: the fibration
            # needs a different twist, which the caller controls
            raise TrackingFailure("nontrivial monodromy around parameter infinity")
        nontrivial = [g for g in gens if any(g[i] != i for i in range(d))]
        if d > 1 and not nontrivial:
            continue
        order = _closure_order(nontrivial, d) if nontrivial else 1
        cycle_types = [_cycle_type(g) for g in nontrivial]
        ram = sum(sum(e - 1 for e in ct) for ct in cycle_types)
        if ram % 2:
            continue
        genus = 1 - d + ram // 2
        bw = [(ct, 1) for ct in cycle_types]
        if trace is not None:
            _write_trace(dump_csv, trace)
        return MonodromyResult(
            base, [(c, radii[c]) for c in ordered], nontrivial, order,
            cycle_types, bw, genus, d,
        )
    raise TrackingFailure("could not obtain a consistent loop system")


def _write_trace(dump_csv, rows):
    import csv

    if hasattr(dump_csv, "write"):
        writer = csv.writer(dump_csv)
        writer.writerow(["loop_index", "step", "root_index", "re", "im"])
        writer.writerows(rows)
        return
    with open(dump_csv, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["loop_index", "step", "root_index", "re", "im"])
        writer.writerows(rows)


def _cluster(values, tol_factor=1e-6):
    if not values:
        return []
    vals = sorted(values, key=lambda z: (z.real, z.imag))
    scale = max(1.0, max(abs(v) for v in vals))
    out = []
    for v in vals:
        for i, c in enumerate(out):
            if abs(v - c[0]) < tol_factor * scale:
                out[i] = ((c[0] * c[1] + v) / (c[1] + 1), c[1] + 1)
                break
        else:
            out.append((v, 1))
    return [c[0] for c in out]


# -- top-level cross-checks ---------------------------------------------------------


def monodromy_of_foliation(F: PlaneFoliation, seed: int = 11,
                           dump_csv=None) -> MonodromyResult:
    rng = random.Random(seed)
    last = None
    for _ in range(5):
        fib = pencil_fibration(F, rng)
        try:
            result = track_loops(fib, rng, dump_csv=dump_csv)
        except TrackingFailure as exc:
            last = exc
            continue
        result.galois_flag = result.group_order == F.degree
        return result
    raise last if last else TrackingFailure("no pencil tracked successfully")


def monodromy_of_map(f, seed: int = 11, dump_csv=None) -> MonodromyResult:
    rng = random.Random(seed)
    last = None
    for _ in range(5):
        fib = map_fibration(f, rng)
        try:
            result = track_loops(fib, rng, dump_csv=dump_csv)
        except TrackingFailure as exc:
            last = exc
            continue
        result.galois_flag = result.group_order == f.degree
        return result
    raise last if last else TrackingFailure("no fibration tracked successfully")


def cross_check(F: PlaneFoliation, seed: int = 11, dump_csv=None) -> MonodromyResult:
    """Monodromy from two independent pencils; they must agree on the order
    and the multiset of cycle types."""
    first = monodromy_of_foliation(F, seed, dump_csv=dump_csv)
    second = monodromy_of_foliation(F, seed + 1000)
    if first.group_order != second.group_order or sorted(
        first.cycle_types
    ) != sorted(second.cycle_types):
        raise TrackingFailure(
            "independent pencils disagree; numeric monodromy unreliable"
        )
    return first
