"""Brute-force geometric oracle for double points.

Independent of the run-based algorithm in ``loops``: curves are realized as
exact integer polylines in the plane, every choice of strand order inside
each band is tried (or sampled), and crossings are found by exact segment
intersection.  Only intended for short words in tests.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter

from .loops import CyclicWord, as_cyclic
from .surface import Surface


_SCALE = 10 ** 12
_TANGENT = 10 ** 4
_SLOT = 10 ** 3


def _circle_point(S: Surface, h: int):
    """Integer point near angle (k + 1/2)/N turns on a big circle, and a tangent."""
    N = S.num_half_edges
    th = 2 * math.pi * (S.position[h] + 0.5) / N
    base = (round(_SCALE * math.cos(th)), round(_SCALE * math.sin(th)))
    tangent = (round(-_TANGENT * math.sin(th)), round(_TANGENT * math.cos(th)))
    return base, tangent


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _segments_cross(p1, p2, q1, q2) -> int:
    """Sign of the crossing of segment p with segment q, or 0 if disjoint."""
    d1 = _cross(_sub(p2, p1), _sub(q1, p1))
    d2 = _cross(_sub(p2, p1), _sub(q2, p1))
    d3 = _cross(_sub(q2, q1), _sub(p1, q1))
    d4 = _cross(_sub(q2, q1), _sub(p2, q1))
    if d1 == 0 or d2 == 0 or d3 == 0 or d4 == 0:
        raise AssertionError("degenerate configuration")
    if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0):
        c = _cross(_sub(p2, p1), _sub(q2, q1))
        return 1 if c > 0 else -1
    return 0


class _Picture:
    def __init__(self, S: Surface, curves: list[tuple[int, ...]], rng: random.Random):
        self.S = S
        self.curves = curves
        self.base = {h: _circle_point(S, h) for h in S.half_edge_order}
        # strands through each band: (curve index, letter index)
        self.strands: dict[int, list[tuple[int, int]]] = {}
        for ci, w in enumerate(curves):
            for li, a in enumerate(w):
                self.strands.setdefault(abs(a), []).append((ci, li))
        self.jitter = {
            key: rng.randint(-_SLOT // 4, _SLOT // 4)
            for band in self.strands.values() for key in band
        }

    def _attach(self, h: int, slot: int):
        (px, py), (tx, ty) = self.base[h]
        return (px + slot * tx, py + slot * ty)

    def crossings(self, orders: dict[int, tuple[int, ...]]):
        """List of (curve a, passage a, curve b, passage b, sign) with (a, p) < (b, q)."""
        slot = {}
        for e, band in self.strands.items():
            K = len(band)
            for rank, idx in enumerate(orders[e]):
                key = band[idx]
                slot[key] = (2 * rank + 1 - K) * _SLOT + self.jitter[key]
        chords = []
        for ci, w in enumerate(self.curves):
            n = len(w)
            for p in range(n):
                a, b = w[p], w[(p + 1) % n]
                sa, sb = slot[(ci, p)], slot[(ci, (p + 1) % n)]
                # band e is planar: slot s at out(e) continues at slot -s at out(-e)
                start = self._attach(-a, -sa if a > 0 else sa)
                end = self._attach(b, sb if b > 0 else -sb)
                chords.append((ci, p, start, end))
        out = []
        for (c1, p1, s1, e1), (c2, p2, s2, e2) in itertools.combinations(chords, 2):
            sg = _segments_cross(s1, e1, s2, e2)
            if sg:
                out.append((c1, p1, c2, p2, sg))
        return out


def _configurations(pic: _Picture, rng: random.Random, budget: int):
    bands = sorted(pic.strands)
    perms = [list(itertools.permutations(range(len(pic.strands[e])))) for e in bands]
    total = math.prod(len(p) for p in perms)
    if total <= budget:
        for choice in itertools.product(*perms):
            yield dict(zip(bands, choice))
        return
    # random restarts followed by adjacent-swap descent
    for _ in range(max(4, budget // 200)):
        cur = {e: tuple(rng.sample(range(len(pic.strands[e])), len(pic.strands[e]))) for e in bands}
        best = len(pic.crossings(cur))
        improved = True
        while improved:
            improved = False
            for e in bands:
                for i in range(len(cur[e]) - 1):
                    o = list(cur[e])
                    o[i], o[i + 1] = o[i + 1], o[i]
                    trial = dict(cur)
                    trial[e] = tuple(o)
                    c = len(pic.crossings(trial))
                    if c < best:
                        cur, best, improved = trial, c, True
        yield cur


def _minimal(S: Surface, curves, seed: int, budget: int):
    rng = random.Random(seed)
    pic = _Picture(S, curves, rng)
    best, found = None, []
    for cfg in _configurations(pic, rng, budget):
        cr = pic.crossings(cfg)
        if best is None or len(cr) < best:
            best, found = len(cr), [cr]
        elif len(cr) == best:
            found.append(cr)
    return best, found


def _arc(w, start, stop):
    n = len(w)
    return tuple(w[(start + 1 + t) % n] for t in range((stop - start) % n))


def normalize_self_item(sign: int, a1: CyclicWord, a2: CyclicWord):
    """(sign, a1, a2) and (-sign, a2, a1) describe the same double point."""
    return min((sign, a1, a2), (-sign, a2, a1), key=lambda t: (t[1].sort_key(), t[2].sort_key(), t[0]))


def self_intersection_data(S: Surface, w, seed: int = 0, budget: int = 20000):
    """Minimal crossing number and the set of possible multisets of
    ``(sign, first loop, second loop)`` over minimal configurations."""
    W = as_cyclic(S, w).letters
    best, found = _minimal(S, [W], seed, budget)
    variants = set()
    for cr in found:
        items = []
        for _, p, _, q, sg in cr:
            items.append(normalize_self_item(sg, CyclicWord(_arc(W, p, q)), CyclicWord(_arc(W, q, p + len(W)))))
        variants.add(frozenset(Counter(items).items()))
    return best, variants


def intersection_data(S: Surface, u, v, seed: int = 0, budget: int = 20000):
    """Same for two curves: multisets of ``(sign of (u, v), merged loop)``."""
    U, V = as_cyclic(S, u).letters, as_cyclic(S, v).letters
    _, found = _minimal(S, [U, V], seed, budget)
    variants = set()
    best = None
    for cr in found:
        items = []
        for c1, p, c2, q, sg in cr:
            if c1 == c2:
                continue
            merged = U[p + 1:] + U[:p + 1] + V[q + 1:] + V[:q + 1]
            items.append((sg, CyclicWord(merged)))
        best = len(items) if best is None else min(best, len(items))
        variants.add(frozenset(Counter(items).items()))
    return best, variants
