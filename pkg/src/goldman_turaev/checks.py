"""Randomized invariant suites, shared by ``gt check`` and the test-suite."""

from __future__ import annotations

import random
from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Callable

from .bialgebra import BiLoopCombo, LoopCombo, cobracket_with_kinks, goldman_bracket, turaev_cobracket
from .loops import CyclicWord, Framing, local_degrees, rotation_number, whitney_turning
from .surface import Surface
from .words import canonical_cyclic


def random_word(S: Surface, rng: random.Random, max_len: int) -> CyclicWord:
    while True:
        n = rng.randint(1, max_len)
        w = canonical_cyclic(rng.choice((1, -1)) * rng.randint(1, S.rank) for _ in range(n))
        if w:
            return CyclicWord(w)


def random_framing(S: Surface, rng: random.Random, bound: int = 3) -> Framing:
    return Framing(S, tuple(rng.randint(-bound, bound) for _ in range(S.rank)))


def act(S: Surface, x, t: BiLoopCombo) -> BiLoopCombo:
    """x . (u|v) = {x,u}|v + u|{x,v}."""
    out = BiLoopCombo(S)
    for (u, v), c in t:
        for w, d in goldman_bracket(S, x, u):
            out._add((w, v), c * d)
        for w, d in goldman_bracket(S, x, v):
            out._add((u, w), c * d)
    return out


def co_jacobi_defect(xi: Framing, x) -> dict:
    """(1 + tau + tau^2)(delta | id) delta applied to x, as a sparse dict."""
    S = xi.surface
    tri: dict = defaultdict(Fraction)
    for (u, v), c in turaev_cobracket(xi, x):
        for (p, q), d in turaev_cobracket(xi, u):
            tri[(p, q, v)] += c * d
    out: dict = defaultdict(Fraction)
    for (p, q, r), c in tri.items():
        for key in ((p, q, r), (r, p, q), (q, r, p)):
            out[key] += c
    return {k: v for k, v in out.items() if v}


def bracket_after_cobracket(xi: Framing, x) -> LoopCombo:
    S = xi.surface
    out = LoopCombo(S)
    for (u, v), c in turaev_cobracket(xi, x):
        out = out + c * goldman_bracket(S, u, v)
    return out


def _suite_rotation(S, rng, samples):
    for _ in range(samples):
        xi = random_framing(S, rng)
        w = random_word(S, rng, 12)
        turning = whitney_turning(S, w.letters)
        yield "whitney", turning.denominator == 1
        yield "poincare_hopf", sum(local_degrees(xi)) == 2 - 2 * S.genus
        e = rng.randint(1, S.rank)
        bumped = list(xi.twists)
        bumped[e - 1] += 1
        count = sum(1 if a == e else -1 if a == -e else 0 for a in w.letters)
        yield "twist_linearity", rotation_number(Framing(S, tuple(bumped)), w) - rotation_number(xi, w) == count


def _suite_bialgebra(S, rng, samples):
    xi = random_framing(S, rng)
    for _ in range(samples):
        a, b, c = (random_word(S, rng, 6) for _ in range(3))
        A, B, C = (LoopCombo.of(S, w) for w in (a, b, c))
        yield "antisymmetry", goldman_bracket(S, A, B) + goldman_bracket(S, B, A) == 0
        jac = (
            goldman_bracket(S, A, goldman_bracket(S, B, C))
            + goldman_bracket(S, B, goldman_bracket(S, C, A))
            + goldman_bracket(S, C, goldman_bracket(S, A, B))
        )
        yield "jacobi", jac == 0
        lhs = turaev_cobracket(xi, goldman_bracket(S, A, B))
        yield "compatibility", lhs == act(S, A, turaev_cobracket(xi, B)) - act(S, B, turaev_cobracket(xi, A))
        yield "involutivity", bracket_after_cobracket(xi, A) == 0
        yield "co_jacobi", not co_jacobi_defect(xi, A)
        kinks = [rng.choice((1, -1)) for _ in range(rng.randint(0, 3))]
        yield "kinks", cobracket_with_kinks(xi, a, kinks) == turaev_cobracket(xi, a)


SUITES: dict[str, Callable] = {"rotation": _suite_rotation, "bialgebra": _suite_bialgebra}


def run_checks(surfaces, samples: int = 20, seed: int = 0) -> dict:
    report = []
    for S in surfaces:
        rng = random.Random(seed)
        for name, suite in SUITES.items():
            counts: dict = defaultdict(lambda: [0, 0])
            for prop, ok in suite(S, rng, samples):
                counts[prop][0 if ok else 1] += 1
            for prop, (good, bad) in counts.items():
                report.append(
                    {"surface": [S.genus, S.n], "suite": name, "property": prop, "passed": good, "failed": bad}
                )
    passed = sum(r["passed"] for r in report)
    failed = sum(r["failed"] for r in report)
    return {"results": report, "passed": passed, "failed": failed, "ok": failed == 0}


def arf_by_counting(S: Surface, F: tuple[int, ...]) -> int:
    """Arf invariant of the quadratic refinement with values F on x_i, y_i,
    by counting zeros over all of H_1(closed surface; F_2)."""
    g = S.genus
    zeros = 0
    for v in product((0, 1), repeat=2 * g):
        val = sum(f * c for f, c in zip(F, v))
        # F(a + b) = F(a) + F(b) + a.b, with x_i . y_i = 1
        val += sum(v[2 * i] * v[2 * i + 1] for i in range(g))
        zeros += val % 2 == 0
    return 0 if zeros == 2 ** (2 * g - 1) + 2 ** (g - 1) else 1
