"""Acceptance criteria 1-10.  Each test prints a single PASS/FAIL line."""

import itertools
import random
import time
from fractions import Fraction
from functools import reduce
from math import gcd

import pytest

from _util import cyclic_words, naive_exp_letter, naive_log, naive_mul, orbit_gcd, pair_agrees, self_agrees
from goldman_turaev import completion as C
from goldman_turaev.bialgebra import LoopCombo, cobracket_with_kinks, goldman_bracket, turaev_cobracket
from goldman_turaev.checks import act, arf_by_counting, bracket_after_cobracket, co_jacobi_defect, random_framing, random_word
from goldman_turaev.framings import (
    FreeGroupAuto,
    a_invariant,
    arf_invariant,
    elementary_moves,
    framing_cocycle,
    intersection_form,
    orbit_search,
    point_push_automorphism,
    quasi_algebraic_framing_exists,
    same_mcg_orbit,
)
from goldman_turaev.loops import Framing, local_degrees, rotation_number, whitney_turning
from goldman_turaev.surface import build_surface


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())
        assert ok, f"criterion {number} failed: {detail}"

    return emit


def test_01_bialgebra_axioms(report):
    start = time.time()
    failures, count = [], 0
    for g, n in [(1, 0), (0, 2), (2, 0), (1, 1)]:
        S = build_surface(g, n)
        rng = random.Random(100 + 10 * g + n)
        xi = random_framing(S, rng)
        for _ in range(130):
            a, b, c = (LoopCombo.of(S, random_word(S, rng, 8)) for _ in range(3))
            checks = {
                "antisymmetry": goldman_bracket(S, a, b) + goldman_bracket(S, b, a) == 0,
                "jacobi": goldman_bracket(S, a, goldman_bracket(S, b, c))
                + goldman_bracket(S, b, goldman_bracket(S, c, a))
                + goldman_bracket(S, c, goldman_bracket(S, a, b))
                == 0,
                "compatibility": turaev_cobracket(xi, goldman_bracket(S, a, b))
                == act(S, a, turaev_cobracket(xi, b)) - act(S, b, turaev_cobracket(xi, a)),
                "involutivity": bracket_after_cobracket(xi, a) == 0,
                "co_jacobi": not co_jacobi_defect(xi, a),
                "cobracket_antisymmetric": turaev_cobracket(xi, a).is_antisymmetric(),
            }
            failures += [(g, n, k) for k, ok in checks.items() if not ok]
            count += 1
    elapsed = time.time() - start
    report(1, "bialgebra axioms", not failures and count >= 500 and elapsed < 60,
           f"{count} triples, {len(failures)} failures, {elapsed:.1f}s")


def test_02_representative_independence(report):
    rng = random.Random(2)
    bad = count = 0
    for g, n in [(1, 0), (0, 2), (1, 1), (2, 0), (0, 3)]:
        S = build_surface(g, n)
        for _ in range(50):
            xi = random_framing(S, rng)
            w = random_word(S, rng, 8)
            kinks = [rng.choice((1, -1)) for _ in range(rng.randint(0, 3))]
            bad += cobracket_with_kinks(xi, w, kinks) != turaev_cobracket(xi, w)
            count += 1
    report(2, "kinked representatives give the taut cobracket", bad == 0 and count >= 200, f"{count} words, {bad} mismatches")


def test_03_poincare_hopf(report):
    rng = random.Random(3)
    bad = count = 0
    for g in range(4):
        for n in range(4):
            if 2 * g - 1 + n <= 0:
                continue
            S = build_surface(g, n)
            for _ in range(200):
                bad += sum(local_degrees(random_framing(S, rng, 5))) != 2 - 2 * g
                count += 1
    report(3, "Poincare-Hopf", bad == 0, f"{count} framings, {bad} violations")


def test_04_whitney_integrality(report):
    rng = random.Random(4)
    count = 0
    for g, n in [(1, 0), (0, 2), (1, 1), (2, 0), (0, 3), (2, 2), (3, 1)]:
        S = build_surface(g, n)
        for _ in range(100):
            w = random_word(S, rng, 14)
            turning = whitney_turning(S, w.letters)
            if turning.denominator != 1:
                report(4, "Whitney integrality", False, f"{S.format_word(w.letters)} turns {turning}")
            r = rotation_number(random_framing(S, rng), w)
            if not isinstance(r, int):
                report(4, "Whitney integrality", False, f"rot {r!r}")
            count += 1
    report(4, "Whitney integrality", True, f"{count} words, all whole turns")


def test_05_oracle_equivalence(report):
    start = time.time()
    bad, selfs, pairs = [], 0, 0
    for g, n in [(1, 0), (0, 2)]:
        S = build_surface(g, n)
        words = list(cyclic_words(S, 6))
        for w in words:
            selfs += 1
            if not self_agrees(S, w):
                bad.append(S.format_word(w.letters))
        for i, u in enumerate(words):
            for v in words[i:]:
                if len(u) + len(v) <= 6:
                    pairs += 1
                    if not pair_agrees(S, u, v):
                        bad.append((S.format_word(u.letters), S.format_word(v.letters)))
    elapsed = time.time() - start
    report(5, "geometric oracle equivalence", not bad and elapsed < 300,
           f"{selfs} words, {pairs} pairs, {len(bad)} disagreements, {elapsed:.1f}s")


def test_06_classification_soundness(report):
    merged = proven = 0
    for g, n in [(1, 0), (1, 1), (0, 3)]:
        S = build_surface(g, n)
        done = set()
        for tw in itertools.product(range(-2, 3), repeat=S.rank):
            if tw in done:
                continue
            xi = Framing(S, tw)
            orbit = orbit_search(xi, bound=2, limit=5000)
            done |= orbit
            for other in orbit:
                proven += 1
                merged += not same_mcg_orbit(xi, Framing(S, other))
    arf_bad = forms = 0
    for g in (1, 2):
        S = build_surface(g, 0)
        base = Framing(S)
        for F in itertools.product((0, 1), repeat=2 * g):
            # twisting a generator once flips F on it
            tw = tuple((f - (1 + rotation_number(base, (k + 1,)))) % 2 for k, f in enumerate(F))
            xi = Framing(S, tw)
            forms += 1
            arf_bad += arf_invariant(xi) != arf_by_counting(S, F)
    ok = merged == 0 and arf_bad == 0 and forms == 20
    report(6, "classification soundness", ok,
           f"{proven} search-proven pairs, {merged} rejected; Arf on {forms} forms, {arf_bad} wrong")


def _gcd(values):
    return reduce(gcd, (abs(v) for v in values), 0)


def test_07_existence_criterion(report):
    rng = random.Random(7)
    wrong = []
    for g, n in [(0, 2), (0, 3), (2, 0), (2, 1), (3, 0), (3, 1)]:
        S = build_surface(g, n)
        for _ in range(10):
            xi = random_framing(S, rng)
            if not quasi_algebraic_framing_exists(xi):
                wrong.append((g, n, xi.twists))
    sweep = 0
    for g, n, total, with_oracle in [(1, 1, 60, 60), (1, 2, 45, 15)]:
        S = build_surface(g, n)
        for k in range(total):
            xi = random_framing(S, rng, 3)
            # A from the search oracle where affordable, else the family gcd
            A = orbit_gcd(xi, bound=4, limit=800) if k < with_oracle else a_invariant(xi)
            if quasi_algebraic_framing_exists(xi) != (A == _gcd(local_degrees(xi))):
                wrong.append((g, n, xi.twists))
            sweep += 1
    report(7, "quasi-algebraic existence criterion", not wrong and sweep >= 100, f"genus-1 sweep {sweep}, {len(wrong)} wrong")


def _random_auto(S, rng, moves, k):
    psi = FreeGroupAuto.identity(S)
    for _ in range(k):
        psi = rng.choice(moves) @ psi
    return psi


def test_08_cocycle_and_point_push(report):
    rng = random.Random(8)
    law_bad = pairs = push_bad = pushes = 0
    for g, n in [(1, 1), (1, 2)]:
        S = build_surface(g, n)
        moves = [m for _, m in elementary_moves(S)]
        for _ in range(50):
            a, b = _random_auto(S, rng, moves, 3), _random_auto(S, rng, moves, 3)
            xi = random_framing(S, rng, 2)
            fa, fb, fab = framing_cocycle(a, xi), framing_cocycle(b, xi), framing_cocycle(a @ b, xi)
            expect = []
            for c in range(2 * g):
                e = [0] * S.rank
                e[c] = 1
                pre = a.inverse().act_on_homology(e)
                expect.append(fa[c] + sum(fb[k] * pre[k] for k in range(2 * g)))
            law_bad += tuple(expect) != fab
            pairs += 1
        Q = intersection_form(S)
        for _ in range(3):
            xi = random_framing(S, rng, 3)
            d = local_degrees(xi)
            for j in range(1, n + 1):
                for alpha in range(1, 2 * g + 1):
                    f = framing_cocycle(point_push_automorphism(S, j, (alpha,)), xi)
                    push_bad += f != tuple(d[j] * Q[alpha - 1][c] for c in range(2 * g))
                    pushes += 1
    report(8, "cocycle law and point pushes", law_bad == 0 and push_bad == 0 and pairs >= 100,
           f"{pairs} pairs ({law_bad} bad), {pushes} pushes ({push_bad} bad)")


def test_09_filtration(report):
    start = time.time()
    fails = total = 0
    for g, n in [(1, 0), (0, 2), (1, 1)]:
        S = build_surface(g, n)
        theta = C.exp_expansion(S, 5)
        xi = Framing(S)
        words = list(cyclic_words(S, 6))
        for i, a in enumerate(words):
            b = words[(7 * i + 3) % len(words)]
            rep = C.filtration_report(theta, xi, a, b)
            fails += not (rep.bracket_pass and rep.cobracket_pass)
            total += 1
    elapsed = time.time() - start
    report(9, "weight-shift inequalities", fails == 0 and elapsed < 120, f"{total} words, {fails} failures, {elapsed:.1f}s")


def test_10_boundary_defect(report):
    S = build_surface(0, 2)
    theta = C.exp_expansion(S, 4)
    defect = C.boundary_defect(theta)
    half = Fraction(1, 2)
    z1, z2 = S.z(1), S.z(2)
    expected = {(z1, z2): half, (z2, z1): -half}
    ours = {m: c for _, m, c in defect.terms()}

    weights = C.letter_weights(S)

    def weight(w):
        return sum(weights[a - 1] for a in w)

    prod = {(): Fraction(1)}
    for a in S.boundary_words[0]:
        prod = naive_mul(prod, naive_exp_letter(a, weight, 4), weight, 4)
    naive = naive_log(prod, weight, 4)
    for z in (z1, z2):
        naive[(z,)] = naive.get((z,), 0) - 1
    naive = {k: v for k, v in naive.items() if v}

    fixed_ok = True
    for g, n in [(0, 2), (1, 1), (0, 3), (2, 1)]:
        T = build_surface(g, n)
        rep = C.boundary_report(C.boundary_fixed_expansion(T, 4))
        fixed_ok &= rep.is_zero
    ok = ours == expected and naive == expected and fixed_ok
    report(10, "boundary defect", ok, f"defect {defect!r}; corrected expansion zero: {fixed_ok}")
