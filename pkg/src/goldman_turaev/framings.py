"""Mapping class invariants of framings, automorphisms and point pushes.

Automorphisms of the free group are accepted as mapping classes when they
fix every boundary class up to conjugacy.  The built-in moves (Dehn twists
on the handle curves and point pushes) fix the relator on the nose.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidPuncture, NotDefined, NotMappingClass, ParseError, SurfaceMismatch
from .loops import CyclicWord, Framing, algebraic_intersection, local_degrees, rotation_number, self_intersections
from .surface import Surface
from .words import (
    Word,
    canonical_cyclic,
    cyclic_reduce,
    free_reduce,
    inverse,
    multiply,
    substitute,
)


# -- automorphisms ------------------------------------------------------------


def _conjugator(word: Word, target: Word) -> Word | None:
    """Some ``u`` with ``word == u target u^-1`` (both reduced), or None."""
    w = free_reduce(word)
    k = 0
    while 2 * k + 1 < len(w) and w[k] == -w[len(w) - 1 - k]:
        k += 1
    p, core = w[:k], w[k:len(w) - k]
    n = len(core)
    if n != len(target):
        return None
    for s in range(n):
        # core = s_part t_part with t_part s_part == target
        if core[s:] + core[:s] == tuple(target):
            return multiply(p, core[:s])
    return None


def nielsen_inverse(images: Sequence[Word]) -> tuple[Word, ...]:
    """Invert an automorphism by greedy length-reducing Nielsen moves.

    Raises NotMappingClass when the greedy reduction gets stuck (the images
    are then either not a basis or need a non-greedy move; pass the inverse
    explicitly in that case).
    """
    rank = len(images)
    cur = [free_reduce(u) for u in images]
    # expression of cur[k] as a word in the symbols phi(g_1), ..., phi(g_n)
    expr: list[Word] = [(k + 1,) for k in range(rank)]
    for _ in range(10_000):
        if all(len(u) == 1 for u in cur):
            break
        best = None
        for i in range(rank):
            for j in range(rank):
                if i == j:
                    continue
                for e in (1, -1):
                    v = cur[j] if e == 1 else inverse(cur[j])
                    for side in (0, 1):
                        cand = multiply(cur[i], v) if side else multiply(v, cur[i])
                        gain = len(cur[i]) - len(cand)
                        if gain > 0 and (best is None or gain > best[0]):
                            best = (gain, i, j, e, side, cand)
        if best is None:
            raise NotMappingClass("could not invert the automorphism by Nielsen reduction")
        _, i, j, e, side, cand = best
        ej = expr[j] if e == 1 else inverse(expr[j])
        expr[i] = multiply(expr[i], ej) if side else multiply(ej, expr[i])
        cur[i] = cand
    else:
        raise NotMappingClass("Nielsen reduction did not terminate")
    inv: list[Word | None] = [None] * rank
    for u, ex in zip(cur, expr):
        a = u[0]
        inv[abs(a) - 1] = ex if a > 0 else inverse(ex)
    if any(v is None for v in inv):
        raise NotMappingClass("images do not form a basis")
    return tuple(inv)  # type: ignore[arg-type]


@dataclass(frozen=True)
class FreeGroupAuto:
    """Automorphism given by images of the generators, with its inverse."""

    surface: Surface
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]

    @classmethod
    def identity(cls, S: Surface) -> "FreeGroupAuto":
        ids = tuple((g,) for g in range(1, S.rank + 1))
        return cls(S, ids, ids)

    @classmethod
    def from_images(cls, S: Surface, images: Sequence[Word], inverse_images=None, check=True) -> "FreeGroupAuto":
        images = tuple(free_reduce(w) for w in images)
        if len(images) != S.rank:
            raise ParseError(f"need {S.rank} images, got {len(images)}")
        if inverse_images is None:
            inverse_images = nielsen_inverse(images)
        phi = cls(S, images, tuple(free_reduce(w) for w in inverse_images))
        if check:
            phi.validate()
        return phi

    @classmethod
    def from_json(cls, S: Surface, doc) -> "FreeGroupAuto":
        if isinstance(doc, str):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad automorphism JSON: {exc}") from None
        if not isinstance(doc, dict) or not isinstance(doc.get("images", {}), dict):
            raise ParseError('automorphism must look like {"images": {"x1": "...", ...}}')

        def table(key):
            got = doc.get(key)
            if got is None:
                return None
            out = [(g,) for g in range(1, S.rank + 1)]
            for name, w in got.items():
                gen = S.parse_word(name)
                if len(gen) != 1 or gen[0] < 0:
                    raise ParseError(f"{name!r} is not a generator")
                out[gen[0] - 1] = S.parse_word(str(w))
            return out

        return cls.from_images(S, table("images") or [(g,) for g in range(1, S.rank + 1)], table("inverse"))

    def to_json(self) -> dict:
        S = self.surface
        return {
            "images": {n: S.format_word(w) for n, w in zip(S.generators, self.images)},
            "inverse": {n: S.format_word(w) for n, w in zip(S.generators, self.inverse_images)},
        }

    def _table(self, imgs):
        return {g: w for g, w in enumerate(imgs, start=1)}

    def __call__(self, word: Sequence[int]) -> Word:
        return substitute(word, self._table(self.images))

    def apply_inverse(self, word: Sequence[int]) -> Word:
        return substitute(word, self._table(self.inverse_images))

    def inverse(self) -> "FreeGroupAuto":
        return FreeGroupAuto(self.surface, self.inverse_images, self.images)

    def __matmul__(self, other: "FreeGroupAuto") -> "FreeGroupAuto":
        """``self @ other`` applies ``other`` first."""
        if self.surface != other.surface:
            raise SurfaceMismatch("automorphisms on different surfaces")
        imgs = tuple(self(w) for w in other.images)
        inv = tuple(other.apply_inverse(w) for w in self.inverse_images)
        return FreeGroupAuto(self.surface, imgs, inv)

    def __eq__(self, other):
        return isinstance(other, FreeGroupAuto) and self.surface == other.surface and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def validate(self):
        S = self.surface
        for g in range(1, S.rank + 1):
            if self(self.apply_inverse((g,))) != (g,) or self.apply_inverse(self((g,))) != (g,):
                raise NotMappingClass("supplied inverse does not invert the images")
        for j, gam in enumerate(S.boundary_words):
            if canonical_cyclic(self(gam)) != canonical_cyclic(gam):
                raise NotMappingClass(f"boundary class of puncture {j} is not preserved")

    def homology_matrix(self) -> list[list[int]]:
        """Column k is the homology class of the image of generator k."""
        S = self.surface
        cols = [S.homology(w) for w in self.images]
        return [[cols[k][r] for k in range(S.rank)] for r in range(S.rank)]

    def act_on_homology(self, vec: Sequence[int]) -> tuple[int, ...]:
        M = self.homology_matrix()
        return tuple(sum(M[r][k] * vec[k] for k in range(len(vec))) for r in range(len(M)))


def _fixing(S: Surface, images: dict[int, Word], inverse_images: dict[int, Word]) -> FreeGroupAuto:
    imgs = tuple(images.get(g, (g,)) for g in range(1, S.rank + 1))
    inv = tuple(inverse_images.get(g, (g,)) for g in range(1, S.rank + 1))
    phi = FreeGroupAuto(S, imgs, inv)
    assert phi(S.relator()) == S.relator(), "move must fix the relator"
    return phi


def dehn_twist(S: Surface, gen: str, power: int = 1) -> FreeGroupAuto:
    """Twist about the handle curve ``x_i`` or ``y_i``; both fix [x_i, y_i] exactly."""
    (g,) = S.parse_word(gen)
    if g < 0 or g > 2 * S.genus:
        raise ParseError(f"{gen!r} is not a handle generator")
    i = (g + 1) // 2
    x, y = S.x(i), S.y(i)
    phi = FreeGroupAuto.identity(S)
    step = (
        _fixing(S, {y: (y, x)}, {y: (y, -x)}) if g == x else _fixing(S, {x: (x, y)}, {x: (x, -y)})
    )
    if power < 0:
        step, power = step.inverse(), -power
    for _ in range(power):
        phi = step @ phi
    return phi


# local models on the alphabet 1, 2, 3 with product word fixed exactly
def _exact_local(product: Word, images: dict[int, Word], rank: int) -> tuple[dict, dict]:
    imgs = [images.get(g, (g,)) for g in range(1, rank + 1)]
    u = _conjugator(substitute(product, dict(enumerate(imgs, 1))), product)
    assert u is not None
    imgs = [multiply(inverse(u), w, u) for w in imgs]
    inv = nielsen_inverse(imgs)
    return dict(enumerate(imgs, 1)), dict(enumerate(inv, 1))


_HANDLE = (1, 2, -1, -2, 3)
# pushing the puncture loop 3 around the handle curve 1 (resp. 2)
_LOCAL_PUSH = {
    "x": _exact_local(_HANDLE, {2: (-3, 2), 3: (1, 3, -1)}, 3),
    "y": _exact_local(_HANDLE, {1: (3, 1), 3: (2, 3, -2)}, 3),
}


def _embed(S: Surface, local: dict[int, Word], slots: dict[int, Word], back: dict[int, Word]) -> dict[int, Word]:
    """Transport a local automorphism: local letter k stands for the word slots[k];
    ``back[k]`` conjugates the image back onto the actual generator."""
    out = {}
    for k, word in slots.items():
        img = substitute(local[k], slots)
        gen = word if len(word) == 1 else None
        b = back.get(k, ())
        if gen is None:
            # slot is b g b^-1 for a generator g
            g = word[len(b)]
            out[g] = multiply(inverse(b), img, b)
        else:
            out[gen[0]] = img
    return out


def _elementary_push(S: Surface, j: int, letter: int) -> FreeGroupAuto:
    g, n = S.genus, S.n
    zj = S.z(j)
    e = abs(letter)
    if e <= 2 * g:
        # slide the loop of puncture j next to handle i: zeta = B z_j B^-1
        i = (e + 1) // 2
        B = S.relator()[4 * i:4 * g] + tuple(S.z(m) for m in range(1, j))
        fwd, bwd = _LOCAL_PUSH["x" if e == S.x(i) else "y"]
        slots = {1: (S.x(i),), 2: (S.y(i),), 3: multiply(B, (zj,), inverse(B))}
        back = {3: B}
    else:
        k = e - 2 * g
        if k == j:
            raise InvalidPuncture("cannot push a puncture around its own loop")
        # full twist of the two adjacent puncture loops
        lo, hi = min(k, j), max(k, j)
        B = tuple(S.z(m) for m in range(lo + 1, hi))
        full = (1, 2)
        fwd = {c: multiply(full, (c,), inverse(full)) for c in (1, 2)}
        bwd = {c: multiply(inverse(full), (c,), full) for c in (1, 2)}
        slots = {1: (S.z(lo),), 2: multiply(B, (S.z(hi),), inverse(B))}
        back = {2: B}
    images = _embed(S, fwd, slots, back)
    inv = _embed(S, bwd, slots, back)
    phi = _fixing(S, images, inv)
    return phi if letter > 0 else phi.inverse()


def point_push_automorphism(S: Surface, j: int, alpha) -> FreeGroupAuto:
    """Push puncture ``j`` around the based loop ``alpha`` (a word avoiding z_j).

    Pushing around a product is the composite of the pushes, leftmost letter
    outermost.
    """
    if not isinstance(j, int) or j < 1 or j > S.n:
        raise InvalidPuncture(f"puncture index must be in 1..{S.n}, got {j!r}")
    word = S.parse_word(alpha) if isinstance(alpha, str) else tuple(alpha)
    word = free_reduce(word)
    if S.z(j) in map(abs, word):
        raise InvalidPuncture(f"the loop must avoid z{j}")
    phi = FreeGroupAuto.identity(S)
    for a in word:
        phi = phi @ _elementary_push(S, j, a)
    return phi


def elementary_moves(S: Surface) -> list[tuple[str, FreeGroupAuto]]:
    """Named generators used by the orbit search: handle twists and pushes."""
    moves = []
    for i in range(1, S.genus + 1):
        for name in (f"x{i}", f"y{i}"):
            t = dehn_twist(S, name)
            moves += [(f"T_{name}", t), (f"T_{name}^-1", t.inverse())]
    for j in range(1, S.n + 1):
        for e in range(1, S.rank + 1):
            if e == S.z(j):
                continue
            p = _elementary_push(S, j, e)
            name = S.letter_name(e)
            moves += [(f"push{j}({name})", p), (f"push{j}({name})^-1", p.inverse())]
    return moves


# -- framings under automorphisms ------------------------------------------------


def pushforward_framing(psi: FreeGroupAuto, xi: Framing) -> Framing:
    """The framing whose rotation function is ``rot_xi`` composed with ``psi^-1``."""
    S = xi.surface
    if psi.surface != S:
        raise SurfaceMismatch("automorphism and framing on different surfaces")
    psi.validate()
    bb = Framing(S)
    twists = []
    for g in range(1, S.rank + 1):
        pre = cyclic_reduce(psi.apply_inverse((g,)))
        twists.append(rotation_number(xi, pre) - rotation_number(bb, (g,)))
    out = Framing(S, tuple(twists))
    assert local_degrees(out) == local_degrees(xi), "pushforward changed local degrees"
    return out


def framing_cocycle(psi: FreeGroupAuto, xi: Framing) -> tuple[int, ...]:
    """``psi_* xi - xi`` on the basis x_1, y_1, ..., x_g, y_g of the closed surface."""
    S = xi.surface
    pushed = pushforward_framing(psi, xi)
    diff = [rotation_number(pushed, (g,)) - rotation_number(xi, (g,)) for g in range(1, S.rank + 1)]
    if any(diff[2 * S.genus:]):
        raise AssertionError(f"cocycle does not vanish on puncture loops: {diff}")
    return tuple(diff[:2 * S.genus])


def intersection_form(S: Surface) -> list[list[int]]:
    """Algebraic intersection numbers of the generator loops (basis of H_1)."""
    return [[algebraic_intersection(S, (a,), (b,)) for b in range(1, S.rank + 1)] for a in range(1, S.rank + 1)]


# -- invariants ---------------------------------------------------------------


def _gcd(values: Iterable[int]) -> int:
    return reduce(gcd, (abs(v) for v in values), 0)


def quadratic_form_values(xi: Framing) -> tuple[int, ...]:
    """F(c) = 1 + rot(c) mod 2 on x_1, y_1, ..., x_g, y_g."""
    S = xi.surface
    return tuple((1 + rotation_number(xi, (g,))) % 2 for g in range(1, 2 * S.genus + 1))


def arf_invariant(xi: Framing) -> int:
    S = xi.surface
    if S.genus == 0:
        raise NotDefined("the Arf invariant needs genus at least 1")
    if any(d % 2 for d in local_degrees(xi)):
        raise NotDefined("the Arf invariant needs every local degree even")
    F = quadratic_form_values(xi)
    return sum(F[2 * i] * F[2 * i + 1] for i in range(S.genus)) % 2


def christoffel_word(S: Surface, a: int, b: int) -> Word:
    """Simple word of homology a*x_1 + b*y_1 in the first handle (a, b coprime)."""
    x, y = S.x(1), S.y(1)
    if a == 0 or b == 0:
        return ((x if a > 0 else -x),) if b == 0 else ((y if b > 0 else -y),)
    p, q = abs(a), abs(b)
    sx, sy = (x if a > 0 else -x), (y if b > 0 else -y)
    word = []
    for k in range(1, p + q + 1):
        word.append(sy if (k * q) // (p + q) != ((k - 1) * q) // (p + q) else sx)
    return tuple(word)


def _short_words(S: Surface, length: int):
    letters = [s * g for g in range(1, S.rank + 1) for s in (1, -1)]
    frontier = [()]
    seen = set()
    for _ in range(length):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                v = w + (a,)
                nxt.append(v)
                c = canonical_cyclic(v)
                if len(c) == len(v) and c not in seen:
                    seen.add(c)
                    yield c
        frontier = nxt


def simple_nonseparating_family(S: Surface, max_slope: int = 3, max_len: int = 4) -> list[Word]:
    """Finite family of simple loops with nonzero class on the closed surface (genus 1)."""
    key = ("simple_family", max_slope, max_len)
    if key in S._cache:
        return S._cache[key]
    cands = set()
    for a in range(-max_slope, max_slope + 1):
        for b in range(-max_slope, max_slope + 1):
            if gcd(a, b) == 1:
                cands.add(canonical_cyclic(christoffel_word(S, a, b)))
    base = list(cands)
    for j in range(1, S.n + 1):
        for e in (S.x(1), S.y(1)):
            for sgn in (1, -1):
                psi = _elementary_push(S, j, sgn * e)
                cands.update(canonical_cyclic(psi(w)) for w in base)
    cands.update(_short_words(S, max_len))
    out = []
    for w in sorted(cands, key=lambda w: (len(w), w)):
        h = S.homology(w)
        if any(h[:2 * S.genus]) and not self_intersections(S, CyclicWord(w)):
            out.append(w)
    S._cache[key] = out
    return out


def a_invariant(xi: Framing) -> int:
    S = xi.surface
    if S.genus != 1:
        raise NotDefined("A is defined for genus 1 only")
    return _gcd(rotation_number(xi, w) for w in simple_nonseparating_family(S))


@dataclass(frozen=True)
class OrbitInvariants:
    d: tuple[int, ...]
    arf: int | None
    a_inv: int | None

    def to_json(self) -> dict:
        return {"d": list(self.d), "arf": self.arf, "A": self.a_inv}


def orbit_invariants(xi: Framing) -> OrbitInvariants:
    S = xi.surface
    d = local_degrees(xi)
    arf = arf_invariant(xi) if S.genus >= 1 and all(v % 2 == 0 for v in d) else None
    A = a_invariant(xi) if S.genus == 1 else None
    return OrbitInvariants(d, arf, A)


def same_mcg_orbit(xi0: Framing, xi1: Framing) -> bool:
    if xi0.surface != xi1.surface:
        raise SurfaceMismatch("framings on different surfaces")
    S = xi0.surface
    d0, d1 = local_degrees(xi0), local_degrees(xi1)
    if d0 != d1:
        return False
    if S.genus == 0:
        return True
    if S.genus == 1:
        return a_invariant(xi0) == a_invariant(xi1)
    if any(v % 2 for v in d0):
        return True
    return arf_invariant(xi0) == arf_invariant(xi1)


def quasi_algebraic_framing_exists(xi: Framing) -> bool:
    if xi.surface.genus != 1:
        return True
    return a_invariant(xi) == _gcd(local_degrees(xi))


def orbit_search(start: Framing, bound: int = 4, limit: int = 20000) -> set[tuple[int, ...]]:
    """Twist vectors reachable from ``start`` by elementary moves, staying
    within ``|t| <= bound`` (a finite piece of the orbit)."""
    S = start.surface
    moves = [m for _, m in elementary_moves(S)]
    seen = {start.twists}
    todo = [start]
    while todo and len(seen) < limit:
        xi = todo.pop()
        for m in moves:
            nxt = pushforward_framing(m, xi)
            if nxt.twists in seen or max(map(abs, nxt.twists)) > bound:
                continue
            seen.add(nxt.twists)
            todo.append(nxt)
    return seen
