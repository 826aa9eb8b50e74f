"""Cyclic words, framings, rotation numbers and double points.

Curves are drawn in the standard picture of the ribbon graph: the vertex
is the unit disk with half-edge ``k`` at angle ``k/N`` turns, and each band
runs radially out, around a circle of radius 2 (counter-clockwise from the
generator end to the inverse end) and radially back in.  A cyclic word is
represented by the curve that crosses the disk along a straight chord
between consecutive bands.  The blackboard framing of this planar picture,
corrected by integer edge twists, is the framing model.

Double points of the taut representative are read off from maximal
parallel runs of two strands: the two ends of a run decide on which side
one strand sits relative to the other, and a run whose ends disagree forces
exactly one crossing.  Chords that share no half-edge cross iff their end
points interleave.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ConstantClass, ParseError, SurfaceMismatch, UnknownGenerator
from .surface import Surface
from .words import Word, canonical_cyclic, cyclic_reduce, primitive_root


@dataclass(frozen=True, order=False)
class CyclicWord:
    """A free homotopy class: cyclically reduced, stored as its least rotation."""

    letters: Word = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", canonical_cyclic(self.letters))

    @classmethod
    def parse(cls, S: Surface, text: str) -> "CyclicWord":
        return cls(S.parse_word(text))

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def inverse(self) -> "CyclicWord":
        return CyclicWord(tuple(-a for a in reversed(self.letters)))

    def sort_key(self):
        from .words import letter_key
        return (len(self.letters), [letter_key(a) for a in self.letters])

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def format(self, S: Surface) -> str:
        return S.format_word(self.letters)

    def __repr__(self):
        return f"CyclicWord({self.letters})"


ONE = CyclicWord(())


def cyclic_reduce_word(S: Surface, letters: Iterable[int]) -> CyclicWord:
    letters = tuple(letters)
    for a in letters:
        if not isinstance(a, int) or a == 0 or abs(a) > S.rank:
            raise UnknownGenerator(f"letter {a!r} not in the alphabet of the ({S.genus},{S.n}) surface")
    return CyclicWord(letters)


def as_cyclic(S: Surface, w) -> CyclicWord:
    if isinstance(w, CyclicWord):
        return w
    if isinstance(w, str):
        return CyclicWord.parse(S, w)
    return cyclic_reduce_word(S, w)


def homology_class(S: Surface, w) -> tuple[int, ...]:
    w = as_cyclic(S, w)
    return S.homology(w.letters)


# -- framings and rotation numbers ----------------------------------------


def _normalize_turn(a: Fraction) -> Fraction:
    """Reduce an angle (in turns) to (-1/2, 1/2]; an exact U-turn is +1/2."""
    a = a - (a.numerator // a.denominator)
    if a > Fraction(1, 2):
        a -= 1
    return a


def _chord_direction(a: Fraction, b: Fraction) -> Fraction:
    """Direction (turns) of the chord from angle ``a`` to angle ``b`` on a circle."""
    delta = (b - a) % 1
    return (a + delta / 2 + Fraction(1, 4)) % 1


def polyline_directions(S: Surface, letters: Word) -> list[Fraction]:
    """Directions of the consecutive segments of the drawn closed polyline."""
    ang = S.drawing_angles
    N = S.num_half_edges
    step = Fraction(1, N)
    dirs: list[Fraction] = []
    n = len(letters)
    for i, a in enumerate(letters):
        start, end = ang[a], ang[-a]
        dirs.append(start)  # radially out
        # around the outer circle: ccw for generators, cw for inverses
        sgn = 1 if a > 0 else -1
        steps = int(((end - start) * sgn % 1) / step)
        cur = start
        for _ in range(steps):
            nxt = (cur + sgn * step) % 1
            dirs.append(_chord_direction(cur, nxt))
            cur = nxt
        dirs.append((end + Fraction(1, 2)) % 1)  # radially in
        nxt_out = ang[letters[(i + 1) % n]]
        dirs.append(_chord_direction(end, nxt_out))
    return dirs


def whitney_turning(S: Surface, letters: Word) -> Fraction:
    """Sum of normalized exterior angles of the drawn polyline, in turns."""
    dirs = polyline_directions(S, letters)
    total = sum((_normalize_turn(dirs[(k + 1) % len(dirs)] - dirs[k]) for k in range(len(dirs))), Fraction(0))
    return total


def blackboard_rotation(S: Surface, letters: Word) -> int:
    """Closed-form turning number of the drawn representative (blackboard framing)."""
    ang = S.drawing_angles
    half = Fraction(1, 2)
    total = Fraction(0)
    n = len(letters)
    for i, a in enumerate(letters):
        band = half + (ang[-abs(a)] - ang[abs(a)]) % 1
        total += band if a > 0 else -band
        b = letters[(i + 1) % n]
        total += (ang[b] - ang[-a]) % 1 - half
    if total.denominator != 1:
        raise AssertionError(f"non-integral turning {total} for {letters}")
    return int(total)


@dataclass(frozen=True)
class Framing:
    """Blackboard framing of the standard drawing twisted by ``t`` on each edge."""

    surface: Surface
    twists: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.twists) + (0,) * (self.surface.rank - len(self.twists))
        if len(t) != self.surface.rank:
            raise ValueError("too many twists for surface")
        object.__setattr__(self, "twists", tuple(int(v) for v in t))

    @classmethod
    def from_mapping(cls, S: Surface, t: Mapping[str, int]) -> "Framing":
        vals = [0] * S.rank
        for name, v in t.items():
            if name not in S.generators:
                w = S.parse_word(name)
                if len(w) != 1 or w[0] < 0:
                    raise UnknownGenerator(f"{name!r} is not an edge")
                name = S.generators[w[0] - 1]
            vals[S.generators.index(name)] = int(v)
        return cls(S, tuple(vals))

    @classmethod
    def from_json(cls, S: Surface, doc) -> "Framing":
        if not isinstance(doc, dict):
            raise ParseError("framing must be a JSON object")
        return cls.from_mapping(S, doc.get("t", {}))

    def to_json(self) -> dict:
        return {"t": {name: v for name, v in zip(self.surface.generators, self.twists)}}

    def rot(self, w) -> int:
        return rotation_number(self, w)

    def with_twists(self, twists) -> "Framing":
        return Framing(self.surface, tuple(twists))


def rotation_number(xi: Framing, w) -> int:
    S = xi.surface
    w = as_cyclic(S, w)
    if not w:
        raise ConstantClass("the constant class has no immersed representative")
    r = blackboard_rotation(S, w.letters)
    for a in w.letters:
        r += xi.twists[abs(a) - 1] if a > 0 else -xi.twists[abs(a) - 1]
    return r


def local_degrees(xi: Framing) -> tuple[int, ...]:
    S = xi.surface
    d = tuple(1 - rotation_number(xi, g) for g in S.boundary_words)
    if sum(d) != 2 - 2 * S.genus:
        raise AssertionError(f"Poincare-Hopf violated: {d}")
    return d


# -- double points --------------------------------------------------------


@dataclass(frozen=True)
class DoublePoint:
    """A transverse double point.

    ``positions`` are passage indices (passage ``p`` runs from letter ``p`` to
    letter ``p+1``).  For a self intersection ``positions[0] < positions[1]``,
    ``sign`` is the orientation of (first tangent, second tangent) and
    ``split`` holds the loop read from the first passage to the second and
    the complementary loop.  For a crossing of ``u`` with ``v`` the positions
    are ``(in u, in v)``, ``sign`` orients (tangent of u, tangent of v) and
    ``split`` holds the single merged class.
    """

    positions: tuple[int, int]
    sign: int
    split: tuple[CyclicWord, ...] = field(default=())


def _crossings(S: Surface, A: Word, B: Word, same: bool) -> list[tuple[int, int, int]]:
    """(passage in A, passage in B, orientation of (A, B)) for every crossing."""
    pos = S.position
    N = S.num_half_edges
    m, n = len(A), len(B)
    out = []

    def rho(c: int, h: int) -> int:
        return (pos[h] - pos[c]) % N

    # transverse chords sharing no half-edge
    for p in range(m):
        eA, xA = -A[p], A[(p + 1) % m]
        for q in range(n):
            if same and q <= p:
                continue
            eB, xB = -B[q], B[(q + 1) % n]
            if len({eA, xA, eB, xB}) < 4:
                continue
            span = rho(eA, xA)
            inB, inX = 0 < rho(eA, eB) < span, 0 < rho(eA, xB) < span
            if inB != inX:
                out.append((p, q, 1 if inB else -1))

    # parallel runs in the same direction
    for i in range(m):
        for j in range(n):
            if same and i == j:
                continue
            if A[i] != B[j] or A[i - 1] == B[(j - 1) % n]:
                continue
            if same and i > j:
                continue
            k = 0
            while A[(i + k) % m] == B[(j + k) % n]:
                k += 1
                if k > m + n:
                    raise AssertionError("unbounded parallel run")
            c = A[i]
            left_back = rho(c, -B[(j - 1) % n]) < rho(c, -A[i - 1])
            c2 = -A[(i + k - 1) % m]
            left_fwd = rho(c2, B[(j + k) % n]) > rho(c2, A[(i + k) % m])
            if left_back != left_fwd:
                out.append(((i - 1) % m, (j - 1) % n, 1 if left_fwd else -1))

    # parallel runs in opposite directions
    for i in range(m):
        for j in range(n):
            if A[i] != -B[j] or A[i - 1] == -B[(j + 1) % n]:
                continue
            k = 0
            while A[(i + k) % m] == -B[(j - k) % n]:
                k += 1
                if k > m + n:
                    raise AssertionError("unbounded parallel run")
            if same and not i < (j - k + 1) % n:
                continue
            c = A[i]
            left_back = rho(c, B[(j + 1) % n]) < rho(c, -A[i - 1])
            c2 = -A[(i + k - 1) % m]
            left_fwd = rho(c2, -B[(j - k) % n]) > rho(c2, A[(i + k) % m])
            if left_back != left_fwd:
                out.append(((i - 1) % m, j, 1 if left_back else -1))

    if same:
        # k parallel copies of a proper power: the copy that wraps around
        # crosses the other k-1 copies once each
        root, k = primitive_root(A)
        L = len(root)
        for c in range(1, k):
            out.append((m - 1, c * L - 1, 1))
    return out


def _arc(w: Word, start: int, stop: int) -> Word:
    """Letters w[start+1], ..., w[stop] cyclically."""
    n = len(w)
    return tuple(w[(start + 1 + t) % n] for t in range((stop - start) % n))


def self_intersections(S: Surface, w) -> list[DoublePoint]:
    w = as_cyclic(S, w)
    W = w.letters
    if not W:
        return []
    pts = []
    for pA, pB, eps in _crossings(S, W, W, True):
        first, second = (pA, pB) if pA < pB else (pB, pA)
        sign = eps if pA < pB else -eps
        a1 = CyclicWord(_arc(W, first, second))
        a2 = CyclicWord(_arc(W, second, first + len(W)))
        pts.append(DoublePoint((first, second), sign, (a1, a2)))
    pts.sort(key=lambda d: d.positions)
    return pts


def intersections(S: Surface, u, v) -> list[DoublePoint]:
    u, v = as_cyclic(S, u), as_cyclic(S, v)
    U, V = u.letters, v.letters
    if not U or not V:
        return []
    pts = []
    for p, q, eps in _crossings(S, U, V, False):
        merged = U[p + 1:] + U[:p + 1] + V[q + 1:] + V[:q + 1]
        pts.append(DoublePoint((p, q), eps, (CyclicWord(merged),)))
    pts.sort(key=lambda d: d.positions)
    return pts


def algebraic_intersection(S: Surface, u, v) -> int:
    return sum(d.sign for d in intersections(S, u, v))


def check_same_surface(*framings_or_surfaces):
    surfaces = {getattr(x, "surface", x) for x in framings_or_surfaces}
    if len(surfaces) > 1:
        raise SurfaceMismatch("operands live on different surfaces")
