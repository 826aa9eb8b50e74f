"""Goldman bracket and framed Turaev cobracket on linear combinations of loops."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParseError
from .loops import (
    ONE,
    CyclicWord,
    Framing,
    as_cyclic,
    check_same_surface,
    intersections,
    rotation_number,
    self_intersections,
)
from .surface import Surface


def _coef(value) -> Fraction:
    try:
        if isinstance(value, float):
            raise ValueError("floats are not exact")
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient {value!r}: {exc}") from None


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LoopCombo:
    """Finite Q-linear combination of free homotopy classes (including 1)."""

    def __init__(self, surface: Surface, terms: Mapping[CyclicWord, Fraction] | None = None):
        self.surface = surface
        self.terms: dict[CyclicWord, Fraction] = {}
        for w, c in (terms or {}).items():
            self._add(w, c)

    def _add(self, w: CyclicWord, c):
        c = Fraction(c)
        if not c:
            return
        v = self.terms.get(w, 0) + c
        if v:
            self.terms[w] = v
        else:
            self.terms.pop(w, None)

    @classmethod
    def of(cls, S: Surface, *words, coef=1) -> "LoopCombo":
        out = cls(S)
        for w in words:
            out._add(as_cyclic(S, w), coef)
        return out

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: t[0].sort_key()))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LoopCombo):
            return self.surface == other.surface and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: "LoopCombo") -> "LoopCombo":
        check_same_surface(self, other)
        out = LoopCombo(self.surface, self.terms)
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    def __neg__(self):
        return LoopCombo(self.surface, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return LoopCombo(self.surface, {w: Fraction(k) * c for w, c in self.terms.items()})

    def format(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{_fmt(c)}*({w.format(self.surface)})" for w, c in self)

    __str__ = format

    def __repr__(self):
        return f"LoopCombo<{self.format()}>"

    def to_json(self) -> list:
        return [{"coef": _fmt(c), "word": w.format(self.surface)} for w, c in self]

    @classmethod
    def from_json(cls, S: Surface, doc) -> "LoopCombo":
        if isinstance(doc, str):
            return cls.of(S, doc)
        if not isinstance(doc, list):
            raise ParseError("a loop combination is a list of {coef, word} objects")
        out = cls(S)
        for item in doc:
            if not isinstance(item, dict) or "word" not in item:
                raise ParseError(f"bad term {item!r}")
            out._add(CyclicWord.parse(S, str(item["word"])), _coef(item.get("coef", 1)))
        return out


class BiLoopCombo:
    """Element of the tensor square, as a combination of pairs of classes."""

    def __init__(self, surface: Surface, terms=None):
        self.surface = surface
        self.terms: dict[tuple[CyclicWord, CyclicWord], Fraction] = {}
        for k, c in (terms or {}).items():
            self._add(k, c)

    def _add(self, key, c):
        c = Fraction(c)
        if not c:
            return
        v = self.terms.get(key, 0) + c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: (t[0][0].sort_key(), t[0][1].sort_key())))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, BiLoopCombo):
            return self.surface == other.surface and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other):
        check_same_surface(self, other)
        out = BiLoopCombo(self.surface, self.terms)
        for k, c in other.terms.items():
            out._add(k, c)
        return out

    def __neg__(self):
        return BiLoopCombo(self.surface, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return BiLoopCombo(self.surface, {key: Fraction(k) * c for key, c in self.terms.items()})

    def swap(self) -> "BiLoopCombo":
        return BiLoopCombo(self.surface, {(b, a): c for (a, b), c in self.terms.items()})

    def is_antisymmetric(self) -> bool:
        return self + self.swap() == 0

    def without_constant(self) -> "BiLoopCombo":
        return BiLoopCombo(self.surface, {k: c for k, c in self.terms.items() if ONE not in k})

    @staticmethod
    def wedge(S: Surface, a: CyclicWord, b: CyclicWord, coef=1) -> "BiLoopCombo":
        return BiLoopCombo(S, {(a, b): Fraction(coef)}) - BiLoopCombo(S, {(b, a): Fraction(coef)})

    def format(self) -> str:
        if not self.terms:
            return "0"
        S = self.surface
        return " + ".join(f"{_fmt(c)}*({a.format(S)} | {b.format(S)})" for (a, b), c in self)

    __str__ = format

    def __repr__(self):
        return f"BiLoopCombo<{self.format()}>"

    def to_json(self) -> list:
        S = self.surface
        return [{"coef": _fmt(c), "left": a.format(S), "right": b.format(S)} for (a, b), c in self]

    @classmethod
    def from_json(cls, S: Surface, doc) -> "BiLoopCombo":
        if not isinstance(doc, list):
            raise ParseError("a tensor combination is a list of {coef, left, right} objects")
        out = cls(S)
        for item in doc:
            try:
                key = (CyclicWord.parse(S, str(item["left"])), CyclicWord.parse(S, str(item["right"])))
            except (KeyError, TypeError):
                raise ParseError(f"bad term {item!r}") from None
            out._add(key, _coef(item.get("coef", 1)))
        return out


def _as_combo(S: Surface, x) -> LoopCombo:
    if isinstance(x, LoopCombo):
        check_same_surface(S, x)
        return x
    return LoopCombo.of(S, x)


def bracket_of_loops(S: Surface, u: CyclicWord, v: CyclicWord) -> LoopCombo:
    out = LoopCombo(S)
    for dp in intersections(S, u, v):
        out._add(dp.split[0], dp.sign)
    return out


def _map(fn, items, threads: int):
    if threads and threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(it) for it in items]


def goldman_bracket(S: Surface, u, v, threads: int = 1) -> LoopCombo:
    """Bilinear extension of the sum over crossings of sign times the merged loop."""
    u, v = _as_combo(S, u), _as_combo(S, v)
    pairs = [(a, ca, b, cb) for a, ca in u for b, cb in v]

    def one(t):
        a, ca, b, cb = t
        return ca * cb * bracket_of_loops(S, a, b)

    out = LoopCombo(S)
    for part in _map(one, pairs, threads):
        out = out + part
    return out


def cobracket_of_loop(xi: Framing, w: CyclicWord) -> BiLoopCombo:
    S = xi.surface
    out = BiLoopCombo(S)
    if not w:
        return out
    for dp in self_intersections(S, w):
        a1, a2 = dp.split
        out._add((a1, a2), dp.sign)
        out._add((a2, a1), -dp.sign)
    r = rotation_number(xi, w)
    out._add((w, ONE), -r)
    out._add((ONE, w), r)
    return out


def turaev_cobracket(xi: Framing, x, threads: int = 1) -> BiLoopCombo:
    """Framed cobracket: double point terms minus rot(w) (w|1 - 1|w)."""
    S = xi.surface
    x = _as_combo(S, x)
    items = list(x)

    def one(t):
        w, c = t
        return c * cobracket_of_loop(xi, w)

    out = BiLoopCombo(S)
    for part in _map(one, items, threads):
        out = out + part
    return out


def unframed_cobracket(S: Surface, x, threads: int = 1) -> BiLoopCombo:
    """Cobracket modulo the constant loop; it does not depend on a framing."""
    return turaev_cobracket(Framing(S), x, threads).without_constant()


# -- kinked representatives -------------------------------------------------

# A small planar curl spliced into a straight strand: in along the x-axis,
# up to (2,2), across to (0,2), down through (1,1) to (2,0) and out.
_KINK = [(0, 0), (2, 2), (0, 2), (2, 0), (4, 0)]
_COMPASS = {(1, 0): 0, (1, 1): 1, (0, 1): 2, (-1, 1): 3, (-1, 0): 4, (-1, -1): 5, (0, -1): 6, (1, -1): 7}


def _unit(dx, dy):
    s = max(abs(dx), abs(dy))
    return (dx // s, dy // s)


def kink_data(sign: int) -> tuple[Fraction, int]:
    """Turning (in turns) and crossing sign of the curl gadget; ``sign=-1`` mirrors it."""
    pts = [(x, sign * y) for x, y in _KINK]
    dirs = [_COMPASS[_unit(b[0] - a[0], b[1] - a[1])] for a, b in zip(pts, pts[1:])]
    # the strand enters and leaves along the positive x-axis
    dirs = [0] + dirs + [0]
    turning = Fraction(0)
    for a, b in zip(dirs, dirs[1:]):
        d = (b - a) % 8
        turning += Fraction(d if d <= 4 else d - 8, 8)
    (ax, ay), (bx, by) = pts[0], pts[1]
    (cx, cy), (dx, dy) = pts[2], pts[3]
    cross = (bx - ax) * (dy - cy) - (by - ay) * (dx - cx)
    return turning, (1 if cross > 0 else -1)


def cobracket_with_kinks(xi: Framing, w, kinks: Iterable[int]) -> BiLoopCombo:
    """Evaluate the cobracket formula on the representative of ``w`` carrying
    extra curls; each curl adds a trivial-loop double point and its turning."""
    S = xi.surface
    w = as_cyclic(S, w)
    out = BiLoopCombo(S)
    rot = Fraction(rotation_number(xi, w))
    for dp in self_intersections(S, w):
        a1, a2 = dp.split
        out._add((a1, a2), dp.sign)
        out._add((a2, a1), -dp.sign)
    for k in kinks:
        turning, eps = kink_data(k)
        rot += turning
        out._add((ONE, w), eps)
        out._add((w, ONE), -eps)
    out._add((w, ONE), -rot)
    out._add((ONE, w), rot)
    return out
