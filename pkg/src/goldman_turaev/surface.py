"""One-vertex ribbon graph model of a punctured surface.

The surface of genus ``g`` with ``n + 1`` punctures is a disk with
``2g + n`` bands attached.  Generators are numbered ``1..2g+n`` in the
order ``x1, y1, ..., xg, yg, z1, ..., zn``; a signed letter also names the
half-edge through which a traversal of that letter leaves the vertex.

Frozen half-edge order (counter-clockwise, as drawn)::

    Zn, zn, ..., Z1, z1, yg, Xg, Yg, xg, ..., y1, X1, Y1, x1

This is the reverse of ``x1 Y1 X1 y1 ... z1 Z1 ... zn Zn``.  With it,
tracing each face with the puncture on the left gives
``x1 y1 X1 Y1 ... z1 ... zn`` for puncture 0 and ``Zj`` for puncture j.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import NonHyperbolic, ParseError, UnknownGenerator
from .words import Word, exponent_sums, least_rotation


@dataclass(frozen=True)
class Surface:
    genus: int
    n: int
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @property
    def punctures(self) -> int:
        return self.n + 1

    @property
    def rank(self) -> int:
        return 2 * self.genus + self.n

    @property
    def num_half_edges(self) -> int:
        return 2 * self.rank

    # -- generator bookkeeping ------------------------------------------------
    def x(self, i: int) -> int:
        return 2 * i - 1

    def y(self, i: int) -> int:
        return 2 * i

    def z(self, j: int) -> int:
        return 2 * self.genus + j

    @cached_property
    def generators(self) -> list[str]:
        names = []
        for i in range(1, self.genus + 1):
            names += [f"x{i}", f"y{i}"]
        names += [f"z{j}" for j in range(1, self.n + 1)]
        return names

    def letter_name(self, letter: int) -> str:
        name = self.generators[abs(letter) - 1]
        return name if letter > 0 else name.upper()

    def format_word(self, word) -> str:
        if not word:
            return "1"
        return " ".join(self.letter_name(a) for a in word)

    def parse_word(self, text: str) -> Word:
        """Parse ``"x1 y1 X1 Y1"``; lower case is a generator, upper case its inverse.

        A bare ``x``/``y``/``z`` means index 1.  ``"1"`` and ``""`` are the empty word.
        """
        out = []
        for tok in text.replace(",", " ").split():
            if tok == "1":
                continue
            m = re.fullmatch(r"([xyzXYZ])(\d*)", tok)
            if not m:
                raise ParseError(f"bad token {tok!r}")
            kind, idx = m.group(1), int(m.group(2) or 1)
            low = kind.lower()
            name = f"{low}{idx}"
            if name not in self.generators:
                raise UnknownGenerator(f"{tok!r} is not a generator of the ({self.genus},{self.n}) surface")
            gen = self.generators.index(name) + 1
            out.append(gen if kind == low else -gen)
        return tuple(out)

    # -- ribbon structure -----------------------------------------------------
    @cached_property
    def half_edge_order(self) -> tuple[int, ...]:
        seq = []
        for i in range(1, self.genus + 1):
            seq += [self.x(i), -self.y(i), -self.x(i), self.y(i)]
        for j in range(1, self.n + 1):
            seq += [self.z(j), -self.z(j)]
        return tuple(reversed(seq))

    @cached_property
    def position(self) -> dict[int, int]:
        """Counter-clockwise slot index of the half-edge used by each signed letter."""
        return {h: k for k, h in enumerate(self.half_edge_order)}

    @cached_property
    def drawing_angles(self) -> dict[int, Fraction]:
        """Angle of each half-edge, in full turns."""
        N = self.num_half_edges
        return {h: Fraction(k, N) for h, k in self.position.items()}

    def next_letter(self, letter: int) -> int:
        """Face successor: enter at the end of ``letter``, leave one slot clockwise."""
        N = self.num_half_edges
        return self.half_edge_order[(self.position[-letter] - 1) % N]

    @cached_property
    def faces(self) -> list[Word]:
        """Ribbon-graph boundary cycles, each as traced (puncture on the left)."""
        seen: set[int] = set()
        faces = []
        for start in self.half_edge_order:
            if start in seen:
                continue
            cyc = []
            a = start
            while a not in seen:
                seen.add(a)
                cyc.append(a)
                a = self.next_letter(a)
            faces.append(tuple(cyc))
        return faces

    @cached_property
    def boundary_words(self) -> list[Word]:
        """gamma_0, ..., gamma_n as traced words (not rotated).

        gamma_0 is the face through the corner between the last and first
        half-edges; gamma_j contains the inverse of z_j.
        """
        order = self.half_edge_order
        first, last = order[0], order[-1]
        by_letter = {}
        for f in self.faces:
            for a in f:
                by_letter[a] = f
        # the corner (last, first) is used by the transition entering at `first`
        # and leaving at `last`, i.e. the letter after -first is `last`.
        g0 = by_letter[-first]
        k = g0.index(-first)
        g0 = g0[k + 1:] + g0[:k + 1]
        assert g0[0] == last
        out = [self._rotate_to_relator(g0)]
        for j in range(1, self.n + 1):
            out.append(by_letter[-self.z(j)])
        return out

    def _rotate_to_relator(self, face: Word) -> Word:
        start = self.x(1) if self.genus else self.z(1)
        k = face.index(start)
        return face[k:] + face[:k]

    def relator(self) -> Word:
        w = []
        for i in range(1, self.genus + 1):
            w += [self.x(i), self.y(i), -self.x(i), -self.y(i)]
        w += [self.z(j) for j in range(1, self.n + 1)]
        return tuple(w)

    def homology(self, word) -> tuple[int, ...]:
        return exponent_sums(word, self.rank)

    def to_json(self) -> dict:
        return {
            "v": 1,
            "g": self.genus,
            "n": self.n,
            "generators": self.generators,
            "half_edge_order": [self.letter_name(h) for h in self.half_edge_order],
            "boundary_words": [self.format_word(least_rotation(w)) for w in self.boundary_words],
        }


_SURFACES: dict[tuple[int, int], Surface] = {}


def build_surface(g: int, n: int) -> Surface:
    if g < 0 or n < 0:
        raise NonHyperbolic(f"genus and n must be nonnegative, got ({g},{n})")
    if 2 * g - 1 + n <= 0:
        raise NonHyperbolic(f"(g,n)=({g},{n}) violates 2g-1+n>0")
    key = (g, n)
    if key not in _SURFACES:
        S = Surface(g, n)
        faces = S.faces
        if len(faces) != n + 1:
            raise AssertionError(f"face tracing gave {len(faces)} faces, expected {n + 1}")
        _SURFACES[key] = S
    return _SURFACES[key]


def boundary_words(S: Surface) -> list[Word]:
    return list(S.boundary_words)


def surface_from_json(doc: dict) -> Surface:
    try:
        return build_surface(int(doc["g"]), int(doc["n"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad surface document: {exc}") from None
