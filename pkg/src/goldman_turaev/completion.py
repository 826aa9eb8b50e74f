"""Truncated weight-graded expansions of the free group.

A series is stored by weight: ``comps[k]`` maps monomials of weight ``k``
to rational coefficients.  A monomial is a tuple of positive generator
indices; the letter of a handle generator has weight 1 and the letter of a
puncture loop weight 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .bialgebra import BiLoopCombo, LoopCombo, goldman_bracket, turaev_cobracket
from .errors import NotDefined, ParseError, SurfaceMismatch
from .loops import Framing
from .surface import Surface
from .words import Word, least_rotation

INF = math.inf

Mono = tuple


def letter_weights(S: Surface) -> tuple[int, ...]:
    return tuple(1 if g <= 2 * S.genus else 2 for g in range(1, S.rank + 1))


def _mono_weight(weights, mono) -> int:
    return sum(weights[a - 1] for a in mono)


class Series:
    """Element of the completed free algebra truncated above weight ``N``.

    Coefficients are kept as integer numerators ``num[k][mono]`` over one
    shared denominator ``den``; ``comps`` gives the rational view.
    """

    def __init__(self, N: int, weights: tuple[int, ...], comps=None):
        self.N = N
        self.weights = tuple(weights)
        self.den = 1
        self.num: list[dict[Mono, int]] = [dict() for _ in range(N + 1)]
        if comps:
            comps = list(comps)[:N + 1]
            den = 1
            for part in comps:
                for c in part.values():
                    c = Fraction(c)
                    den = den * c.denominator // math.gcd(den, c.denominator)
            self.den = den
            for k, part in enumerate(comps):
                for m, c in part.items():
                    c = Fraction(c)
                    v = c.numerator * (den // c.denominator)
                    if v:
                        self.num[k][m] = v
            self._normalize()

    @classmethod
    def _raw(cls, N, weights, num, den) -> "Series":
        out = cls.__new__(cls)
        out.N, out.weights = N, weights
        out.num = [{m: c for m, c in part.items() if c} for part in num]
        out.den = den
        out._normalize()
        return out

    def _normalize(self):
        g = self.den
        for part in self.num:
            for c in part.values():
                g = math.gcd(g, c)
                if g == 1:
                    return
        if g > 1:
            self.den //= g
            for part in self.num:
                for m in part:
                    part[m] //= g

    @property
    def comps(self) -> list[dict[Mono, Fraction]]:
        return [{m: Fraction(c, self.den) for m, c in part.items()} for part in self.num]

    # -- constructors ---------------------------------------------------------
    @classmethod
    def scalar(cls, N, weights, c=1) -> "Series":
        return cls(N, weights, [{(): Fraction(c)}] if c else None)

    @classmethod
    def from_terms(cls, N, weights, terms: Mapping[Mono, Fraction]) -> "Series":
        comps: list[dict] = [dict() for _ in range(N + 1)]
        for m, c in terms.items():
            k = _mono_weight(weights, m)
            if k <= N and c:
                comps[k][m] = comps[k].get(m, 0) + Fraction(c)
        return cls(N, weights, comps)

    @classmethod
    def letter(cls, N, weights, g: int) -> "Series":
        return cls.from_terms(N, weights, {(g,): 1})

    def _like_raw(self, num, den, N=None) -> "Series":
        return type(self)._raw(self.N if N is None else N, self.weights, num, den)

    def _check(self, other: "Series"):
        if self.weights != other.weights:
            raise SurfaceMismatch("series over different alphabets")

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        N = min(self.N, other.N)
        den = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        num = []
        for k in range(N + 1):
            part = {m: c * fa for m, c in self.num[k].items()}
            for m, c in other.num[k].items():
                part[m] = part.get(m, 0) + c * fb
            num.append(part)
        return self._like_raw(num, den, N)

    def __neg__(self):
        return self._like_raw([{m: -c for m, c in part.items()} for part in self.num], self.den)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k) -> "Series":
        k = Fraction(k)
        return self._like_raw(
            [{m: c * k.numerator for m, c in part.items()} for part in self.num], self.den * k.denominator
        )

    def __mul__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return self.__rmul__(other)
        self._check(other)
        N = min(self.N, other.N)
        acc: list[dict] = [dict() for _ in range(N + 1)]
        for i in range(N + 1):
            A = self.num[i]
            if not A:
                continue
            for j in range(N + 1 - i):
                B = other.num[j]
                if not B:
                    continue
                C = acc[i + j]
                for m1, c1 in A.items():
                    for m2, c2 in B.items():
                        m = m1 + m2
                        C[m] = C.get(m, 0) + c1 * c2
        return Series._raw(N, self.weights, acc, self.den * other.den)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.N == other.N and self.weights == other.weights and self.comps == other.comps

    def constant(self) -> Fraction:
        return Fraction(self.num[0].get((), 0), self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    def truncate(self, N: int) -> "Series":
        N = min(N, self.N)
        return self._like_raw([dict(p) for p in self.num[:N + 1]], self.den, N)

    def component(self, k: int) -> "Series":
        num = [dict() for _ in range(self.N + 1)]
        if 0 <= k <= self.N:
            num[k] = dict(self.num[k])
        return self._like_raw(num, self.den)

    def _power_series(self, coeffs) -> "Series":
        """sum_k coeffs(k) * self^k for a series without constant term."""
        if self.constant():
            raise ValueError("argument must have zero constant term")
        out = Series.scalar(self.N, self.weights, coeffs(0))
        p = Series.scalar(self.N, self.weights, 1)
        for k in range(1, self.N + 1):
            p = p * self
            if p.is_zero():
                break
            c = coeffs(k)
            if c:
                out = out + c * p
        return out

    def exp(self) -> "Series":
        return self._power_series(lambda k: Fraction(1, math.factorial(k)))

    def log(self) -> "Series":
        """log of a series with constant term 1."""
        if self.constant() != 1:
            raise ValueError("log needs constant term 1")
        s = self - Series.scalar(self.N, self.weights, 1)
        return s._power_series(lambda k: Fraction((-1) ** (k + 1), k) if k else 0)

    def inverse(self) -> "Series":
        """Multiplicative inverse of a series with constant term 1."""
        if self.constant() != 1:
            raise ValueError("inverse needs constant term 1")
        s = self - Series.scalar(self.N, self.weights, 1)
        return s._power_series(lambda k: (-1) ** k)

    def level(self):
        return weight_level(self)

    def terms(self):
        for k, part in enumerate(self.num):
            for m in sorted(part):
                yield k, m, Fraction(part[m], self.den)

    def to_json(self, S: Surface | None = None) -> dict:
        def name(g):
            return S.generators[g - 1].upper() if S else f"L{g}"

        comps = {}
        for k, part in enumerate(self.num):
            if part:
                comps[str(k)] = [
                    {"coef": _fmt(Fraction(c, self.den)), "mono": [name(g) for g in m]}
                    for m, c in sorted(part.items())
                ]
        return {"N": self.N, "components": comps}

    @classmethod
    def from_json(cls, S: Surface, doc) -> "Series":
        try:
            N = int(doc["N"])
            terms: dict = {}
            for k, items in doc.get("components", {}).items():
                for it in items:
                    mono = tuple(S.parse_word(" ".join(t.lower() for t in it["mono"])))
                    if any(a < 0 for a in mono):
                        raise ParseError("monomials use generator letters only")
                    if _mono_weight(letter_weights(S), mono) != int(k):
                        raise ParseError(f"monomial {it['mono']} does not have weight {k}")
                    terms[mono] = terms.get(mono, 0) + Fraction(it["coef"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad series document: {exc}") from None
        return cls.from_terms(N, letter_weights(S), terms)

    def __repr__(self):
        parts = [f"{_fmt(c)}*{'.'.join(map(str, m)) or '1'}" for _, m, c in self.terms()]
        return f"{type(self).__name__}(N={self.N}: {' + '.join(parts) or '0'})"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def commutator(a: Series, b: Series) -> Series:
    return a * b - b * a


class CyclicSeries(Series):
    """Series modulo cyclic permutation of monomials (least rotation kept)."""

    @classmethod
    def project(cls, s: Series) -> "CyclicSeries":
        num = []
        for part in s.num:
            tgt: dict = {}
            for m, c in part.items():
                r = least_rotation(m)
                tgt[r] = tgt.get(r, 0) + c
            num.append(tgt)
        return cls._raw(s.N, s.weights, num, s.den)

    def __mul__(self, other):
        if isinstance(other, Series):
            raise TypeError("cyclic series do not multiply")
        return self.__rmul__(other)


def weight_level(s: Series):
    """Smallest weight with a nonzero component; ``inf`` for the zero series."""
    for k, part in enumerate(s.num):
        if part:
            return k
    return INF


@dataclass
class Expansion:
    surface: Surface
    N: int
    images: dict[int, Series]

    def __post_init__(self):
        self._inverses: dict[int, Series] = {}
        for g in range(1, self.surface.rank + 1):
            img = self.images.get(g)
            if img is None or img.constant() != 1:
                raise ParseError(f"image of generator {g} must have constant term 1")
        self._cache: dict[Word, Series] = {}
        self._loop_cache: dict[Word, CyclicSeries] = {}

    @property
    def weights(self):
        return letter_weights(self.surface)

    def image(self, letter: int) -> Series:
        if letter > 0:
            return self.images[letter]
        if -letter not in self._inverses:
            self._inverses[-letter] = self.images[-letter].inverse()
        return self._inverses[-letter]

    def is_group_like(self) -> bool:
        """Images are exponentials of series without constant term, with the
        expected leading letter: X + (weight >= 2) and Z + (weight >= 3)."""
        w = self.weights
        for g, img in self.images.items():
            L = img.log()
            if L.num[0]:
                return False
            lead = L.component(w[g - 1])
            expect = Series.letter(self.N, w, g).component(w[g - 1])
            if lead != expect or (w[g - 1] == 2 and L.num[1]):
                return False
        return True

    def to_json(self) -> dict:
        S = self.surface
        return {"N": self.N, "images": {S.generators[g - 1]: s.to_json(S) for g, s in sorted(self.images.items())}}


def exp_expansion(S: Surface, N: int) -> Expansion:
    if N < 2:
        raise ValueError("truncation must be at least 2")
    w = letter_weights(S)
    return Expansion(S, N, {g: Series.letter(N, w, g).exp() for g in range(1, S.rank + 1)})


def expand_word(theta: Expansion, word) -> Series:
    S = theta.surface
    if isinstance(word, str):
        word = S.parse_word(word)
    word = tuple(word)
    for a in word:
        if a == 0 or abs(a) > S.rank:
            from .errors import UnknownGenerator
            raise UnknownGenerator(f"letter {a!r} not on surface")
    return _expand_cached(theta, word)


def _expand_cached(theta: Expansion, word: Word) -> Series:
    got = theta._cache.get(word)
    if got is not None:
        return got
    if not word:
        out = Series.scalar(theta.N, theta.weights, 1)
    else:
        # prefix sharing keeps sweeps over many related words cheap
        out = _expand_cached(theta, word[:-1]) * theta.image(word[-1])
    if len(theta._cache) < 200_000:
        theta._cache[word] = out
    return out


def _expand_class(theta: Expansion, letters: Word) -> "CyclicSeries":
    got = theta._loop_cache.get(letters)
    if got is None:
        got = CyclicSeries.project(_expand_cached(theta, letters))
        if len(theta._loop_cache) < 200_000:
            theta._loop_cache[letters] = got
    return got


def expand_loop(theta: Expansion, a) -> CyclicSeries:
    S = theta.surface
    if not isinstance(a, LoopCombo):
        a = LoopCombo.of(S, a)
    if a.surface != S:
        raise SurfaceMismatch("loop combination and expansion on different surfaces")
    out = CyclicSeries(theta.N, theta.weights)
    for w, c in a:
        out = out + c * _expand_class(theta, w.letters)
    return out


def boundary_target(S: Surface, N: int) -> Series:
    """sum [X_i, Y_i] + sum Z_j."""
    w = letter_weights(S)
    out = Series(N, w)
    for i in range(1, S.genus + 1):
        out = out + commutator(Series.letter(N, w, S.x(i)), Series.letter(N, w, S.y(i)))
    for j in range(1, S.n + 1):
        out = out + Series.letter(N, w, S.z(j))
    return out


@dataclass
class BoundaryReport:
    defect: Series
    weight2_ok: bool

    @property
    def is_zero(self) -> bool:
        return self.weight2_ok and self.defect.is_zero()


def boundary_report(theta: Expansion) -> BoundaryReport:
    S = theta.surface
    L = expand_word(theta, S.boundary_words[0]).log()
    target = boundary_target(S, theta.N)
    ok = L.component(2) == target.component(2) and not L.num[1] and not L.num[0]
    # when the weight-2 part is off, it stays in the defect and is flagged
    return BoundaryReport(L - target, ok)


def boundary_defect(theta: Expansion) -> Series:
    """log of the expanded boundary word minus sum [X_i, Y_i] + sum Z_j."""
    return boundary_report(theta).defect


def boundary_fixed_expansion(S: Surface, N: int) -> Expansion:
    """Exponential expansion with the last puncture image corrected so that
    the boundary word expands to exp(sum [X_i, Y_i] + sum Z_j) exactly."""
    if S.n < 1:
        raise NotDefined("the boundary correction uses the last puncture loop; needs n >= 1")
    theta = exp_expansion(S, N)
    rest = S.relator()[:-1]
    fixed = expand_word(theta, rest).inverse() * boundary_target(S, N).exp()
    images = dict(theta.images)
    images[S.z(S.n)] = fixed
    return Expansion(S, N, images)


# -- filtration report ------------------------------------------------------------


def augmentation(a: LoopCombo) -> Fraction:
    return sum((c for _, c in a), Fraction(0))


def _reduced(a: LoopCombo) -> LoopCombo:
    return a - LoopCombo.of(a.surface, (), coef=augmentation(a))


def _tensor_components(theta: Expansion, t: BiLoopCombo, weights: Iterable[int]):
    """Yield (total weight, number of nonzero monomials) of the expanded tensor."""
    exp = {}
    for (u, v), _ in t:
        for w in (u, v):
            if w not in exp:
                exp[w] = _expand_class(theta, w.letters)
    den = 1
    for (u, v), c in t:
        d = c.denominator * exp[u].den * exp[v].den
        den = den * d // math.gcd(den, d)
    scaled = [(exp[u], exp[v], c.numerator * (den // (c.denominator * exp[u].den * exp[v].den))) for (u, v), c in t]
    for k in weights:
        acc: dict = {}
        for eu, ev, c in scaled:
            for i in range(k + 1):
                A, B = eu.num[i], ev.num[k - i]
                if not A or not B:
                    continue
                for m1, c1 in A.items():
                    f = c * c1
                    for m2, c2 in B.items():
                        key = (m1, m2)
                        acc[key] = acc.get(key, 0) + f * c2
        yield k, sum(1 for v in acc.values() if v)


def tensor_level(theta: Expansion, t: BiLoopCombo):
    """Lowest total weight at which the expansion of ``t`` is nonzero
    (``inf`` when it vanishes up to the truncation)."""
    for k, n in _tensor_components(theta, t, range(theta.N + 1)):
        if n:
            return k
    return INF


def _tensor_above(theta: Expansion, t: BiLoopCombo, bound) -> dict[int, int]:
    """Number of nonzero tensor monomials in each total weight above ``bound``."""
    if bound == INF:
        return {}
    ks = range(max(0, int(bound) + 1), theta.N + 1)
    return {k: n for k, n in _tensor_components(theta, t, ks) if n}


def _capped(v, N):
    return v if v <= N else INF


@dataclass
class FiltrationReport:
    N: int
    p: float
    q: float
    bracket_level: float
    bracket_bound: float
    cobracket_level: float
    cobracket_bound: float
    bracket_defects: dict
    cobracket_defects: dict
    boundary_ok: bool

    def _holds(self, level, bound) -> bool:
        # beyond the truncation nothing can be seen, so such bounds are vacuous
        if bound > self.N:
            return True
        return level >= bound

    @property
    def bracket_pass(self) -> bool:
        return self._holds(self.bracket_level, self.bracket_bound)

    @property
    def cobracket_pass(self) -> bool:
        return self._holds(self.cobracket_level, self.cobracket_bound)

    def to_json(self) -> dict:
        def num(v):
            return None if v == INF else int(v)

        return {
            "N": self.N,
            "p": num(self.p),
            "q": num(self.q),
            "bracket": {"level": num(self.bracket_level), "bound": num(self.bracket_bound), "pass": self.bracket_pass},
            "cobracket": {
                "level": num(self.cobracket_level),
                "bound": num(self.cobracket_bound),
                "pass": self.cobracket_pass,
            },
            "defects": {
                "bracket": {str(k): v for k, v in sorted(self.bracket_defects.items())},
                "cobracket": {str(k): v for k, v in sorted(self.cobracket_defects.items())},
            },
            "boundary_ok": self.boundary_ok,
        }


def filtration_report(theta: Expansion, xi: Framing, a, b) -> FiltrationReport:
    S = theta.surface
    if xi.surface != S:
        raise SurfaceMismatch("framing and expansion on different surfaces")
    a = a if isinstance(a, LoopCombo) else LoopCombo.of(S, a)
    b = b if isinstance(b, LoopCombo) else LoopCombo.of(S, b)
    N = theta.N
    p = weight_level(expand_loop(theta, _reduced(a)))
    q = weight_level(expand_loop(theta, _reduced(b)))
    br = _reduced(goldman_bracket(S, a, b))
    br_exp = expand_loop(theta, br)
    br_level = weight_level(br_exp)
    br_bound = p + q - 2
    delta = turaev_cobracket(xi, a)
    cb_level = tensor_level(theta, delta)
    cb_bound = p - 2
    br_def = {}
    if br_bound != INF:
        for k in range(max(0, int(br_bound) + 1), N + 1):
            if br_exp.num[k]:
                br_def[k] = len(br_exp.num[k])
    return FiltrationReport(
        N, p, q, br_level, br_bound, cb_level, cb_bound, br_def,
        _tensor_above(theta, delta, cb_bound), boundary_report(theta).is_zero,
    )
