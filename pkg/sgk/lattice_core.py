"""
Type-A root and weight lattice arithmetic.

Weights are sum-zero rational vectors in epsilon coordinates, so the pairing
with the fundamental coweight lambda_j is the partial sum of the first j
coordinates. Permutations act by moving the coordinate at position k to
position w(k). A reduced word is read as a composition of functions, the
rightmost simple reflection applied first.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Set, Tuple, Union

from .errors import DatumInvariantError, IndexRangeError, RankMismatchError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class WeightVector:
    n: int
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.n:
            raise RankMismatchError(f"weight of rank {self.n} has {len(self.coords)} coordinates")
        if sum(self.coords) != 0:
            raise DatumInvariantError(f"weight coordinates must sum to zero: {self}")

    @classmethod
    def of(cls, coords: Iterable[Scalar]) -> "WeightVector":
        values = tuple(Fraction(c) for c in coords)
        return cls(len(values), values)

    @classmethod
    def zero(cls, n: int) -> "WeightVector":
        return cls(n, (Fraction(0),) * n)

    def _check(self, other: "WeightVector"):
        if other.n != self.n:
            raise RankMismatchError(f"rank {self.n} weight combined with rank {other.n} weight")

    def __add__(self, other: "WeightVector") -> "WeightVector":
        self._check(other)
        return WeightVector(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        self._check(other)
        return WeightVector(self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "WeightVector":
        return WeightVector(self.n, tuple(-a for a in self.coords))

    def __rmul__(self, k: Scalar) -> "WeightVector":
        return WeightVector(self.n, tuple(Fraction(k) * a for a in self.coords))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Permutation:
    """One-line notation: images[k-1] = w(k)"""
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise DatumInvariantError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, image in enumerate(self.images, start=1):
            inv[image - 1] = k
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other"""
        if other.n != self.n:
            raise RankMismatchError(f"cannot compose permutations of rank {self.n} and {other.n}")
        return Permutation(tuple(self(other(k)) for k in range(1, self.n + 1)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def length(self) -> int:
        return permutation_length(self)


@dataclass(frozen=True)
class ReducedWord:
    n: int
    letters: Tuple[int, ...]

    def __post_init__(self):
        for a in self.letters:
            if not 1 <= a <= self.n - 1:
                raise IndexRangeError(f"simple reflection s_{a} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.letters)


def _check_index(i: int, n: int, what: str):
    if not 1 <= i <= n - 1:
        raise IndexRangeError(f"{what} index {i} out of range 1..{n - 1}")


def root(a: int, b: int, n: int) -> WeightVector:
    """epsilon_a - epsilon_b"""
    if not (1 <= a <= n and 1 <= b <= n) or a == b:
        raise IndexRangeError(f"epsilon_{a} - epsilon_{b} is not a root for n={n}")
    coords = [Fraction(0)] * n
    coords[a - 1] += 1
    coords[b - 1] -= 1
    return WeightVector(n, tuple(coords))


def simple_root(i: int, n: int) -> WeightVector:
    _check_index(i, n, "simple root")
    return root(i, i + 1, n)


def fundamental_weight(r: int, n: int) -> WeightVector:
    _check_index(r, n, "fundamental weight")
    head = Fraction(n - r, n)
    tail = Fraction(-r, n)
    return WeightVector(n, (head,) * r + (tail,) * (n - r))


def coweight_pair(mu: WeightVector, j: int) -> Fraction:
    """<mu, lambda_j> as the partial sum of the first j coordinates"""
    _check_index(j, mu.n, "coweight")
    return sum(mu.coords[:j], Fraction(0))


def alpha_coefficients(mu: WeightVector) -> Tuple[Fraction, ...]:
    """Coefficients of mu in the simple roots (partial sums)"""
    return tuple(coweight_pair(mu, j) for j in range(1, mu.n))


def apply(w: Permutation, mu: WeightVector) -> WeightVector:
    if w.n != mu.n:
        raise RankMismatchError(f"permutation of rank {w.n} applied to weight of rank {mu.n}")
    out = [Fraction(0)] * mu.n
    for k, c in enumerate(mu.coords, start=1):
        out[w(k) - 1] = c
    return WeightVector(mu.n, tuple(out))


def word_to_permutation(word: ReducedWord) -> Permutation:
    images = list(range(1, word.n + 1))
    for a in word.letters:
        images[a - 1], images[a] = images[a], images[a - 1]
    return Permutation(tuple(images))


def permutation_length(w: Permutation) -> int:
    return sum(1 for a, b in combinations(range(w.n), 2) if w.images[a] > w.images[b])


def positive_roots(n: int) -> List[WeightVector]:
    return [root(a, b, n) for a, b in combinations(range(1, n + 1), 2)]


def inversion_roots(w: Permutation) -> Set[WeightVector]:
    """R^+(w^{-1}): positive roots epsilon_a - epsilon_b with w^{-1}(a) > w^{-1}(b)"""
    inv = w.inverse()
    return {root(a, b, w.n) for a, b in combinations(range(1, w.n + 1), 2) if inv(a) > inv(b)}


def schubert_one_line(w: Permutation, r: int) -> Tuple[int, ...]:
    """Image of w in W^{S minus alpha_r}: the sorted tuple (w(1), ..., w(r))"""
    _check_index(r, w.n, "parabolic")
    return tuple(sorted(w.images[:r]))


def minimal_word(r: int, q: int) -> ReducedWord:
    """(s_q ... s_1)(s_2q ... s_2) ... (s_rq ... s_r)"""
    n = r * q + 1
    letters: List[int] = []
    for j in range(1, r + 1):
        letters.extend(range(j * q, j - 1, -1))
    return ReducedWord(n, tuple(letters))


def check_conventions():
    """Startup self-check of the composition convention against known one-line forms"""
    for r, q, expected in ((3, 3, (4, 7, 10)), (2, 3, (4, 7)), (2, 2, (3, 5))):
        w = word_to_permutation(minimal_word(r, q))
        if w.images[:r] != expected:
            raise DatumInvariantError(
                f"word convention check failed for (r,q)=({r},{q}): got {w.images[:r]}, expected {expected}"
            )
    logger.debug("Permutation conventions verified")


__all__ = [
    "WeightVector", "Permutation", "ReducedWord", "root", "simple_root", "fundamental_weight",
    "coweight_pair", "alpha_coefficients", "apply", "word_to_permutation", "permutation_length",
    "positive_roots", "inversion_roots", "schubert_one_line", "minimal_word", "check_conventions",
]
