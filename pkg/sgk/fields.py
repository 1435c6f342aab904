"""
Exact scalar fields and seeded sampling.

Scalars are sympy polys-domain elements: QQ for the rational ground truth and
GF(p) for the prime-field speed mode. Sample streams are split per sample from
a single seed so suites give the same draws in any evaluation order.
"""

import logging
import re
from typing import Any, List, Sequence

import numpy as np
from sympy import isprime
from sympy.polys.domains import GF, QQ

from .errors import FieldMismatchError

logger = logging.getLogger(__name__)

_SCALAR_PATTERN = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")

# sampling box for coordinates
BOX = 10


class ScalarField:
    """A named exact field: "rational" or "fp:<p>" with p prime"""

    def __init__(self, spec: str = "rational"):
        spec = spec.strip()
        if spec == "rational":
            self.domain = QQ
            self.modulus = None
        elif spec.startswith("fp:"):
            try:
                p = int(spec[3:])
            except ValueError:
                raise FieldMismatchError(f"bad field modulus in {spec!r}")
            if not isprime(p):
                raise FieldMismatchError(f"field modulus {p} is not prime")
            self.domain = GF(p, symmetric=False)
            self.modulus = p
        else:
            raise FieldMismatchError(f"unknown field {spec!r} (use 'rational' or 'fp:<prime>')")
        self.name = spec

    def __repr__(self) -> str:
        return f"ScalarField({self.name!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ScalarField) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __call__(self, value: int) -> Any:
        return self.domain(int(value))

    @property
    def zero(self) -> Any:
        return self.domain.zero

    @property
    def one(self) -> Any:
        return self.domain.one

    def is_zero(self, x: Any) -> bool:
        return self.domain.is_zero(x)

    def ratio(self, num: int, den: int) -> Any:
        d = self.domain(int(den))
        if self.domain.is_zero(d):
            raise FieldMismatchError(f"denominator {den} vanishes in {self.name}")
        return self.domain(int(num)) / d

    def parse(self, text: Any) -> Any:
        """Parse an exact scalar string "n" or "num/den" (ints accepted, floats never)"""
        if isinstance(text, bool) or isinstance(text, float):
            raise FieldMismatchError(f"inexact scalar {text!r}")
        if isinstance(text, int):
            return self(text)
        match = _SCALAR_PATTERN.match(str(text))
        if not match:
            raise FieldMismatchError(f"cannot parse scalar {text!r}")
        num, den = match.group(1), match.group(2)
        if den is None:
            return self(int(num))
        return self.ratio(int(num), int(den))

    def format(self, x: Any) -> str:
        if self.modulus is None:
            num, den = int(self.domain.numer(x)), int(self.domain.denom(x))
            return str(num) if den == 1 else f"{num}/{den}"
        return str(int(self.domain.to_int(x)))

    def pow(self, x: Any, e: int) -> Any:
        if e < 0:
            return self.one / (x ** (-e))
        return x ** e

    def product(self, values: Sequence[Any]) -> Any:
        out = self.one
        for v in values:
            out = out * v
        return out


RATIONAL = ScalarField("rational")


def sample_generators(seed: int, count: int, key: Sequence[int] = ()) -> List[np.random.Generator]:
    """One independent generator per sample, spawned from a single seed (and an optional stream key)"""
    children = np.random.SeedSequence(seed, spawn_key=tuple(key)).spawn(count)
    return [np.random.default_rng(child) for child in children]


def draw(rng: np.random.Generator, field: ScalarField, nonzero: bool = False, box: int = BOX) -> Any:
    """Draw a field element from the integer box [-box, box], optionally avoiding zero"""
    while True:
        value = field(int(rng.integers(-box, box, endpoint=True)))
        if not nonzero or not field.is_zero(value):
            return value


def draw_unit(rng: np.random.Generator, field: ScalarField, box: int = BOX) -> Any:
    return draw(rng, field, nonzero=True, box=box)


__all__ = ["ScalarField", "RATIONAL", "BOX", "sample_generators", "draw", "draw_unit"]
