"""Exact base rings: the integers, the rationals, Z/n and finite products.

Ring values are kept in canonical form so that equality of values is
equality of elements:

* ``Integers``  -- Python ``int``
* ``Rationals`` -- ``fractions.Fraction`` (reduced, positive denominator)
* ``Modular(n)`` -- ``int`` in ``range(n)``
* ``Product``   -- ``tuple`` of canonical factor values

Linear algebra works on these raw values; :class:`RingElement` is the
user-facing wrapper with operator overloading.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Optional

from .errors import MixedRings, NotProduct


class BaseRing:
    """Common interface; concrete rings are frozen dataclasses below."""

    is_product = False

    # -- arithmetic on canonical raw values -------------------------------
    def canon(self, value: Any) -> Any:
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        return self.canon(a + b)

    def sub(self, a, b):
        return self.canon(a - b)

    def mul(self, a, b):
        return self.canon(a * b)

    def neg(self, a):
        return self.canon(-a)

    def dot(self, xs, ys):
        return self.canon(sum(x * y for x, y in zip(xs, ys)))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def inverse(self, a) -> Optional[Any]:
        raise NotImplementedError

    # -- structure ----------------------------------------------------------
    @property
    def cardinality(self) -> Optional[int]:
        """Number of elements, or ``None`` when infinite."""
        return None

    @property
    def is_finite(self) -> bool:
        return self.cardinality is not None

    def is_pid(self) -> bool:
        return False

    def elements(self) -> Iterator[Any]:
        from .errors import InfiniteEnumeration

        raise InfiniteEnumeration(f"{self} is infinite")

    def __call__(self, value) -> "RingElement":
        return RingElement(self, self.canon(value))


@dataclass(frozen=True)
class Integers(BaseRing):
    def canon(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"{value} is not an integer")
            return int(value.numerator)
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot interpret {value!r} as an integer")
        return value

    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys))

    def inverse(self, a):
        return a if a in (1, -1) else None

    def is_pid(self):
        return True

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class Rationals(BaseRing):
    def canon(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot interpret {value!r} as a rational")
        return Fraction(value)

    zero = Fraction(0)
    one = Fraction(1)

    def inverse(self, a):
        return None if a == 0 else 1 / a

    def is_pid(self):
        return True

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class Modular(BaseRing):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.n!r}")

    def canon(self, value):
        if type(value) is int:
            return value % self.n
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
            inv = pow(den, -1, self.n)  # raises ValueError when not invertible
            return (num * inv) % self.n
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot interpret {value!r} modulo {self.n}")
        return value % self.n

    zero = 0
    one = 1

    # canonical values are plain ints, so reduce directly
    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return -a % self.n

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.n

    def inverse(self, a):
        if math.gcd(a, self.n) != 1:
            return None
        return pow(a, -1, self.n)

    @property
    def cardinality(self):
        return self.n

    def is_pid(self):
        return _is_prime(self.n)

    def elements(self):
        return iter(range(self.n))

    def __str__(self):
        return f"Z/{self.n}"


@dataclass(frozen=True)
class Product(BaseRing):
    factors: tuple

    is_product = True

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            raise ValueError("a product ring needs at least two factors")
        for f in self.factors:
            if not isinstance(f, BaseRing) or isinstance(f, Product):
                raise ValueError("product factors must be non-product base rings")

    def canon(self, value):
        if type(value) is tuple and len(value) == len(self.factors):
            return tuple(f.canon(v) for f, v in zip(self.factors, value))
        if isinstance(value, RingElement):
            value = value.value
        if isinstance(value, (tuple, list)):
            if len(value) != len(self.factors):
                raise ValueError(f"expected {len(self.factors)} components, got {value!r}")
            return tuple(f.canon(v) for f, v in zip(self.factors, value))
        # an integer or fraction maps diagonally
        return tuple(f.canon(value) for f in self.factors)

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def sub(self, a, b):
        return tuple(f.sub(x, y) for f, x, y in zip(self.factors, a, b))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def dot(self, xs, ys):
        xs, ys = list(xs), list(ys)
        return tuple(
            f.dot([x[i] for x in xs], [y[i] for y in ys])
            for i, f in enumerate(self.factors)
        )

    def inverse(self, a):
        parts = [f.inverse(x) for f, x in zip(self.factors, a)]
        if any(p is None for p in parts):
            return None
        return tuple(parts)

    @property
    def cardinality(self):
        sizes = [f.cardinality for f in self.factors]
        if any(s is None for s in sizes):
            return None
        return math.prod(sizes)

    def elements(self):
        return itertools.product(*(f.elements() for f in self.factors))

    def component(self, value, i):
        return value[i]

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)


ZZ = Integers()
QQ = Rationals()


def product(*factors: BaseRing) -> Product:
    """Build a product ring, flattening nested products."""
    flat = []
    for f in factors:
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    return Product(tuple(flat))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class RingElement:
    ring: BaseRing
    value: Any

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return other.value
        return self.ring.canon(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __repr__(self):
        return f"{self.ring}({self.value!r})"


def arithmetic(ring: BaseRing, op: str, a: RingElement, b: RingElement) -> RingElement:
    """Apply ``op`` (add, mul, neg, sub) to two elements of ``ring``."""
    for x in (a, b):
        if x.ring != ring:
            raise MixedRings(f"{x!r} does not belong to {ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def is_unit(ring: BaseRing, a: RingElement) -> Optional[RingElement]:
    """Return the inverse of ``a`` when it is a unit, else ``None``."""
    if a.ring != ring:
        raise MixedRings(f"{a!r} does not belong to {ring}")
    inv = ring.inverse(a.value)
    return None if inv is None else RingElement(ring, inv)


def is_pid(ring: BaseRing) -> bool:
    return ring.is_pid()


def idempotents(ring: BaseRing) -> list:
    """Standard orthogonal idempotents of a product ring, in factor order."""
    if not isinstance(ring, Product):
        raise NotProduct(f"{ring} is not a product ring")
    out = []
    for i in range(len(ring.factors)):
        value = tuple(f.one if j == i else f.zero for j, f in enumerate(ring.factors))
        out.append(RingElement(ring, value))
    return out
