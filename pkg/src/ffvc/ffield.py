"""Prime-field arithmetic.

Hot paths elsewhere in the package work on plain ``int`` residues and numpy
arrays; :class:`FieldElement` is the checked, object-level view used at API
boundaries and in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

Q_MAX = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise TypeError(f"q must be an int, got {type(self.q).__name__}")
        if not 2 <= self.q <= Q_MAX:
            raise ValueError(f"q={self.q} out of range [2, {Q_MAX}]")
        if not is_prime(self.q):
            raise ValueError(f"q={self.q} is not prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.q, self)

    def elements(self):
        return [FieldElement(v, self) for v in range(self.q)]


def make_field(q: int) -> FieldSpec:
    return FieldSpec(q)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: FieldSpec

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.field.q}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"field mismatch: q={self.field.q} vs q={other.field.q}")
            return other.value
        if isinstance(other, int):
            return other % self.field.q
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(v % self.field.q, self.field)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.value + b)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.value - b)

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(b - self.value)

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.value * b)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return inv(self) ** (-e)
        return self._wrap(pow(self.value, e, self.field.q))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self * inv(self._wrap(b))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.q})"


def arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, neg, pow}; for ``pow`` b is the exponent."""
    if op == "neg":
        return -a
    if b is None:
        raise ValueError(f"operation {op!r} needs a second operand")
    if op == "pow":
        return a ** int(b.value if isinstance(b, FieldElement) else b)
    if not isinstance(b, FieldElement) or b.field != a.field:
        raise ValueError("operands must share a FieldSpec")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {a.field.q}")
    return FieldElement(pow(a.value, a.field.q - 2, a.field.q), a.field)


def inv_mod(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {q}")
    return pow(a, q - 2, q)
