"""Physical constants and a small dimension-checked scalar type.

Dimensions are exponent vectors over the base units (m, kg, s, K). A
:class:`Quantity` refuses to be added to, compared with, or converted to a
plain float unless the dimensions allow it, so a formula evaluated on
quantities either produces the right unit or raises :class:`DimensionError`.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass, fields

BASE_UNITS = ("m", "kg", "s", "K")

DIMENSIONLESS = (0, 0, 0, 0)
METER = (1, 0, 0, 0)
SECOND = (0, 0, 1, 0)
KELVIN = (0, 0, 0, 1)
AREA = (2, 0, 0, 0)
VOLUME = (3, 0, 0, 0)
PER_VOLUME = (-3, 0, 0, 0)
RATE = (0, 0, -1, 0)
SPEED = (1, 0, -1, 0)
JOULE = (2, 1, -2, 0)
WATT = (2, 1, -3, 0)
JOULE_PER_KELVIN = (2, 1, -2, -1)
JOULE_SECOND = (2, 1, -1, 0)
GRAVITATIONAL = (3, -1, -2, 0)
ENERGY_DENSITY = (-1, 1, -2, 0)
POWER_DENSITY = (-1, 1, -3, 0)
SPECTRAL_MODE_DENSITY = (-3, 0, 1, 0)


class DimensionError(TypeError):
    """Incompatible dimensions in a quantity operation."""


def format_dimension(dim):
    parts = [u if e == 1 else f"{u}^{e}" for u, e in zip(BASE_UNITS, dim) if e]
    return "·".join(parts) or "1"


def _dim(x):
    return x.dim if isinstance(x, Quantity) else DIMENSIONLESS


def _val(x):
    return x.value if isinstance(x, Quantity) else x


@dataclass(frozen=True)
class Quantity:
    """A real value tagged with its dimension exponent vector."""

    value: float
    dim: tuple = DIMENSIONLESS

    def __post_init__(self):
        if len(self.dim) != len(BASE_UNITS):
            raise DimensionError(f"dimension vector must have {len(BASE_UNITS)} entries")
        object.__setattr__(self, "dim", tuple(int(e) for e in self.dim))

    def _same(self, other, op):
        if _dim(other) != self.dim:
            raise DimensionError(
                f"cannot {op} [{format_dimension(self.dim)}] and "
                f"[{format_dimension(_dim(other))}]"
            )
        return _val(other)

    def __add__(self, other):
        return Quantity(self.value + self._same(other, "add"), self.dim)

    __radd__ = __add__

    def __sub__(self, other):
        return Quantity(self.value - self._same(other, "subtract"), self.dim)

    def __rsub__(self, other):
        return Quantity(self._same(other, "subtract") - self.value, self.dim)

    def __mul__(self, other):
        dim = tuple(a + b for a, b in zip(self.dim, _dim(other)))
        return Quantity(self.value * _val(other), dim)

    __rmul__ = __mul__

    def __truediv__(self, other):
        dim = tuple(a - b for a, b in zip(self.dim, _dim(other)))
        return Quantity(self.value / _val(other), dim)

    def __rtruediv__(self, other):
        return Quantity(_val(other) / self.value, tuple(-e for e in self.dim))

    def __pow__(self, n):
        if int(n) != n:
            raise DimensionError("only integer powers keep dimensions integral")
        return Quantity(self.value ** n, tuple(e * int(n) for e in self.dim))

    def __neg__(self):
        return Quantity(-self.value, self.dim)

    def __abs__(self):
        return Quantity(abs(self.value), self.dim)

    def __float__(self):
        if self.dim != DIMENSIONLESS:
            raise DimensionError(
                f"[{format_dimension(self.dim)}] is not dimensionless"
            )
        return float(self.value)

    def _cmp(self, other, op):
        return op(self.value, self._same(other, "compare"))

    def __lt__(self, other):
        return self._cmp(other, operator.lt)

    def __le__(self, other):
        return self._cmp(other, operator.le)

    def __gt__(self, other):
        return self._cmp(other, operator.gt)

    def __ge__(self, other):
        return self._cmp(other, operator.ge)

    def to(self, dim):
        """Return the bare value after asserting the dimension is ``dim``."""
        if self.dim != tuple(dim):
            raise DimensionError(
                f"expected [{format_dimension(dim)}], got [{format_dimension(self.dim)}]"
            )
        return self.value

    def __str__(self):
        return f"{self.value!r} {format_dimension(self.dim)}"


_UNITS = {
    "k_B": (JOULE_PER_KELVIN, "J/K"),
    "hbar": (JOULE_SECOND, "J*s"),
    "G": (GRAVITATIONAL, "m^3/(kg*s^2)"),
    "c": (SPEED, "m/s"),
}


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants used by the bound formulas.

    The default field values are the CODATA 2018 set; ``k_B``, ``hbar`` and
    ``c`` are exact in SI, ``G`` carries its recommended value.
    """

    k_B: float = 1.380649e-23
    hbar: float = 1.054571817e-34
    G: float = 6.67430e-11
    c: float = 2.99792458e8
    name: str = "CODATA 2018"

    def __post_init__(self):
        for f in fields(self):
            if f.name == "name":
                continue
            v = getattr(self, f.name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"constant {f.name} must be positive and finite")

    @property
    def planck_area(self):
        return self.hbar * self.G / self.c ** 3

    def quantity(self, symbol):
        """Return constant ``symbol`` as a :class:`Quantity`."""
        dim, _ = _UNITS[symbol]
        return Quantity(getattr(self, symbol), dim)

    def as_quantities(self):
        """A copy of this set whose values are :class:`Quantity` objects.

        The copy bypasses validation and exists only so the bound formulas can
        be re-evaluated with units attached.
        """
        obj = object.__new__(type(self))
        for symbol in _UNITS:
            object.__setattr__(obj, symbol, self.quantity(symbol))
        object.__setattr__(obj, "name", self.name)
        return obj

    def to_dict(self):
        # repr() of a float is the shortest string that round-trips bit-exactly
        return {
            "name": self.name,
            "constants": {
                s: {"value": repr(float(getattr(self, s))), "unit": unit}
                for s, (_, unit) in _UNITS.items()
            },
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data):
        values = {s: float(entry["value"]) for s, entry in data["constants"].items()}
        return cls(name=data.get("name", "custom"), **values)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


CODATA2018 = PhysicalConstants()


def planck_area(constants=CODATA2018):
    """Planck area hbar*G/c^3 as a quantity in m^2."""
    q = constants.as_quantities()
    return q.hbar * q.G / q.c ** 3
