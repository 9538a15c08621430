"""Exact bivariate Laurent polynomials over rationals and lattice polygons.

Coefficients are ``fractions.Fraction`` throughout; floats are rejected so
that every identity checked downstream is an exact equality.  Polynomials are
sparse maps from exponent pairs ``(i, j)`` to nonzero coefficients, with a
deterministic (sorted) term order for serialization.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import ZeroEvaluationPoint, ZeroPolynomial

Exponent = tuple[int, int]


def _as_coeff(x):
    """Coerce an exact scalar to Fraction; reject floats."""
    if isinstance(x, float):
        raise TypeError("floating coefficients are not allowed in exact algebra")
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class LaurentPoly2:
    """A Laurent polynomial in two variables z, w with rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Exponent, object] | None = None):
        c: dict[Exponent, Fraction] = {}
        if coeffs:
            for (i, j), v in coeffs.items():
                v = _as_coeff(v)
                if v:
                    key = (int(i), int(j))
                    s = c.get(key, Fraction(0)) + v
                    if s:
                        c[key] = s
                    elif key in c:
                        del c[key]
        self._c = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly2":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> "LaurentPoly2":
        return cls({(i, j): coeff})

    @classmethod
    def constant(cls, coeff) -> "LaurentPoly2":
        return cls({(0, 0): coeff})

    # -- basic protocol ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, i: int, j: int) -> Fraction:
        return self._c.get((i, j), Fraction(0))

    def terms(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in sorted exponent order (deterministic)."""
        for key in sorted(self._c):
            yield key, self._c[key]

    def support(self) -> list[Exponent]:
        return sorted(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly2):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly2.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        return f"LaurentPoly2({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for (i, j), v in self.terms():
            mono = "".join(
                f"{name}^{e}" if e not in (0, 1) else (name if e == 1 else "")
                for name, e in (("z", i), ("w", j))
            )
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{v}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "LaurentPoly2":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, Fraction(0)) + v
            if s:
                c[k] = s
            elif k in c:
                del c[k]
        out = LaurentPoly2.__new__(LaurentPoly2)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly2":
        out = LaurentPoly2.__new__(LaurentPoly2)
        out._c = {k: -v for k, v in self._c.items()}
        return out

    def __sub__(self, other) -> "LaurentPoly2":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly2":
        if isinstance(other, (int, Fraction)):
            v = _as_coeff(other)
            out = LaurentPoly2.__new__(LaurentPoly2)
            out._c = {} if not v else {k: c * v for k, c in self._c.items()}
            return out
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        c: dict[Exponent, Fraction] = {}
        for (i1, j1), v1 in self._c.items():
            for (i2, j2), v2 in other._c.items():
                k = (i1 + i2, j1 + j2)
                s = c.get(k, Fraction(0)) + v1 * v2
                if s:
                    c[k] = s
                elif k in c:
                    del c[k]
        out = LaurentPoly2.__new__(LaurentPoly2)
        out._c = c
        return out

    __rmul__ = __mul__

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly2.constant(other)
        return NotImplemented

    # -- the operations used by the spectral machinery ----------------------

    def involution(self) -> "LaurentPoly2":
        """Substitute (z, w) -> (1/z, 1/w); an involution on the ring."""
        out = LaurentPoly2.__new__(LaurentPoly2)
        out._c = {(-i, -j): v for (i, j), v in self._c.items()}
        return out

    def derivative(self, var: str) -> "LaurentPoly2":
        """Formal partial derivative with respect to ``"z"`` or ``"w"``."""
        if var not in ("z", "w"):
            raise ValueError(f"unknown variable {var!r}")
        c: dict[Exponent, Fraction] = {}
        for (i, j), v in self._c.items():
            e = i if var == "z" else j
            if e == 0:
                continue
            k = (i - 1, j) if var == "z" else (i, j - 1)
            c[k] = v * e
        out = LaurentPoly2.__new__(LaurentPoly2)
        out._c = c
        return out

    def eval(self, z, w):
        """Evaluate at nonzero z, w (exact for Fraction/int, complex otherwise).

        Complex evaluation runs Horner's scheme along each row of constant
        z-exponent for stability.
        """
        if z == 0 or w == 0:
            raise ZeroEvaluationPoint("Laurent polynomials have poles at z=0 or w=0")
        if not self._c:
            return Fraction(0) if _is_exact(z) and _is_exact(w) else 0j
        if _is_exact(z) and _is_exact(w):
            z, w = Fraction(z), Fraction(w)
            total = Fraction(0)
            for (i, j), v in self._c.items():
                total += v * z**i * w**j
            return total
        z, w = complex(z), complex(w)
        rows: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in self._c.items():
            rows.setdefault(i, []).append((j, v))
        total = 0j
        for i in sorted(rows):
            row = sorted(rows[i])
            jmin = row[0][0]
            jmax = row[-1][0]
            dense = [0.0] * (jmax - jmin + 1)
            for j, v in row:
                dense[j - jmin] = float(v)
            acc = 0j
            for coef in reversed(dense):
                acc = acc * w + coef
            total += z**i * w**jmin * acc
        return total

    def scale_at(self, z: complex, w: complex) -> float:
        """Sum of |coefficient * monomial| at (z, w); a residual yardstick."""
        z, w = complex(z), complex(w)
        return float(sum(abs(float(v)) * abs(z) ** i * abs(w) ** j for (i, j), v in self._c.items()))

    def newton_polygon(self) -> "NewtonPolygon":
        if not self._c:
            raise ZeroPolynomial("the zero polynomial has no Newton polygon")
        return NewtonPolygon.from_points(self._c.keys())

    # -- serialization -------------------------------------------------------

    def to_json_terms(self) -> list[list]:
        return [[i, j, str(v)] for (i, j), v in self.terms()]

    @classmethod
    def from_json_terms(cls, terms: Iterable[Iterable]) -> "LaurentPoly2":
        return cls({(int(i), int(j)): Fraction(str(v)) for i, j, v in terms})


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


# Convenience generators.
Z = LaurentPoly2.monomial(1, 0)
W = LaurentPoly2.monomial(0, 1)
ONE = LaurentPoly2.one()


def _cross(o: Exponent, a: Exponent, b: Exponent) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class NewtonPolygon:
    """Convex hull of a finite set of lattice points, in ccw vertex order.

    The vertex list is canonical: it starts at the lexicographically smallest
    vertex and runs counterclockwise.  Lattice-point counts are computed both
    by Pick's theorem and by direct enumeration; a mismatch raises (it would
    mean a hull bug).
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[Exponent]):
        self.vertices: tuple[Exponent, ...] = tuple((int(x), int(y)) for x, y in vertices)

    @classmethod
    def from_points(cls, points: Iterable[Exponent]) -> "NewtonPolygon":
        pts = sorted({(int(x), int(y)) for x, y in points})
        if not pts:
            raise ValueError("no points")
        if len(pts) == 1:
            return cls(pts)
        lower: list[Exponent] = []
        for p in pts:
            while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
                lower.pop()
            lower.append(p)
        upper: list[Exponent] = []
        for p in reversed(pts):
            while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
                upper.pop()
            upper.append(p)
        hull = lower[:-1] + upper[:-1]
        if len(hull) < 2:  # all points collinear -> keep the two extremes
            hull = [pts[0], pts[-1]]
        # canonical rotation: start at lexicographic minimum
        k = hull.index(min(hull))
        return cls(hull[k:] + hull[:k])

    # -- basic geometry ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, NewtonPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"NewtonPolygon({list(self.vertices)})"

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3

    def edge_vectors(self) -> list[Exponent]:
        """Boundary edge vectors in ccw order (empty for degenerate hulls)."""
        if self.is_degenerate:
            return []
        n = len(self.vertices)
        return [
            (self.vertices[(k + 1) % n][0] - self.vertices[k][0],
             self.vertices[(k + 1) % n][1] - self.vertices[k][1])
            for k in range(n)
        ]

    def primitive_edges(self) -> list[tuple[Exponent, int]]:
        """(primitive vector, lattice length) for each ccw boundary edge."""
        out = []
        for vx, vy in self.edge_vectors():
            g = math.gcd(abs(vx), abs(vy))
            out.append(((vx // g, vy // g), g))
        return out

    def twice_area(self) -> int:
        if self.is_degenerate:
            return 0
        a = 0
        n = len(self.vertices)
        for k in range(n):
            x1, y1 = self.vertices[k]
            x2, y2 = self.vertices[(k + 1) % n]
            a += x1 * y2 - x2 * y1
        return a

    def contains(self, p: Exponent, strict: bool = False) -> bool:
        if len(self.vertices) == 1:
            return (not strict) and tuple(p) == self.vertices[0]
        if len(self.vertices) == 2:
            a, b = self.vertices
            if strict:
                return False
            if _cross(a, b, p) != 0:
                return False
            return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        n = len(self.vertices)
        for k in range(n):
            c = _cross(self.vertices[k], self.vertices[(k + 1) % n], p)
            if c < 0 or (strict and c == 0):
                return False
        return True

    # -- lattice point counting ----------------------------------------------

    def boundary_lattice_count(self) -> int:
        if len(self.vertices) == 1:
            return 1
        if len(self.vertices) == 2:
            (x1, y1), (x2, y2) = self.vertices
            return math.gcd(abs(x2 - x1), abs(y2 - y1)) + 1
        return sum(g for _, g in self.primitive_edges())

    def interior_lattice_count(self) -> int:
        """Interior count, by Pick's theorem cross-checked against enumeration."""
        by_pick = self._interior_by_pick()
        by_enum = len(self.interior_lattice_points())
        if by_pick != by_enum:
            raise AssertionError(
                f"Pick ({by_pick}) and enumeration ({by_enum}) disagree on {self!r}"
            )
        return by_enum

    def _interior_by_pick(self) -> int:
        if self.is_degenerate:
            return 0
        # Pick: A = I + B/2 - 1  =>  I = (2A - B + 2) / 2
        return (self.twice_area() - self.boundary_lattice_count() + 2) // 2

    def _bounding_box(self):
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def interior_lattice_points(self) -> list[Exponent]:
        if self.is_degenerate:
            return []
        x0, x1, y0, y1 = self._bounding_box()
        return [
            (x, y)
            for x in range(x0, x1 + 1)
            for y in range(y0, y1 + 1)
            if self.contains((x, y), strict=True)
        ]

    def boundary_lattice_points(self) -> list[Exponent]:
        x0, x1, y0, y1 = self._bounding_box()
        return [
            (x, y)
            for x in range(x0, x1 + 1)
            for y in range(y0, y1 + 1)
            if self.contains((x, y)) and not self.contains((x, y), strict=True)
        ]

    def lattice_points(self) -> list[Exponent]:
        x0, x1, y0, y1 = self._bounding_box()
        return [
            (x, y)
            for x in range(x0, x1 + 1)
            for y in range(y0, y1 + 1)
            if self.contains((x, y))
        ]

    # -- symmetry -------------------------------------------------------------

    def point_reflection(self) -> "NewtonPolygon":
        return NewtonPolygon.from_points([(-x, -y) for x, y in self.vertices])

    def is_centrally_symmetric(self) -> bool:
        """Symmetric about the origin (vertex set closed under negation)."""
        vs = set(self.vertices)
        return vs == {(-x, -y) for x, y in vs}

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.vertices]
