"""Quadratics in two variables as first-class exact objects.

A :class:`Quadratic` is the coefficient tuple (a, b, c, d, e, g) of
aX^2 + bXY + cY^2 + dX + eY + g with (a, b, c) != (0, 0, 0).  The quadratic,
not its zero set, is the primary object: over a finite field different
quadratics can share a zero locus, and constant shifts matter for
degenerations.

Classification is field-relative: a conic is a hyperbola / parabola /
ellipse according to whether its homogeneous part has 2 / 1 / 0 roots on the
projective line of directions over the ground field.
"""

from __future__ import annotations

from .field import FieldSpec, Scalar, halve, square_root
from .geometry import (
    AffineMap,
    Line,
    MID_INFINITE,
    Midpoint,
    ProjectivePoint,
    intersect,
    midline,
)


class ConicError(ValueError):
    """A conic-level precondition was violated."""


def _mul_linear(f1, f2):
    """Expand (u1 X + v1 Y + w1)(u2 X + v2 Y + w2) into six coefficients."""
    u1, v1, w1 = f1
    u2, v2, w2 = f2
    return (
        u1 * u2,
        u1 * v2 + u2 * v1,
        v1 * v2,
        u1 * w2 + u2 * w1,
        v1 * w2 + v2 * w1,
        w1 * w2,
    )


class Quadratic:
    """A degree-2 polynomial aX^2 + bXY + cY^2 + dX + eY + g."""

    __slots__ = ("a", "b", "c", "d", "e", "g")

    def __init__(self, a, b, c, d, e, g):
        if a.is_zero and b.is_zero and c.is_zero:
            raise ConicError("quadratic must have degree exactly 2")
        for name, val in (("a", a), ("b", b), ("c", c), ("d", d), ("e", e), ("g", g)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Quadratic is immutable")

    @classmethod
    def from_ints(cls, spec: FieldSpec, coeffs) -> "Quadratic":
        return cls(*(spec.scalar(v) for v in coeffs))

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    def coefficients(self) -> tuple[Scalar, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.g)

    def homogeneous_part(self) -> tuple[Scalar, Scalar, Scalar]:
        return (self.a, self.b, self.c)

    def evaluate(self, x: Scalar, y: Scalar) -> Scalar:
        return (self.a * x * x + self.b * x * y + self.c * y * y
                + self.d * x + self.e * y + self.g)

    def homogeneous_at(self, dx: Scalar, dy: Scalar) -> Scalar:
        return self.a * dx * dx + self.b * dx * dy + self.c * dy * dy

    def gradient_at(self, x: Scalar, y: Scalar) -> tuple[Scalar, Scalar]:
        return (self.a * x + self.a * x + self.b * y + self.d,
                self.b * x + self.c * y + self.c * y + self.e)

    def disc(self) -> Scalar:
        """b^2 - 4ac, the discriminant of the homogeneous part."""
        return self.b * self.b - 4 * self.a * self.c

    def det3(self) -> Scalar:
        """Determinant of [[a, b/2, d/2], [b/2, c, e/2], [d/2, e/2, g]]."""
        bh, dh, eh = halve(self.b), halve(self.d), halve(self.e)
        return (self.a * (self.c * self.g - eh * eh)
                - bh * (bh * self.g - eh * dh)
                + dh * (bh * eh - self.c * dh))

    def __add__(self, other):
        if isinstance(other, Quadratic):
            return Quadratic(*(x + y for x, y in zip(self.coefficients(),
                                                     other.coefficients())))
        return self.add_constant(self.spec.scalar(other))

    def __sub__(self, other):
        if isinstance(other, Quadratic):
            return Quadratic(*(x - y for x, y in zip(self.coefficients(),
                                                     other.coefficients())))
        return self.add_constant(-self.spec.scalar(other))

    def add_constant(self, t: Scalar) -> "Quadratic":
        a, b, c, d, e, g = self.coefficients()
        return Quadratic(a, b, c, d, e, g + t)

    def scale(self, t: Scalar) -> "Quadratic":
        return Quadratic(*(t * x for x in self.coefficients()))

    def canonical(self) -> "Quadratic":
        """Scale so the first nonzero coefficient equals 1."""
        for x in self.coefficients():
            if not x.is_zero:
                return self.scale(self.spec.one / x)
        raise AssertionError("unreachable: quadratic has a nonzero coefficient")

    def same_up_to_scalar(self, other: "Quadratic") -> bool:
        return self.canonical() == other.canonical()

    def key(self):
        """Hashable value tuple, mainly for canonical table lookups."""
        return tuple(x.value for x in self.coefficients())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quadratic):
            return NotImplemented
        return all(x == y for x, y in zip(self.coefficients(), other.coefficients()))

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        a, b, c, d, e, g = self.coefficients()
        return f"Quadratic({a},{b},{c},{d},{e},{g})"


def linear_combination(terms) -> Quadratic:
    """Sum of (scalar, Quadratic) pairs, which must stay degree 2."""
    coeffs = None
    for weight, q in terms:
        contrib = [weight * x for x in q.coefficients()]
        coeffs = contrib if coeffs is None else [x + y for x, y in zip(coeffs, contrib)]
    return Quadratic(*coeffs)


def pullback(mapping: AffineMap, f: Quadratic) -> Quadratic:
    """The composite f(mapping(x, y)), expanded exactly.

    Satisfies pullback(m1.compose(m2), f) == pullback(m2, pullback(m1, f)).
    """
    zero, one = f.spec.zero, f.spec.one
    xform = (mapping.m11, mapping.m12, mapping.t1)
    yform = (mapping.m21, mapping.m22, mapping.t2)
    const = (zero, zero, one)
    parts = [
        (f.a, _mul_linear(xform, xform)),
        (f.b, _mul_linear(xform, yform)),
        (f.c, _mul_linear(yform, yform)),
        (f.d, _mul_linear(xform, const)),
        (f.e, _mul_linear(yform, const)),
        (f.g, _mul_linear(const, const)),
    ]
    coeffs = [zero] * 6
    for weight, six in parts:
        for i, v in enumerate(six):
            coeffs[i] = coeffs[i] + weight * v
    return Quadratic(*coeffs)


# --- classification ---------------------------------------------------------

HYPERBOLA = "hyperbola"
PARABOLA = "parabola"
ELLIPSE = "ellipse"


class ConicClass:
    __slots__ = ("kind", "degenerate")

    def __init__(self, kind: str, degenerate: bool):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "degenerate", degenerate)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("ConicClass is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConicClass):
            return NotImplemented
        return self.kind == other.kind and self.degenerate == other.degenerate

    def __hash__(self) -> int:
        return hash((self.kind, self.degenerate))

    def __repr__(self) -> str:
        flag = "degenerate" if self.degenerate else "nondegenerate"
        return f"ConicClass({self.kind}, {flag})"


def points_at_infinity(f: Quadratic) -> list[ProjectivePoint]:
    """The rational roots of the homogeneous part on the line of directions."""
    spec = f.spec
    one, zero = spec.one, spec.zero
    if f.a.is_zero:
        pts = [ProjectivePoint.at_infinity(one, zero)]
        if not f.b.is_zero:
            pts.append(ProjectivePoint.at_infinity(-f.c / f.b, one))
        return sorted(pts, key=ProjectivePoint.sort_key)
    root = square_root(f.disc())
    if root is None:
        return []
    two_a = f.a + f.a
    if root.is_zero:
        return [ProjectivePoint.at_infinity(-f.b / two_a, one)]
    pts = [
        ProjectivePoint.at_infinity((-f.b + root) / two_a, one),
        ProjectivePoint.at_infinity((-f.b - root) / two_a, one),
    ]
    return sorted(pts, key=ProjectivePoint.sort_key)


def classify(f: Quadratic) -> ConicClass:
    """Hyperbola / parabola / ellipse by the count of points at infinity."""
    n = len(points_at_infinity(f))
    kind = (ELLIPSE, PARABOLA, HYPERBOLA)[n]
    if kind == ELLIPSE:
        degenerate = f.det3().is_zero
    else:
        degenerate = is_reducible(f) is not None
    return ConicClass(kind, degenerate)


def center(f: Quadratic) -> ProjectivePoint:
    """The center of a hyperbola: the unique zero of the gradient."""
    det = 4 * f.a * f.c - f.b * f.b
    if det.is_zero or square_root(f.disc()) is None:
        raise ConicError("center is defined for hyperbolas only")
    x = (f.b * f.e - 2 * f.c * f.d) / det
    y = (f.b * f.d - 2 * f.a * f.e) / det
    return ProjectivePoint.affine(x, y)


# --- reducibility and line pairs --------------------------------------------

CROSSING = "crossing"
PARALLEL = "parallel"
DOUBLE = "double"


class LinePair:
    """An unordered pair of lines (possibly equal), i.e. a reducible conic.

    Crossing pairs carry their intersection point (the center); parallel and
    double pairs carry their midline.
    """

    __slots__ = ("first", "second", "kind", "center", "midline")

    def __init__(self, l1: Line, l2: Line):
        if l1.sort_key() > l2.sort_key():
            l1, l2 = l2, l1
        if l1 == l2:
            kind, ctr, mid = DOUBLE, None, l1
        elif l1.is_parallel_to(l2):
            kind, ctr, mid = PARALLEL, None, midline(l1, l2)
        else:
            kind, ctr, mid = CROSSING, intersect(l1, l2), None
        object.__setattr__(self, "first", l1)
        object.__setattr__(self, "second", l2)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "center", ctr)
        object.__setattr__(self, "midline", mid)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("LinePair is immutable")

    @property
    def spec(self) -> FieldSpec:
        return self.first.spec

    def lines(self) -> tuple[Line, Line]:
        return (self.first, self.second)

    def line_set(self) -> frozenset[Line]:
        return frozenset((self.first, self.second))

    def contains_line(self, line: Line) -> bool:
        return line == self.first or line == self.second

    def other_line(self, line: Line) -> Line:
        if line == self.first:
            return self.second
        if line == self.second:
            return self.first
        raise ConicError("line is not a component of the pair")

    def product(self) -> Quadratic:
        """The product of the two linear forms, in canonical scaling."""
        l1, l2 = self.first, self.second
        return Quadratic(*_mul_linear((l1.u, l1.v, l1.w), (l2.u, l2.v, l2.w)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinePair):
            return NotImplemented
        return self.first == other.first and self.second == other.second

    def __hash__(self) -> int:
        return hash((self.first, self.second))

    def __repr__(self) -> str:
        return f"LinePair({self.first}, {self.second})"

    def sort_key(self):
        return (self.first.sort_key(), self.second.sort_key())


def product_quadratic(pair: LinePair) -> Quadratic:
    return pair.product()


def pairs_are_translates(p1: LinePair, p2: LinePair) -> bool:
    """Whether some translation of the plane maps one unordered pair onto the other.

    Directions must match as multisets.  Two crossing pairs with the same
    directions are always translates (the two direction equations pin the
    shift); pairs of parallel lines additionally need the constant offsets
    to match under one of the two pairings.
    """
    d1 = sorted((l.u.sort_key(), l.v.sort_key()) for l in p1.lines())
    d2 = sorted((l.u.sort_key(), l.v.sort_key()) for l in p2.lines())
    if d1 != d2:
        return False
    if p1.kind == CROSSING:
        return True
    a, b = p1.lines()
    c, d = p2.lines()
    return (a.w - c.w == b.w - d.w) or (a.w - d.w == b.w - c.w)


def _split_homogeneous_square(f: Quadratic):
    """Write the homogeneous part as scale * (uX + vY)^2, for disc = 0."""
    if not f.a.is_zero:
        return f.a, (f.spec.one, halve(f.b) / f.a)
    # disc = 0 with a = 0 forces b = 0, so the part is c Y^2.
    return f.c, (f.spec.zero, f.spec.one)


def is_reducible(f: Quadratic) -> LinePair | None:
    """The factorization of f into two lines over the ground field, if any.

    det3(f) != 0 rules reducibility out.  With det3(f) = 0 the discriminant
    of the homogeneous part decides the shape: a nonzero square gives two
    crossing lines through the center; zero gives parallel or double lines
    exactly when the shifted 1-variable discriminant is a square (so X^2 - 2
    stays irreducible over Q); a non-square gives a point-like conic with no
    rational components.
    """
    if not f.det3().is_zero:
        return None
    disc_root = square_root(f.disc())
    if disc_root is None:
        return None
    if not disc_root.is_zero:
        ctr = center(f)
        cx, cy = ctr.affine_xy()
        lines = []
        for direction in points_at_infinity(f):
            dx, dy = direction.x, direction.y
            lines.append(Line(dy, -dx, dx * cy - dy * cx))
        pair = LinePair(lines[0], lines[1])
        if not pair.product().same_up_to_scalar(f):
            raise AssertionError("crossing factorization failed to reproduce input")
        return pair
    scale, (u, v) = _split_homogeneous_square(f)
    # With det3 = 0 the linear part is a multiple of uX + vY.
    m = f.d / u if not u.is_zero else f.e / v
    if not (f.d == m * u and f.e == m * v):
        raise AssertionError("det3 = 0 but the linear part is not aligned")
    shifted_disc = square_root(m * m - 4 * scale * f.g)
    if shifted_disc is None:
        return None
    t1 = halve((-m + shifted_disc) / scale)
    t2 = halve((-m - shifted_disc) / scale)
    pair = LinePair(Line(u, v, -t1), Line(u, v, -t2))
    if not pair.product().same_up_to_scalar(f):
        raise AssertionError("parallel factorization failed to reproduce input")
    return pair


# --- degenerations -----------------------------------------------------------

DEGEN_UNIQUE = "unique"
DEGEN_FAMILY = "family"
DEGEN_NONE = "none"


class ParallelFamily:
    """All parallel/double pairs with a fixed direction and fixed midline.

    The members are the pairs {uX+vY = r, uX+vY = s} with r + s constant;
    each is the zero set of a degeneration of the owning quadratic.
    """

    __slots__ = ("scale", "axis", "linear", "constant")

    def __init__(self, scale: Scalar, axis: tuple[Scalar, Scalar],
                 linear: Scalar, constant: Scalar):
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "constant", constant)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("ParallelFamily is immutable")

    @property
    def midline(self) -> Line:
        u, v = self.axis
        return Line(u, v, halve(self.linear / self.scale))

    @property
    def direction(self) -> ProjectivePoint:
        u, v = self.axis
        return ProjectivePoint.at_infinity(-v, u)

    def pair_at(self, r: Scalar) -> LinePair:
        u, v = self.axis
        s = -self.linear / self.scale - r
        return LinePair(Line(u, v, -r), Line(u, v, -s))

    def quadratic_at(self, r: Scalar) -> Quadratic:
        """The exact degeneration with component uX + vY = r."""
        return self.pair_at(r).product().scale(self.scale)


class Degenerations:
    """Outcome of listing the reducible constant shifts of a quadratic."""

    __slots__ = ("kind", "pair", "shift", "family")

    def __init__(self, kind, pair=None, shift=None, family=None):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "family", family)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Degenerations is immutable")

    def __repr__(self) -> str:
        return f"Degenerations({self.kind})"


def degenerations(f: Quadratic) -> Degenerations:
    """The reducible quadratics differing from f by a constant.

    A hyperbola has exactly one (its asymptote pair, at the shift that kills
    det3, which is linear in the shift with nonzero slope).  A quadratic
    whose homogeneous part is a perfect square and whose det3 vanishes has a
    one-parameter family, all sharing one midline.  Ellipses and parabolas
    with det3 != 0 have none.
    """
    disc = f.disc()
    disc_root = square_root(disc)
    slope = f.a * f.c - halve(f.b) * halve(f.b)  # d det3(f + t) / dt
    if disc_root is not None and not disc_root.is_zero:
        shift = -f.det3() / slope
        pair = is_reducible(f.add_constant(shift))
        if pair is None or pair.kind != CROSSING:
            raise AssertionError("hyperbola degeneration must be a crossing pair")
        return Degenerations(DEGEN_UNIQUE, pair=pair, shift=shift)
    if disc.is_zero and f.det3().is_zero:
        scale, (u, v) = _split_homogeneous_square(f)
        m = f.d / u if not u.is_zero else f.e / v
        return Degenerations(
            DEGEN_FAMILY,
            family=ParallelFamily(scale, (u, v), m, f.g),
        )
    return Degenerations(DEGEN_NONE)


# --- line/conic midpoint calculus --------------------------------------------

MR_CROSSES = "crosses"
MR_MEETS_NO_CROSS = "meets-no-cross"
MR_NO_MEET = "no-meet"


class MidResult:
    """How a line intersects a conic, with the crossing midpoint if any."""

    __slots__ = ("kind", "midpoint")

    def __init__(self, kind: str, midpoint: Midpoint | None = None):
        if (kind == MR_CROSSES) != (midpoint is not None):
            raise ConicError("crossing results carry a midpoint; others do not")
        if midpoint is not None and midpoint.is_undetermined:
            raise ConicError("a crossing midpoint is finite or infinite")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "midpoint", midpoint)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("MidResult is immutable")

    @property
    def crosses(self) -> bool:
        return self.kind == MR_CROSSES

    def __eq__(self, other) -> bool:
        if not isinstance(other, MidResult):
            return NotImplemented
        return self.kind == other.kind and self.midpoint == other.midpoint

    def __hash__(self) -> int:
        return hash((self.kind, self.midpoint))

    def __repr__(self) -> str:
        if self.crosses:
            return f"MidResult(crosses, {self.midpoint})"
        return f"MidResult({self.kind})"


MEETS_NO_CROSS = MidResult(MR_MEETS_NO_CROSS)
NO_MEET = MidResult(MR_NO_MEET)


def restrict_to_line(f: Quadratic, line: Line) -> tuple[Scalar, Scalar, Scalar]:
    """Coefficients (A, B, C) of f along the line's parameterization.

    A is the homogeneous part at the direction, so A = 0 exactly when the
    line's point at infinity lies on the conic's closure.
    """
    (bx, by), (dx, dy) = line.parameterization()
    A = f.homogeneous_at(dx, dy)
    gx, gy = f.gradient_at(bx, by)
    B = gx * dx + gy * dy
    C = f.evaluate(bx, by)
    return A, B, C


def meets(f: Quadratic, line: Line) -> bool:
    """Whether the projective closures of line and conic intersect."""
    A, B, C = restrict_to_line(f, line)
    if A.is_zero:
        return True
    return square_root(B * B - 4 * A * C) is not None


def mid(f: Quadratic, line: Line) -> MidResult:
    """Crossing classification and midpoint of a line against a conic.

    Tangential crossings (double roots along the line) count as crossings
    with the tangency point as midpoint, the sum-of-roots convention.
    """
    A, B, C = restrict_to_line(f, line)
    if A.is_zero and B.is_zero and C.is_zero:
        return MEETS_NO_CROSS
    if not A.is_zero:
        if square_root(B * B - 4 * A * C) is None:
            return NO_MEET
        t_mid = halve(-B / A)
        return MidResult(MR_CROSSES, Midpoint.finite(line.point_at(t_mid)))
    if not B.is_zero:
        return MidResult(MR_CROSSES, MID_INFINITE)
    return MEETS_NO_CROSS
