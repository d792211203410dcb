"""Complete quadrilaterals: two pairs of opposite sides and their pencil.

A quadrilateral is two pairs of lines such that neither pair is a
translation of the other, the pairs share no line, the four lines are
neither all concurrent nor all parallel.  Opposite sides may coincide, in
which case the quadrilateral is degenerate.
"""

from __future__ import annotations

from .conic import (
    CROSSING,
    DOUBLE,
    PARALLEL,
    LinePair,
    pairs_are_translates,
)
from .geometry import GeometryError, Line, Midpoint, ProjectivePoint, intersect
from .pencil import (
    AsymptoticPencil,
    Pencil,
    TrivialPencilError,
    nets_equal,
)


TRANSLATION_PAIR = "translation-pair"
SHARED_LINE = "shared-line"
ALL_CONCURRENT = "all-concurrent"
ALL_PARALLEL = "all-parallel"


class QuadrilateralError(ValueError):
    """A rejected quadrilateral, tagged with the violated clause."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class Quadrilateral:
    """Validated opposite-side pairs; build through :func:`validate`."""

    __slots__ = ("first", "second", "degenerate")

    def __init__(self, first: LinePair, second: LinePair, degenerate: bool):
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)
        object.__setattr__(self, "degenerate", degenerate)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Quadrilateral is immutable")

    def pair_list(self) -> list[LinePair]:
        return [self.first, self.second]

    def all_lines(self) -> list[Line]:
        return [*self.first.lines(), *self.second.lines()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quadrilateral):
            return NotImplemented
        mine = {self.first, self.second}
        return mine == {other.first, other.second}

    def __repr__(self) -> str:
        return f"Quadrilateral({self.first}, {self.second})"


def validate(pair1: LinePair, pair2: LinePair) -> Quadrilateral:
    """Check the quadrilateral clauses; raise a tagged error on violation."""
    if pairs_are_translates(pair1, pair2):
        raise QuadrilateralError(
            TRANSLATION_PAIR, "one pair of opposite sides is a translation of the other"
        )
    if pair1.line_set() & pair2.line_set():
        raise QuadrilateralError(SHARED_LINE, "the opposite-side pairs share a line")
    lines = []
    for line in [*pair1.lines(), *pair2.lines()]:
        if line not in lines:
            lines.append(line)
    if all(line.is_parallel_to(lines[0]) for line in lines[1:]):
        raise QuadrilateralError(ALL_PARALLEL, "all four sides are parallel")
    pt = intersect(lines[0], lines[1])
    if not isinstance(pt, ProjectivePoint):
        raise AssertionError("distinct canonical lines cannot coincide")
    if all(line.contains(pt) for line in lines[2:]):
        reason = ALL_PARALLEL if pt.is_infinite else ALL_CONCURRENT
        raise QuadrilateralError(reason, "all four sides share a point")
    degenerate = pair1.kind == DOUBLE or pair2.kind == DOUBLE
    return Quadrilateral(pair1, pair2, degenerate)


def vertices(q: Quadrilateral) -> list[ProjectivePoint]:
    """The four vertices A.B, A.B', A'.B, A'.B' (possibly at infinity)."""
    a, a2 = q.first.lines()
    b, b2 = q.second.lines()
    out = []
    for s in (a, a2):
        for t in (b, b2):
            pt = intersect(s, t)
            if not isinstance(pt, ProjectivePoint):
                raise AssertionError("opposite-side pairs share no line")
            out.append(pt)
    return out


def diagonals(q: Quadrilateral) -> tuple[Line, Line]:
    """The lines joining the two pairs of opposite vertices."""
    v = vertices(q)
    out = []
    for p1, p2 in ((v[0], v[3]), (v[1], v[2])):
        if p1.is_infinite and p2.is_infinite:
            raise GeometryError("diagonal through two infinite vertices is the line at infinity")
        if p1 == p2:
            raise GeometryError("coincident opposite vertices span no diagonal")
        out.append(Line.through(p1, p2))
    return out[0], out[1]


def pencil_of(q: Quadrilateral) -> Pencil:
    """The pencil spanned by the two opposite-side products."""
    return Pencil(q.first.product(), q.second.product())


def _pick_parallel_partner(candidates: list[LinePair], avoid: LinePair,
                           allow_double: bool) -> LinePair | None:
    for pair in candidates:
        if pair.kind == DOUBLE and not allow_double:
            continue
        if pair.line_set() & avoid.line_set():
            continue
        return pair
    return None


def quadrilateral_of(ap: AsymptoticPencil) -> Quadrilateral:
    """A quadrilateral whose asymptotic pencil equals the given one.

    Requires a nontrivial pencil.  A crossing member is combined with
    either a parallel member of a family (when the net has a degenerate
    parabola) or a second crossing member with a different center; over
    fields with more than 3 elements the result is nondegenerate.
    """
    if ap.is_trivial():
        raise TrivialPencilError(
            "a trivial asymptotic pencil (same-center degenerate hyperbolas only) "
            "is not the asymptotic pencil of any quadrilateral"
        )
    spec = ap.spec
    allow_double = spec.is_finite and spec.p == 3

    if spec.is_finite:
        members = [pair for _, pair in ap.members()]
        crossing = [p for p in members if p.kind == CROSSING]
        parabolas = [p for p in members if p.kind in (PARALLEL, DOUBLE)]
        base = crossing[0]
        second = None
        if parabolas:
            ordered = [p for p in parabolas if p.kind == PARALLEL]
            ordered += [p for p in parabolas if p.kind == DOUBLE]
            second = _pick_parallel_partner(ordered, base, allow_double)
        if second is None:
            for cand in crossing[1:]:
                if cand.center != base.center:
                    second = cand
                    break
        if second is None:
            raise AssertionError("nontrivial pencil must yield a quadrilateral partner")
    else:
        base = ap.degenerate_hyperbola_pairs()[0]
        family = _rational_parallel_family(ap)
        second = None
        if family is not None:
            candidates = [family.pair_at(spec.scalar(r)) for r in range(0, 6)]
            ordered = [p for p in candidates if p.kind == PARALLEL]
            second = _pick_parallel_partner(ordered, base, allow_double=False)
            if second is None:
                raise AssertionError("a parallel family admits a disjoint parallel pair")
        else:
            pairs = ap.degenerate_hyperbola_pairs()
            if len(pairs) < 2 or pairs[0].center == pairs[1].center:
                raise AssertionError(
                    "a nontrivial pencil without parabolas has two centers"
                )
            second = pairs[1]

    q = validate(base, second)
    regenerated = pencil_of(q)
    if not nets_equal(regenerated, ap.pencil):
        raise AssertionError("extracted quadrilateral failed to regenerate the net")
    return q


def _rational_parallel_family(ap: AsymptoticPencil):
    """The parallel family of a degenerate parabola in the net, if one exists.

    Parabola directions are the rational zeros of the cubic's shift
    coefficient; such a direction contributes members exactly when the
    cubic's base also vanishes there, and then the member's constant shifts
    sweep a parallel family containing a double line.
    """
    from .conic import DEGEN_FAMILY, degenerations
    from .field import square_root
    from .pencil import combination

    spec = ap.spec
    q0, q1, q2 = ap.cubic.shift_coeff
    roots: list[tuple] = []
    if q2.is_zero:
        roots.append((spec.zero, spec.one))
    if not (q1.is_zero and q2.is_zero):
        # Solve q0 + q1 t + q2 t^2 = 0 for t = beta/alpha.
        if q2.is_zero:
            if not q1.is_zero:
                roots.append((spec.one, -q0 / q1))
        else:
            disc = square_root(q1 * q1 - 4 * q0 * q2)
            if disc is not None:
                two_q2 = q2 + q2
                roots.append((spec.one, (-q1 + disc) / two_q2))
                if not disc.is_zero:
                    roots.append((spec.one, (-q1 - disc) / two_q2))
    for alpha, beta in roots:
        if not ap.cubic.base_at(alpha, beta).is_zero:
            continue
        member = combination(ap.pencil, alpha, beta)
        d = degenerations(member)
        if d.kind != DEGEN_FAMILY:
            raise AssertionError("zero slope and zero base must give a family")
        return d.family
    return None


def bisects_quadrilateral(line: Line, q: Quadrilateral) -> Midpoint | None:
    """The common midpoint when the line bisects both opposite-side pairs."""
    from .bisector import bisects_set

    return bisects_set(line, [q.first.product(), q.second.product()])
