"""The four line families and the light/dark classification.

All line invariants are stored as omega-scaled integers so every comparison
is integer arithmetic:

* capacity lines (horizontal y = n, vertical x = n):
  ``C = [4*p*n] mod 2*omega`` normalized into (-omega, omega); even.
* slanting lines of negative slope through (0, j) (one of slope -P and one
  of slope -Q per integer j): ``M = [2*p*j + omega] mod 2*omega`` normalized
  into (-omega, omega]; odd.  M == +omega marks an inert line (mass omega,
  no sign).  The positive-slope mirror lines carry the same mass with the
  opposite sign.

A point z where an H/V line meets a negative-slope line is *light* when
|M| < |C| and M*C > 0, evaluated for some negative-slope line through z.
Intersections with the positive-slope families never witness lightness;
they only enter the sign bookkeeping of the vertical-compatibility check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numtheory import EvenRational

FAMILIES = ("H", "V", "P-", "P+", "Q-", "Q+")


def cap_scaled(r: EvenRational, n: int) -> int:
    """omega * F_cap of the H or V line at integer coordinate n; in (-omega, omega)."""
    om = r.omega
    v = (4 * r.p * n) % (2 * om)
    return v - 2 * om if v > om else v


def mass_scaled(r: EvenRational, j: int) -> int:
    """omega * F of the negative-slope lines through (0, j); in (-omega, omega]."""
    om = r.omega
    v = (2 * r.p * j + om) % (2 * om)
    return v - 2 * om if v > om else v


def is_inert(r: EvenRational, j: int) -> bool:
    return j % r.omega == 0


def is_light_value(C: int, M: int, omega: int) -> bool:
    """Eq.-style light test on scaled values (inert witnesses never light)."""
    return M != omega and abs(M) < abs(C) and M * C > 0


@dataclass(frozen=True)
class GridLine:
    family: str  # one of FAMILIES
    intercept: int  # y-intercept (x-intercept for V lines)
    parameter: EvenRational

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def f_scaled(self) -> int:
        """omega * F on this line, signed; +omega for inert slanting lines."""
        r, n = self.parameter, self.intercept
        if self.family in ("H", "V"):
            return cap_scaled(r, n)
        m = mass_scaled(r, n)
        if self.family.endswith("+") and m != r.omega:
            m = -m
        return m

    def capacity_or_mass(self) -> int:
        return abs(self.f_scaled())

    def sign(self) -> int:
        v = self.f_scaled()
        if self.family not in ("H", "V") and abs(v) == self.parameter.omega:
            return 0  # inert
        return (v > 0) - (v < 0)

    @property
    def inert(self) -> bool:
        return self.family not in ("H", "V") and self.capacity_or_mass() == self.parameter.omega


def f_value(family: str, r: EvenRational, point) -> int:
    """omega-scaled value of the family's adapted function at an exact point.

    The value must land on the (1/omega)-grid (it does at every point of a
    line of the family); otherwise a precision error is raised so the caller
    can pre-clear denominators.
    """
    x, y = Fraction(point[0]), Fraction(point[1])
    om = r.omega
    P, Q = r.big_p, r.big_q
    if family == "H":
        raw = 2 * P * y
    elif family == "V":
        raw = 2 * P * x
    elif family in ("P-", "P+"):
        raw = (-P if family == "P+" else P) * y + P * P * x + 1
    elif family in ("Q-", "Q+"):
        raw = (-P if family == "Q+" else P) * y + P * Q * x + 1
    else:
        raise ValueError(f"unknown family {family!r}")
    scaled = raw * om
    if scaled.denominator != 1:
        raise ValueError(f"F_{family}{point} = {raw} does not lie on the 1/omega grid")
    v = int(scaled) % (2 * om)
    v = v - 2 * om if v > om else v
    if family in ("H", "V"):
        return v  # even, in (-omega, omega)
    return v if v != -om else om  # odd, in (-omega, omega]; +omega marks inert


def line_invariants(line: GridLine) -> tuple[int, int]:
    """(capacity-or-mass, sign); inert lines report (omega, 0)."""
    return line.capacity_or_mass(), line.sign()


def anchor_lines(r: EvenRational, k: int) -> dict:
    """Positions of the capacity-2k lines and the mass-(2k+1)-ish anchors.

    Capacity-2k H and V lines sit at coordinate +-k*tau mod omega; the
    slanting lines of mass m sit at y-intercepts +-m*tau mod omega (odd m).
    Cross-checked against direct invariant computation.
    """
    from .numtheory import tune
    om, t = r.omega, tune(r).tau
    out: dict = {}
    if k < 0 or 2 * k >= om:
        raise ValueError("capacity 2k must lie in [0, omega-1]")
    xs = sorted({(k * t) % om, (-k * t) % om})
    for x in xs:
        if abs(cap_scaled(r, x)) != 2 * k:
            raise AssertionError(f"capacity anchor failed at {x}")
    out["capacity"] = {"value": 2 * k, "coordinates": xs}
    m = 2 * k + 1
    if m <= om:
        js = sorted({(m * t) % om, (-m * t) % om})
        for j in js:
            if abs(mass_scaled(r, j)) != m and not is_inert(r, j):
                raise AssertionError(f"mass anchor failed at {j}")
        out["mass"] = {"value": m, "intercepts": js}
    return out


# ---------------------------------------------------------------------------
# Intersection points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionPoint:
    x: Fraction
    y: Fraction
    lines: tuple[GridLine, ...]
    shade: str  # 'light' | 'dark'
    point_type: str  # 'P' | 'Q' | 'both'
    double_counted: bool


def classify_intersection(r: EvenRational, axis_line: GridLine,
                          slant_line: GridLine) -> IntersectionPoint:
    """Classify the crossing of an H/V line with a negative-slope line.

    Lightness is decided by *all* negative-slope lines through the point, so
    triple points (block corners, horizontal midpoints) are classified once.
    """
    if axis_line.family not in ("H", "V") or slant_line.family not in ("P-", "Q-"):
        raise ValueError("need an H/V line and a negative-slope slanting line")
    om = r.omega
    n, j = axis_line.intercept, slant_line.intercept
    slope_num = 2 * r.p if slant_line.family == "P-" else 2 * r.q
    if axis_line.family == "H":
        # y = n on  y = -(slope_num/om) x + j  =>  x = om (j - n) / slope_num
        x = Fraction(om * (j - n), slope_num)
        y = Fraction(n)
    else:
        x = Fraction(n)
        y = Fraction(j * om - slope_num * n, om)
    C = axis_line.f_scaled()
    witnesses = [(slant_line.family, j)]
    point_type = slant_line.family[0]
    double = False
    if axis_line.family == "H":
        # companion negative line of the other slope through the same point
        other = 2 * r.q if slant_line.family == "P-" else 2 * r.p
        shift = x * other / om
        if shift.denominator == 1:
            fam2 = "Q-" if slant_line.family == "P-" else "P-"
            witnesses.append((fam2, n + int(shift)))
            point_type = "both"
        double = x.denominator == 2
    light = any(is_light_value(C, mass_scaled(r, jj), om) for _, jj in witnesses)
    lines = (axis_line,) + tuple(GridLine(f, jj, r) for f, jj in witnesses)
    return IntersectionPoint(x, y, lines, "light" if light else "dark",
                             point_type, double and light)


def vertical_partner_intercept(x0: int, j: int, primary: str) -> tuple[str, int]:
    """Partner positive-slope line at a vertical intersection point.

    The crossing of the V line x = x0 with P-(j) also lies on Q+(j - 2*x0);
    the crossing with Q-(j) also lies on P+(j - 2*x0).
    """
    if primary == "P-":
        return "Q+", j - 2 * x0
    if primary == "Q-":
        return "P+", j - 2 * x0
    raise ValueError("primary must be 'P-' or 'Q-'")


def classify_point(r: EvenRational, x, y, axis: str | None = None) -> IntersectionPoint:
    """Classify an intersection point given by coordinates.

    Locates the negative-slope line(s) through (x, y) and the H or V line,
    then defers to :func:`classify_intersection`.  Raises if the point is not
    an intersection of an H/V line with a slanting line.
    """
    x, y = Fraction(x), Fraction(y)
    slants = []
    for fam, slope_num in (("P-", 2 * r.p), ("Q-", 2 * r.q)):
        j = y + Fraction(slope_num, r.omega) * x
        if j.denominator == 1:
            slants.append((fam, int(j)))
    if not slants:
        raise ValueError(f"({x}, {y}) lies on no slanting grid line")
    if axis is None:
        axis = "H" if y.denominator == 1 else "V"
    if axis == "H":
        if y.denominator != 1:
            raise ValueError(f"({x}, {y}) is not on a horizontal grid line")
        axis_line = GridLine("H", int(y), r)
    else:
        if x.denominator != 1:
            raise ValueError(f"({x}, {y}) is not on a vertical grid line")
        axis_line = GridLine("V", int(x), r)
    return classify_intersection(r, axis_line, GridLine(slants[0][0], slants[0][1], r))


def vertical_lemma_check(r: EvenRational, x0: int, j: int, primary: str = "P-") -> bool:
    """Check sign-criterion consistency at one vertical intersection point.

    The point is the crossing of the V line x = x0 with the negative-slope
    line through (0, j).  Returns True when the light/dark classification via
    the scaled-value inequality agrees with the three-equal-signs criterion,
    and the adapted-function identity F(P-) + F(Q+) = F(V) holds.  For inert
    points the two-branch dichotomy is validated instead.
    """
    om = r.omega
    C = cap_scaled(r, x0)
    M = mass_scaled(r, j)
    _, partner_j = vertical_partner_intercept(x0, j, primary)
    Mp = mass_scaled(r, partner_j)
    # adapted-function identity: F(negative line) + F(partner) = F(V) mod 2
    if (M - Mp) % (2 * om) != C % (2 * om):
        return False
    if M == om or Mp == om:  # inert point: the dichotomy
        if x0 % om == 0:
            return M == om and Mp == om
        other = -Mp if Mp != om else M  # sign of the non-inert slanting line
        if M == om and Mp == om:
            return False
        return other * C < 0
    light_ineq = is_light_value(C, M, om)
    partner_sign = -((Mp > 0) - (Mp < 0))  # sign of the positive-slope partner line
    same_signs = C != 0 and (M > 0) == (C > 0) and (partner_sign > 0) == (C > 0)
    if light_ineq != same_signs:
        return False
    # the partner's own light test must agree as well
    light_via_partner = is_light_value(C, -Mp, om)
    return light_via_partner == light_ineq
