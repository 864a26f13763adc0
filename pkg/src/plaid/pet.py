"""The classifying space, curve-following dynamics, and limit experiments.

Points of the classifying space carry coordinates (P, T, U1, U2) with T in
[-2, 2) and U1, U2 in [-1, 1), reduced modulo the lattice generated by
(0, 4, 2P, 2P), (0, 0, 2, 0) and (0, 0, 0, 2).  All coordinates are exact:
Fractions for rational parameters, quadratic field elements otherwise.

For rational parameters the region labels of the (out-of-scope) exact
partition are recovered from the plaid tiles themselves; orbits follow the
directed connectors while the translation dynamics is verified step by step
against the classifying map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import QuadRat, QuadraticTarget, floor_exact, mod_interval
from .numtheory import EvenRational, tune
from .tiling import TILE_NAMES, tile_bits_at
from .tiling import N as _N, E as _E, S as _S, W as _W

_DIR_STEP = {"N": (0, 1), "S": (0, -1), "E": (1, 0), "W": (-1, 0)}
_BIT_OF = {"N": _N, "E": _E, "S": _S, "W": _W}


@dataclass(frozen=True)
class PetPoint:
    P: object  # Fraction or QuadRat
    T: object
    U1: object
    U2: object

    def coords(self):
        return (self.T, self.U1, self.U2)

    def __eq__(self, other):
        return (isinstance(other, PetPoint) and self.P == other.P
                and self.T == other.T and self.U1 == other.U1
                and self.U2 == other.U2)

    def __hash__(self):
        return hash((str(self.P), str(self.T), str(self.U1), str(self.U2)))


def reduce_point(P, T, U1, U2) -> PetPoint:
    """Reduce into the fundamental domain [-2,2) x [-1,1)^2."""
    if isinstance(T, QuadRat):
        k = ((T + 2) / 4).__floor__()
    else:
        k = floor_exact(Fraction(T + 2, 4))
    T = T - 4 * k
    U1 = U1 - 2 * P * k
    U2 = U2 - 2 * P * k
    U1 = mod_interval(U1, 2, -1)
    U2 = mod_interval(U2, 2, -1)
    return PetPoint(P, T, U1, U2)


def classify(P, x, y) -> PetPoint:
    """The classifying map (P, 2Px + 2y, 2Px, 2Px + 2Py) mod the lattice."""
    two_px = 2 * P * x
    return reduce_point(P, two_px + 2 * y, two_px, two_px + 2 * P * y)


def classify_raw(P, x, y):
    """Unreduced classifying coordinates (T, U1, U2)."""
    two_px = 2 * P * x
    return (two_px + 2 * y, two_px, two_px + 2 * P * y)


def follow(direction: str, pt: PetPoint) -> PetPoint:
    """The curve-following translations, one per exit direction.

    Conjugate to the unit shifts of the plane through the classifying map:
    following an S-exit lands on the image of the square one step south, etc.
    The empty-tile map is the identity.
    """
    P, T, U1, U2 = pt.P, pt.T, pt.U1, pt.U2
    if direction == "S":
        return reduce_point(P, T - 2, U1, U2 - 2 * P)
    if direction == "N":
        return reduce_point(P, T + 2, U1, U2 + 2 * P)
    if direction == "E":
        return reduce_point(P, T + 2 * P, U1 + 2 * P, U2 + 2 * P)
    if direction == "W":
        return reduce_point(P, T - 2 * P, U1 - 2 * P, U2 - 2 * P)
    if direction == "empty":
        return pt
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# Good offsets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Offset:
    v1: object
    v2: object
    v3: object


def in_q_of_p(x, P) -> bool | None:
    """Membership of x in Q[P] = {r1 + r2*P}; None when undecidable here.

    For an irrational quadratic P the set Q[P] is the full field Q(sqrt(d)),
    so membership reduces to comparing radicands.
    """
    if isinstance(x, (int, Fraction)):
        return True
    if isinstance(x, QuadRat):
        if x.is_rational:
            return True
        if isinstance(P, QuadRat) and not P.is_rational:
            return x.d == P.d
        return False
    return None


def good_offset(v: Offset | tuple, P) -> str:
    """'good' | 'bad' | 'undetermined' per the offset criterion.

    Rational parameters always report 'bad' (wall hits occur); for quadratic
    irrational parameters the criterion certifies 'good' when V1 lies in
    Q[P] while V2 and V3 do not.  Inputs outside the decidable classes give
    'undetermined'.
    """
    if isinstance(v, tuple):
        v = Offset(*v)
    if isinstance(P, QuadraticTarget):
        P = P.big_p()
    rational_p = isinstance(P, (int, Fraction)) or (
        isinstance(P, QuadRat) and P.is_rational)
    if rational_p:
        return "bad"
    m1, m2, m3 = (in_q_of_p(x, P) for x in (v.v1, v.v2, v.v3))
    if m1 is None or m2 is None or m3 is None:
        return "undetermined"
    if m1 and not m2 and not m3:
        return "good"
    return "undetermined"


# ---------------------------------------------------------------------------
# Orbits at rational parameters
# ---------------------------------------------------------------------------

@dataclass
class OrbitResult:
    start: tuple[int, int]
    steps: list[dict]
    closed: bool
    period: int | None
    truncated: bool = False
    reason: str | None = None

    def squares(self) -> list[tuple[int, int]]:
        return [self.start] + [s["square"] for s in self.steps]


_EXIT_ORDER = ("N", "E", "S", "W")


def _exits(bits: int) -> list[str]:
    return [d for d in _EXIT_ORDER if bits & _BIT_OF[d]]


def orbit(r: EvenRational, c0: tuple[int, int], max_steps: int | None = None,
          offset: Offset | None = None) -> OrbitResult:
    """Follow the directed connectors from the square c0, verifying the
    translation dynamics against the classifying map at every step.

    Only the rational, zero-offset case has decidable region labels (the
    plaid tiles themselves); any other request returns a truncated result.
    """
    if offset is not None and any(x != 0 for x in (offset.v1, offset.v2, offset.v3)):
        return OrbitResult(c0, [], False, None, truncated=True,
                           reason="nonzero offsets have no label oracle")
    P = r.big_p
    a, b = c0
    bits = tile_bits_at(r, a, b)
    if bits == 0:
        # empty tile: the identity map fixes the point
        pt = classify(P, Fraction(2 * a + 1, 2), Fraction(2 * b + 1, 2))
        assert follow("empty", pt) == pt
        return OrbitResult(c0, [], True, 0)
    direction = _exits(bits)[0]
    if max_steps is None:
        max_steps = 4 * r.omega ** 2
    steps = []
    state0 = (a, b, direction)
    pt = classify(P, Fraction(2 * a + 1, 2), Fraction(2 * b + 1, 2))
    opposite = {"N": "S", "S": "N", "E": "W", "W": "E"}
    for _ in range(max_steps):
        taken = direction
        da, db = _DIR_STEP[taken]
        a, b = a + da, b + db
        pt = follow(taken, pt)
        if pt != classify(P, Fraction(2 * a + 1, 2), Fraction(2 * b + 1, 2)):
            raise AssertionError(
                f"translation dynamics and classifying map disagree at ({a},{b})")
        bits = tile_bits_at(r, a, b)
        entry = opposite[taken]
        if not bits & _BIT_OF[entry]:
            raise AssertionError(f"orbit entered ({a},{b}) through a closed edge")
        exit_bits = bits & ~_BIT_OF[entry]
        direction = next(d for d in _EXIT_ORDER if exit_bits & _BIT_OF[d])
        steps.append({"dir": taken, "square": (a, b)})
        if (a, b, direction) == state0:
            return OrbitResult(c0, steps, True, len(steps))
    return OrbitResult(c0, steps, False, None, truncated=True,
                       reason="max_steps reached")


# ---------------------------------------------------------------------------
# Fiber reconstruction at rational parameters
# ---------------------------------------------------------------------------

@dataclass
class FiberGridReport:
    parameter: EvenRational
    t_value: object
    points: dict  # (U1, U2) -> label
    u1_cells: list  # 4 circular coordinate arcs [first, last] when grid_ok
    u2_cells: list
    grid_ok: bool
    labels: list  # 4x4 label matrix (row = U2 cell, col = U1 cell)
    reason: str | None = None


def _forced_cuts(coords, points, axis):
    """Gaps (i, i+1 mod n) where adjacent coordinate lines must be separated."""
    n = len(coords)
    cuts = set()
    by_axis: dict = {}
    for (u, v), label in points.items():
        c, o = (u, v) if axis == 0 else (v, u)
        by_axis.setdefault(c, {})[o] = label
    for i in range(n):
        a, b = coords[i], coords[(i + 1) % n]
        ra, rb = by_axis[a], by_axis[b]
        if any(ra[o] != rb[o] for o in ra.keys() & rb.keys()):
            cuts.add(i)
    return cuts


def _consistent(points, coords1, coords2, cuts1, cuts2):
    """Do the cut choices make every resulting cell single-labeled?"""

    def group_index(coords, cuts):
        if not cuts:
            return {c: 0 for c in coords}
        idx, g = {}, 0
        start = min(cuts)
        order = list(range(start + 1, len(coords))) + list(range(0, start + 1))
        for i in order:
            idx[coords[i]] = g
            if i in cuts:
                g += 1
        return idx

    g1 = group_index(coords1, cuts1)
    g2 = group_index(coords2, cuts2)
    cell_label: dict = {}
    for (u, v), label in points.items():
        key = (g1[u], g2[v])
        if cell_label.setdefault(key, label) != label:
            return None
    return g1, g2, cell_label


def reconstruct_fiber_grid(r: EvenRational, t_value, min_samples: int = 10000
                           ) -> FiberGridReport:
    """Sample tile centers landing on one (U1, U2) fiber and recover the
    4 x 4 rectangle structure of the region partition there.

    The fiber is a torus, so cells are circular arcs of the finitely many
    observed coordinates.  Adjacent coordinates with conflicting labels force
    a wall between them; remaining walls are completed by a small search and
    the reconstruction succeeds when some choice of 4 + 4 circular cuts makes
    every cell single-labeled.
    """
    from itertools import combinations
    P = r.big_p
    t_value = Fraction(t_value) if not isinstance(t_value, QuadRat) else t_value
    om = r.omega
    points: dict[tuple, str] = {}
    half = Fraction(1, 2)
    # the reduced image is (omega^2, omega)-periodic in the center grid, so a
    # wider sweep only revisits fiber points (which doubles as a label check)
    n_cols = max(om * om, -(-min_samples // om))
    for a in range(n_cols):
        for b in range(om):
            pt = classify(P, a + half, b + half)
            if pt.T != t_value:
                continue
            label = TILE_NAMES[tile_bits_at(r, a, b)] or "empty"
            key = (pt.U1, pt.U2)
            if key in points and points[key] != label:
                raise AssertionError(
                    f"fiber point {key} received labels {points[key]} and {label}")
            points[key] = label
    if not points:
        return FiberGridReport(r, t_value, points, [], [], False, [],
                               reason="empty fiber")
    u1s = sorted({u for u, _ in points})
    u2s = sorted({v for _, v in points})
    forced1 = _forced_cuts(u1s, points, 0)
    forced2 = _forced_cuts(u2s, points, 1)
    if len(forced1) > 4 or len(forced2) > 4:
        return FiberGridReport(r, t_value, points, [], [], False, [],
                               reason=f"{len(forced1)}x{len(forced2)} walls forced")

    # complete the forced cuts to at most 4 per axis; unused cut budget goes
    # to cells the finite fiber never samples (small parameters)
    def completions(coords, forced):
        free = [i for i in range(len(coords)) if i not in forced]
        for k in range(4 - len(forced), -1, -1):
            for extra in combinations(free, k):
                yield forced | set(extra)

    best = None
    for cuts1 in completions(u1s, forced1):
        for cuts2 in completions(u2s, forced2):
            res = _consistent(points, u1s, u2s, cuts1, cuts2)
            if res is not None:
                best = (cuts1, cuts2, res)
                break
        if best:
            break
    if best is None:
        return FiberGridReport(r, t_value, points, [], [], False, [],
                               reason="no consistent 4x4 cut completion")
    cuts1, cuts2, (g1, g2, cell_label) = best

    def arcs(coords, idx):
        groups: dict[int, list] = {}
        for c in coords:
            groups.setdefault(idx[c], []).append(c)
        return [[min(g), max(g)] for _, g in sorted(groups.items())]

    n1, n2 = len(set(g1.values())), len(set(g2.values()))
    labels = [[cell_label.get((i, j), "unknown") for i in range(n1)]
              for j in range(n2)]
    return FiberGridReport(r, t_value, points, arcs(u1s, g1), arcs(u2s, g2),
                           True, labels)


# ---------------------------------------------------------------------------
# Finite geometric-limit experiments
# ---------------------------------------------------------------------------

@dataclass
class LimitReport:
    prefix: tuple[int, ...]
    window: int
    depths: list[int]
    stable_from: int | None
    anchors: list[int]
    deltas: list  # [P d_k]_2 values along the chain
    cluster: list  # developed partial-sum spread


def window_tiles(r: EvenRational, cx: int, cy: int, w: int) -> dict:
    """Tile names of the squares within w of (cx, cy); exact at any size."""
    out = {}
    for da in range(-w, w):
        for db in range(-w, w):
            out[(da, db)] = tile_bits_at(r, cx + da, cy + db)
    return out


def limit_experiment(target: QuadraticTarget, epsilon_prefix: tuple[int, ...],
                     window: int = 10, depth: int | None = None) -> LimitReport:
    """Translated-window stabilization along the approximating chain.

    Builds the tilings of successive approximating terms, re-centered at the
    prefix-selected anchor height, and reports from which chain depth onward
    the window tiling stops changing.
    """
    from .copying import observed_branch
    from .numtheory import approximating_sequence
    if depth is None:
        depth = len(epsilon_prefix) + 4
    # grow q_max until the chain supplies enough approximating terms
    q_max = 64
    terms = []
    while len(terms) < depth + 1:
        chain = approximating_sequence(target, q_max)
        terms = chain.approximating_terms(include_target=False)
        q_max *= 4
        if q_max > 10 ** 9:
            raise ValueError("chain depth unreachable for this target")
    terms = terms[:depth + 1]
    P = target.big_p()
    ds, shifts, deltas = [], [], []
    for r0, r1 in zip(terms, terms[1:]):
        _, t = observed_branch(r0, r1)
        d = r1.omega - r0.omega - 2 * t
        ds.append(d)
        shifts.append(t)
        deltas.append(mod_interval(P * d, 2, -1))
    # the bottom-path anchor of the nested realization sits at the composed
    # child shifts above the first term's low anchor; the binary prefix picks
    # sibling branches, each adding its translation length
    anchors, windows, depths = [], [], []
    for n in range(1, len(terms)):
        y = (tune(terms[0]).tau + sum(shifts[:n])
             + sum(e * d for e, d in zip(epsilon_prefix, ds[:n])))
        anchors.append(y)
        windows.append(window_tiles(terms[n], 0, y, window))
        depths.append(n)
    stable_from = None
    for i in range(len(windows)):
        if all(windows[j] == windows[i] for j in range(i, len(windows))):
            stable_from = depths[i]
            break
    # developed binary cluster of the partial sums of the deltas
    sums = {P * 0}
    for d in deltas[:12]:
        sums |= {s + d for s in sums}
    cluster = sorted(sums)
    return LimitReport(tuple(epsilon_prefix), window, depths, stable_from,
                       anchors, deltas, cluster)
