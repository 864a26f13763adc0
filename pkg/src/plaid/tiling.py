"""Tile assembly, loop tracing and the big polygon.

A unit square's edge is *good* when the closed edge carries exactly one
light point, where a light point at the midpoint of a horizontal edge counts
twice and a light point at a lattice corner (these occur only on the columns
x = 0 mod omega) counts once toward each of the two horizontal edges meeting
it.  Coherence (every square has 0 or 2 good edges) is inherited from the
underlying model and re-checked here; a violation is a hard failure.

The bulk constructor is vectorized with integer numpy arrays; a scalar
``tile_at`` path computes single squares at arbitrary coordinates (used for
window probes at parameters too large to tile densely).  Both paths share
the same conventions and are cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .grid import cap_scaled, is_light_value, mass_scaled
from .numtheory import EvenRational, tune

# edge bits
N, E, S, W = 1, 2, 4, 8
_EDGE_NAMES = {N: "N", E: "E", S: "S", W: "W"}
_STEP = {N: (0, 1), S: (0, -1), E: (1, 0), W: (-1, 0)}
_OPPOSITE = {N: S, S: N, E: W, W: E}

TILE_NAMES = {0: ""}
for _a in (N, E, S, W):
    for _b in (N, E, S, W):
        if _a < _b:
            TILE_NAMES[_a | _b] = _EDGE_NAMES[_a] + _EDGE_NAMES[_b]


class CoherenceError(AssertionError):
    """A unit square with an odd number of good edges: model violation."""


def _mass_arr(r: EvenRational, j: np.ndarray) -> np.ndarray:
    om = r.omega
    v = (2 * r.p * j + om) % (2 * om)
    return np.where(v > om, v - 2 * om, v)


def _light_arr(C: int, M: np.ndarray, om: int) -> np.ndarray:
    return (M != om) & (np.abs(M) < abs(C)) & (M * C > 0)


def v_edges_good(r: EvenRational, x0: int, b0: int, b1: int) -> np.ndarray:
    """Goodness of the vertical edges x = x0, y in [b, b+1] for b0 <= b < b1."""
    om = r.omega
    if x0 % om == 0:
        return np.zeros(b1 - b0, dtype=bool)
    C = cap_scaled(r, x0)
    f = (2 * r.p * x0) // om
    b = np.arange(b0, b1, dtype=np.int64)
    cnt = _light_arr(C, _mass_arr(r, b + f + 1), om).astype(np.int8)
    cnt += _light_arr(C, _mass_arr(r, (b - f) + 2 * x0), om)
    return cnt == 1


def h_edges_count(r: EvenRational, y0: int, a0: int, a1: int) -> np.ndarray:
    """Light-point counts of horizontal edges [a, a+1] x {y0} for a0 <= a < a1.

    Midpoint light points contribute 2, corner light points contribute 1 to
    each of the two incident edges.
    """
    om, p, q = r.omega, r.p, r.q
    C = cap_scaled(r, y0)
    n_seg = a1 - a0
    counts = np.zeros(n_seg, dtype=np.int16)
    if C == 0:
        return counts
    for den, step in ((2 * p, p), (2 * q, q)):
        # crossings at x = omega * t / den for integer t; t = step*u are the
        # double points shared by both slopes (u even: corner, u odd: midpoint)
        tlo = -((-den * a0) // om)
        thi = (den * a1) // om
        t = np.arange(tlo, thi + 1, dtype=np.int64)
        t = t[t % step != 0]
        lit = _light_arr(C, _mass_arr(r, y0 + t), om)
        seg = (om * t[lit]) // den - a0  # generic x is never an integer
        np.add.at(counts, seg[(seg >= 0) & (seg < n_seg)], 1)
    # shared double points, enumerated once: x = omega * u / 2
    ulo = -((-2 * a0) // om)
    uhi = (2 * a1) // om
    u = np.arange(ulo, uhi + 1, dtype=np.int64)
    if u.size:
        lit = _light_arr(C, _mass_arr(r, y0 + p * u), om)
        litq = _light_arr(C, _mass_arr(r, y0 + q * u), om)
        if not np.array_equal(lit, litq):  # both slopes must witness together
            raise CoherenceError(f"P/Q witness mismatch on line y={y0}")
        corner = u % 2 == 0
        xc = (om * u[lit & corner]) // 2
        for seg in (xc - a0, xc - 1 - a0):  # corner feeds both incident edges
            np.add.at(counts, seg[(seg >= 0) & (seg < n_seg)], 1)
        seg = (om * u[lit & ~corner]) // 2 - a0
        np.add.at(counts, seg[(seg >= 0) & (seg < n_seg)], 2)
    return counts


def h_edges_good(r: EvenRational, y0: int, a0: int, a1: int) -> np.ndarray:
    return h_edges_count(r, y0, a0, a1) == 1


@dataclass
class PlaidTiling:
    """Dense tile map over an integer rectangle [x0, x1] x [y0, y1]."""

    parameter: EvenRational
    x0: int
    y0: int
    tiles: np.ndarray  # uint8 edge bitmasks, shape (x1-x0, y1-y0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.tiles.shape

    def tile_bits(self, a: int, b: int) -> int:
        return int(self.tiles[a - self.x0, b - self.y0])

    def tile_name(self, a: int, b: int) -> str:
        return TILE_NAMES[self.tile_bits(a, b)]

    def nonempty_squares(self) -> list[tuple[int, int]]:
        xs, ys = np.nonzero(self.tiles)
        return [(int(a) + self.x0, int(b) + self.y0) for a, b in zip(xs, ys)]


def good_segments(r: EvenRational, square: tuple[int, int]) -> set[str]:
    """The good edges of one unit square, as a subset of {N, E, S, W}."""
    a, b = square
    bits = tile_bits_at(r, a, b)
    return {name for bit, name in _EDGE_NAMES.items() if bits & bit}


def tile_bits_at(r: EvenRational, a: int, b: int) -> int:
    """Edge bitmask of the square [a, a+1] x [b, b+1]; scalar exact path."""
    om = r.omega
    bits = 0
    if _h_count_scalar(r, b + 1, a) == 1:
        bits |= N
    if _h_count_scalar(r, b, a) == 1:
        bits |= S
    if _v_good_scalar(r, a, b):
        bits |= W
    if _v_good_scalar(r, a + 1, b):
        bits |= E
    n = bin(bits).count("1")
    if n not in (0, 2):
        raise CoherenceError(f"square ({a},{b}) of {r} has {n} good edges")
    return bits


def _v_good_scalar(r: EvenRational, x0: int, b: int) -> bool:
    om = r.omega
    if x0 % om == 0:
        return False
    C = cap_scaled(r, x0)
    f = (2 * r.p * x0) // om
    cnt = int(is_light_value(C, mass_scaled(r, b + f + 1), om))
    cnt += int(is_light_value(C, mass_scaled(r, (b - f) + 2 * x0), om))
    return cnt == 1


def _h_count_scalar(r: EvenRational, y0: int, a: int) -> int:
    om, p, q = r.omega, r.p, r.q
    C = cap_scaled(r, y0)
    if C == 0:
        return 0
    cnt = 0
    for den, step in ((2 * p, p), (2 * q, q)):
        tlo = -((-den * a) // om)
        thi = (den * (a + 1)) // om
        for t in range(tlo, thi + 1):
            if t % step == 0:
                continue  # shared double points handled below
            if is_light_value(C, mass_scaled(r, y0 + t), om):
                cnt += 1
    ulo = -((-2 * a) // om)
    uhi = (2 * (a + 1)) // om
    for u in range(ulo, uhi + 1):
        if not is_light_value(C, mass_scaled(r, y0 + p * u), om):
            continue
        cnt += 2 if u % 2 else 1  # midpoint twice; corner once per incident edge
    return cnt


def build_tiling(r: EvenRational, x0: int, x1: int, y0: int, y1: int) -> PlaidTiling:
    """Tiles for all unit squares [a, a+1] x [b, b+1], a in [x0, x1), b in [y0, y1)."""
    w, h = x1 - x0, y1 - y0
    hgood = np.zeros((w, h + 1), dtype=bool)
    for y in range(y0, y1 + 1):
        hgood[:, y - y0] = h_edges_good(r, y, x0, x1)
    vgood = np.zeros((w + 1, h), dtype=bool)
    for x in range(x0, x1 + 1):
        vgood[x - x0, :] = v_edges_good(r, x, y0, y1)
    tiles = (hgood[:, 1:] * N + hgood[:, :-1] * S
             + vgood[1:, :] * E + vgood[:-1, :] * W).astype(np.uint8)
    degree = (hgood[:, 1:].astype(np.int8) + hgood[:, :-1]
              + vgood[1:, :] + vgood[:-1, :])
    bad = np.argwhere((degree != 0) & (degree != 2))
    if bad.size:
        a, b = bad[0]
        raise CoherenceError(
            f"square ({a + x0},{b + y0}) of {r} has {int(degree[a, b])} good edges")
    return PlaidTiling(r, x0, y0, tiles)


def first_block_tiling(r: EvenRational) -> PlaidTiling:
    return build_tiling(r, 0, r.omega, 0, r.omega)


# ---------------------------------------------------------------------------
# Loop tracing
# ---------------------------------------------------------------------------

@dataclass
class PlaidPolygon:
    """A closed loop of connectors, stored as the cyclic list of square centers."""

    parameter: EvenRational
    squares: list[tuple[int, int]]  # cyclic; consecutive squares share a good edge
    closed: bool = True

    def __len__(self):
        return len(self.squares)

    def center_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.squares)

    def x_extent(self) -> tuple[Fraction, Fraction]:
        """Exact x-range of the drawn curve (centers and crossed edge midpoints)."""
        xs = [Fraction(2 * a + 1, 2) for a, _ in self.squares]
        for (a1, b1), (a2, b2) in self._edges():
            if a1 != a2:  # horizontal step crosses the shared vertical edge
                xs.append(Fraction(max(a1, a2)))
        return min(xs), max(xs)

    def x_diameter(self) -> Fraction:
        lo, hi = self.x_extent()
        return hi - lo

    def y_extent(self) -> tuple[Fraction, Fraction]:
        ys = [Fraction(2 * b + 1, 2) for _, b in self.squares]
        for (a1, b1), (a2, b2) in self._edges():
            if b1 != b2:
                ys.append(Fraction(max(b1, b2)))
        return min(ys), max(ys)

    def y_diameter(self) -> Fraction:
        lo, hi = self.y_extent()
        return hi - lo

    def _edges(self):
        n = len(self.squares)
        for i in range(n if self.closed else n - 1):
            yield self.squares[i], self.squares[(i + 1) % n]

    def anchors(self, column: int = 0) -> list[tuple[Fraction, int]]:
        """Points (column + 1/2, m) where the loop crosses a horizontal edge."""
        out = set()
        for (a1, b1), (a2, b2) in self._edges():
            if a1 == a2 == column and b1 != b2:
                out.add((Fraction(2 * column + 1, 2), max(b1, b2)))
        return sorted(out, key=lambda t: t[1])

    def crossings_of_vertical(self, x: int) -> int:
        return sum(1 for (a1, _), (a2, _) in self._edges() if {a1, a2} == {x - 1, x})


def trace_polygons(tiling: PlaidTiling) -> list[PlaidPolygon]:
    """All loops in the region, traced deterministically.

    Tracing starts from the lexicographically least untraced square, leaving
    through the least good edge in N < E < S < W order.  Paths that reach the
    region boundary are returned with ``closed=False``.
    """
    r = tiling.parameter
    w, h = tiling.shape
    seen = np.zeros((w, h), dtype=bool)
    loops = []
    order = (N, E, S, W)
    for a0 in range(w):
        for b0 in range(h):
            if seen[a0, b0] or not tiling.tiles[a0, b0]:
                continue
            squares = [(a0, b0)]
            seen[a0, b0] = True
            bits = int(tiling.tiles[a0, b0])
            exit_edge = next(e for e in order if bits & e)
            closed = True
            a, b = a0, b0
            while True:
                da, db = _STEP[exit_edge]
                a, b = a + da, b + db
                if not (0 <= a < w and 0 <= b < h):
                    closed = False
                    # walk the other way from the start to capture the tail
                    squares = _extend_backwards(tiling, squares, seen)
                    break
                entry = _OPPOSITE[exit_edge]
                bits = int(tiling.tiles[a, b])
                if not bits & entry:
                    raise CoherenceError(
                        f"connector mismatch entering ({a + tiling.x0},{b + tiling.y0})")
                if (a, b) == (a0, b0):
                    break
                squares.append((a, b))
                seen[a, b] = True
                exit_edge = bits & ~entry
                if exit_edge not in _STEP:
                    raise CoherenceError(f"square ({a},{b}) lacks a unique exit")
            loops.append(PlaidPolygon(
                r, [(a + tiling.x0, b + tiling.y0) for a, b in squares], closed))
    return loops


def _extend_backwards(tiling: PlaidTiling, squares, seen):
    """Continue an open path from its first square in the opposite direction."""
    w, h = tiling.shape
    rev = []
    a0, b0 = squares[0]
    a, b = a0 - tiling.x0, b0 - tiling.y0
    bits = int(tiling.tiles[a, b])
    order = (N, E, S, W)
    used = next(e for e in order if bits & e)
    exit_edge = bits & ~used
    while exit_edge in _STEP:
        da, db = _STEP[exit_edge]
        a, b = a + da, b + db
        if not (0 <= a < w and 0 <= b < h):
            break
        entry = _OPPOSITE[exit_edge]
        bits = int(tiling.tiles[a, b])
        if not bits & entry:
            raise CoherenceError("connector mismatch while back-tracing")
        rev.append((a, b))
        seen[a, b] = True
        exit_edge = bits & ~entry
    rev.reverse()
    return [(a + tiling.x0, b + tiling.y0) for a, b in rev] + squares


def big_polygon(r: EvenRational, tiling: PlaidTiling | None = None) -> PlaidPolygon:
    """The distinguished loop through the positive capacity-2 horizontal line.

    Asserts the x-diameter bound omega^2/(2q) - 1 and the bilateral symmetry
    about the horizontal midline of the first block.
    """
    t = tune(r)
    y_plus = t.tau if t.sign_choice > 0 else r.omega - t.tau
    if tiling is None:
        tiling = first_block_tiling(r)
    loops = trace_polygons(tiling)
    target = None
    for loop in loops:
        if any(a1 == a2 == 0 and {b1, b2} == {y_plus - 1, y_plus}
               for (a1, b1), (a2, b2) in loop._edges()):
            target = loop
            break
    if target is None:
        raise AssertionError(f"no loop crosses (1/2, {y_plus}) for {r}")
    if target.x_diameter() < Fraction(r.omega ** 2, 2 * r.q) - 1:
        raise AssertionError(f"big polygon of {r} is too narrow")
    mirrored = frozenset((a, r.omega - 1 - b) for a, b in target.squares)
    if mirrored != target.center_set():
        raise AssertionError(f"big polygon of {r} is not bilaterally symmetric")
    return target
