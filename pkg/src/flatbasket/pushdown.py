"""Rectilinear band diagrams and push-down flattening.

A normal-form Seifert surface is a disk below the baseline y = 0 with
untwisted bands attached at feet on the baseline; each band core projects to
an axis-parallel lattice path that starts and ends on the baseline, with all
horizontal segments (x-lines) at distinct heights, all vertical segments
(y-lines) in distinct columns, and every crossing a transverse interior one
with the x-line on top.

An x-line endpoint *ascends* when the adjacent y-line continues upward and
*descends* otherwise.  A band whose every x-line has two descending ends is
a stack of arches and can be pushed into pages, so the surface is a flat
plumbing basket once every x-line is "flat".  The push-down surgery removes
an x-line interval next to an ascending end, drops the two cut ends to new
feet, and reconnects them with a connector band routed behind the disk just
outside the cut (local foot pattern: connector, left piece, right piece,
connector).  Each surgery adds two bands (genus +1), keeps the boundary
link, and strictly decreases the number of ascending ends, so flattening
terminates.

New feet are placed at fresh fractional columns; only the left-to-right
order of feet matters for the resulting code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .codes import FlatBasketCode
from .errors import (
    DuplicateColumn,
    DuplicateHeight,
    EndpointCrossing,
    FootOrderViolation,
    MalformedDiagram,
    SiteNotEligible,
)

__all__ = [
    "RectilinearDiagram",
    "Connector",
    "XLineClass",
    "PushStep",
    "FlattenResult",
    "parse_diagram",
    "load_diagram",
    "diagram_to_text",
    "validate_diagram",
    "classify_xlines",
    "push_down",
    "flatten",
    "flatten_trace",
    "read_off_code",
    "diagram_seifert_matrix",
    "code_to_flat_diagram",
    "diagram_boundary_components",
    "diagram_euler",
]

Vertex = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Connector:
    """Rear band: an arc behind the disk joining two baseline feet."""

    left: Fraction
    right: Fraction


@dataclass(frozen=True)
class RectilinearDiagram:
    """Front band paths plus any connectors created by push-downs."""

    bands: tuple[tuple[Vertex, ...], ...]
    connectors: tuple[Connector, ...] = ()

    def __post_init__(self):
        bands = tuple(
            tuple((Fraction(x), Fraction(y)) for x, y in band) for band in self.bands
        )
        object.__setattr__(self, "bands", bands)
        object.__setattr__(self, "connectors", tuple(self.connectors))

    @property
    def band_count(self) -> int:
        return len(self.bands) + len(self.connectors)


@dataclass(frozen=True)
class XLineClass:
    """Adjacency classification of one x-line."""

    band: int
    height: Fraction
    left: str   # "ascends" | "descends"
    right: str

    @property
    def flat(self) -> bool:
        return self.left == "descends" and self.right == "descends"


@dataclass(frozen=True)
class _XLine:
    band: int
    seg: int          # segment index within the band path
    y: Fraction
    x_left: Fraction
    x_right: Fraction
    left_ascends: bool
    right_ascends: bool


@dataclass(frozen=True)
class PushStep:
    """Bookkeeping for one push-down, used by traces and invariant tests."""

    height: Fraction
    interval: tuple[Fraction, Fraction]
    euler_before: int
    euler_after: int
    boundary_before: int
    boundary_after: int
    ascending_before: int
    ascending_after: int


@dataclass(frozen=True)
class FlattenResult:
    code: FlatBasketCode
    final: RectilinearDiagram
    steps: tuple[PushStep, ...] = field(default_factory=tuple)


# ---------------------------------------------------------------------------
# parsing and formatting
# ---------------------------------------------------------------------------

def parse_diagram(text: str) -> RectilinearDiagram:
    """Parse one band per line, ``x,y; x,y; ...`` with integer coordinates."""
    bands = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        vertices = []
        for chunk in line.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = chunk.split(",")
            if len(parts) != 2:
                raise MalformedDiagram(f"line {lineno}: bad vertex {chunk!r}")
            try:
                vertices.append((Fraction(parts[0].strip()), Fraction(parts[1].strip())))
            except (ValueError, ZeroDivisionError) as exc:
                raise MalformedDiagram(f"line {lineno}: bad vertex {chunk!r}") from exc
        if vertices:
            bands.append(tuple(vertices))
    if not bands:
        raise MalformedDiagram("no bands in diagram text")
    return RectilinearDiagram(tuple(bands))


def load_diagram(path: str | Path) -> RectilinearDiagram:
    return parse_diagram(Path(path).read_text())


def _coord(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else str(value)


def diagram_to_text(diagram: RectilinearDiagram) -> str:
    """Inverse of :func:`parse_diagram` (front bands only)."""
    if diagram.connectors:
        raise MalformedDiagram("text form covers connector-free diagrams only")
    lines = [
        "; ".join(f"{_coord(x)},{_coord(y)}" for x, y in band)
        for band in diagram.bands
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation and classification
# ---------------------------------------------------------------------------

def _segments(band: tuple[Vertex, ...]):
    """(index, a, b, vertical) for each segment of a band path."""
    for k in range(len(band) - 1):
        a, b = band[k], band[k + 1]
        yield k, a, b, a[0] == b[0]


def validate_diagram(diagram: RectilinearDiagram) -> None:
    """Check the normal-form conditions; raise a specific error otherwise."""
    heights: dict[Fraction, tuple[int, int]] = {}
    columns: dict[Fraction, tuple[int, int]] = {}
    for bi, band in enumerate(diagram.bands):
        if len(band) < 4:
            raise MalformedDiagram(f"band {bi} has fewer than 4 vertices")
        prev_vertical = None
        for k, a, b, vertical in _segments(band):
            if a == b or (a[0] != b[0] and a[1] != b[1]):
                raise MalformedDiagram(
                    f"band {bi} segment {k} is not axis-parallel and nonzero"
                )
            if prev_vertical is not None and vertical == prev_vertical:
                raise MalformedDiagram(f"band {bi} does not alternate at segment {k}")
            prev_vertical = vertical
            if vertical:
                if a[0] in columns:
                    raise DuplicateColumn(f"two y-lines share column x={a[0]}")
                columns[a[0]] = (bi, k)
            else:
                if a[1] in heights:
                    raise DuplicateHeight(f"two x-lines share height y={a[1]}")
                heights[a[1]] = (bi, k)
        first = band[0]
        last = band[-1]
        if band[0][0] != band[1][0] or band[-1][0] != band[-2][0]:
            raise MalformedDiagram(f"band {bi} must start and end vertically")
        if first[1] != 0 or last[1] != 0:
            raise FootOrderViolation(f"band {bi} feet must lie on the baseline")
        if any(v[1] <= 0 for v in band[1:-1]):
            raise FootOrderViolation(
                f"band {bi} interior vertices must have positive height"
            )
    for connector in diagram.connectors:
        for x in (connector.left, connector.right):
            if x in columns:
                raise DuplicateColumn(f"connector foot collides with column x={x}")
            columns[x] = (-1, -1)
        if connector.left >= connector.right:
            raise FootOrderViolation("connector feet must be ordered left < right")
    _check_crossings(diagram)


def _check_crossings(diagram: RectilinearDiagram) -> None:
    xlines = []
    ylines = []
    for bi, band in enumerate(diagram.bands):
        for k, a, b, vertical in _segments(band):
            if vertical:
                ylines.append((bi, k, a[0], min(a[1], b[1]), max(a[1], b[1])))
            else:
                xlines.append((bi, k, a[1], min(a[0], b[0]), max(a[0], b[0])))
    for bi, ki, y, xl, xr in xlines:
        for bj, kj, x, ylo, yhi in ylines:
            if bi == bj and abs(ki - kj) == 1:
                continue  # shared joint of consecutive segments
            if xl <= x <= xr and ylo <= y <= yhi:
                if not (xl < x < xr and ylo < y < yhi):
                    raise EndpointCrossing(
                        f"crossing touches a segment endpoint at ({x},{y})"
                    )


def _xlines(diagram: RectilinearDiagram) -> list[_XLine]:
    out = []
    for bi, band in enumerate(diagram.bands):
        for k, a, b, vertical in _segments(band):
            if vertical:
                continue
            # neighbours in path order; both exist because paths end vertically
            entry_other = band[k - 1]
            exit_other = band[k + 2]
            if a[0] < b[0]:
                left_other, right_other = entry_other, exit_other
                x_left, x_right = a[0], b[0]
            else:
                left_other, right_other = exit_other, entry_other
                x_left, x_right = b[0], a[0]
            out.append(
                _XLine(
                    band=bi,
                    seg=k,
                    y=a[1],
                    x_left=x_left,
                    x_right=x_right,
                    left_ascends=left_other[1] > a[1],
                    right_ascends=right_other[1] > a[1],
                )
            )
    return out


def classify_xlines(diagram: RectilinearDiagram) -> tuple[XLineClass, ...]:
    """Adjacency classes of all x-lines, ordered by height."""
    validate_diagram(diagram)
    out = [
        XLineClass(
            band=line.band,
            height=line.y,
            left="ascends" if line.left_ascends else "descends",
            right="ascends" if line.right_ascends else "descends",
        )
        for line in _xlines(diagram)
    ]
    out.sort(key=lambda c: c.height)
    return tuple(out)


def _ascending_count(diagram: RectilinearDiagram) -> int:
    return sum(
        line.left_ascends + line.right_ascends for line in _xlines(diagram)
    )


# ---------------------------------------------------------------------------
# abstract surface bookkeeping (depends only on the foot matching)
# ---------------------------------------------------------------------------

def _feet(diagram: RectilinearDiagram) -> list[tuple[Fraction, int]]:
    feet = []
    for bi, band in enumerate(diagram.bands):
        feet.append((band[0][0], bi))
        feet.append((band[-1][0], bi))
    for ci, connector in enumerate(diagram.connectors):
        feet.append((connector.left, len(diagram.bands) + ci))
        feet.append((connector.right, len(diagram.bands) + ci))
    feet.sort()
    return feet


def diagram_boundary_components(diagram: RectilinearDiagram) -> int:
    """Boundary components of the realized surface (matching trace)."""
    feet = _feet(diagram)
    m = len(feet)
    partner = [0] * m
    first_seen: dict[int, int] = {}
    for pos, (_, owner) in enumerate(feet):
        if owner in first_seen:
            partner[pos] = first_seen[owner]
            partner[first_seen[owner]] = pos
        else:
            first_seen[owner] = pos
    seen = [False] * m
    cycles = 0
    for start in range(m):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = (partner[i] + 1) % m
    return cycles


def diagram_euler(diagram: RectilinearDiagram) -> int:
    return 1 - diagram.band_count


# ---------------------------------------------------------------------------
# the push-down surgery
# ---------------------------------------------------------------------------

def _occupied_columns(diagram: RectilinearDiagram) -> set[Fraction]:
    occupied: set[Fraction] = set()
    for band in diagram.bands:
        for k, a, b, vertical in _segments(band):
            if vertical:
                occupied.add(a[0])
    for connector in diagram.connectors:
        occupied.add(connector.left)
        occupied.add(connector.right)
    return occupied


def _fresh_left(occupied: set[Fraction], x: Fraction) -> Fraction:
    below = [c for c in occupied if c < x]
    return (max(below) + x) / 2 if below else x - 1


def _fresh_right(occupied: set[Fraction], x: Fraction) -> Fraction:
    above = [c for c in occupied if c > x]
    return (x + min(above)) / 2 if above else x + 1


def _find_xline(diagram: RectilinearDiagram, height) -> _XLine:
    height = Fraction(height)
    for line in _xlines(diagram):
        if line.y == height:
            return line
    raise SiteNotEligible(f"no x-line at height {height}")


def _site_for(diagram: RectilinearDiagram, line: _XLine) -> tuple[Fraction, Fraction]:
    """Default push interval for a non-flat x-line.

    A clean valley (both ends ascending, nothing in between) goes in one
    piece; otherwise the stub next to an ascending end, stopping before the
    first occupied column, so the pushed interval never spans crossings or
    feet of other bands.
    """
    occupied = _occupied_columns(diagram)
    inside = sorted(c for c in occupied if line.x_left < c < line.x_right)
    if line.left_ascends and line.right_ascends and not inside:
        return line.x_left, line.x_right
    if line.left_ascends:
        stop = inside[0] if inside else line.x_right
        return line.x_left, (line.x_left + stop) / 2
    if line.right_ascends:
        stop = inside[-1] if inside else line.x_left
        return (stop + line.x_right) / 2, line.x_right
    raise SiteNotEligible(
        f"x-line at height {line.y} has no ascending adjacency"
    )


def push_down(
    diagram: RectilinearDiagram, height, interval=None
) -> RectilinearDiagram:
    """Push down an interval of the x-line at ``height``.

    ``interval`` defaults to the deterministic site choice used by
    :func:`flatten`; an explicit interval must touch an ascending end of the
    x-line.  The result has one more front band and one more connector.
    """
    validate_diagram(diagram)
    line = _find_xline(diagram, height)
    if interval is None:
        u, w = _site_for(diagram, line)
    else:
        u, w = Fraction(interval[0]), Fraction(interval[1])
        if not (line.x_left <= u < w <= line.x_right):
            raise SiteNotEligible(
                f"interval [{u},{w}] is not inside the x-line at height {line.y}"
            )
        # interval endpoints may coincide with a junction only where the
        # band continues upward; cutting at a descending junction would
        # fold the path back onto its own column
        if u == line.x_left and not line.left_ascends:
            raise SiteNotEligible("interval may not end at a descending junction")
        if w == line.x_right and not line.right_ascends:
            raise SiteNotEligible("interval may not end at a descending junction")
        if not (u == line.x_left or w == line.x_right):
            raise SiteNotEligible(
                "pushed interval must reach an ascending end of the x-line"
            )
        occupied = _occupied_columns(diagram)
        for cut, junction in ((u, u == line.x_left), (w, w == line.x_right)):
            if not junction and cut in occupied:
                raise SiteNotEligible(f"cut column {cut} is already occupied")
        # an interval spanning a crossing or a foot would strand feet between
        # the connector's, splitting the boundary instead of preserving it
        if any(u < col < w for col in occupied):
            raise SiteNotEligible(
                "pushed interval may not span occupied columns"
            )

    band = diagram.bands[line.band]
    k = line.seg
    va, vb = band[k], band[k + 1]
    y = line.y
    rightward = va[0] < vb[0]
    first_cut, second_cut = (u, w) if rightward else (w, u)

    if first_cut == va[0]:
        piece_first = band[:k] + ((va[0], Fraction(0)),)
    else:
        piece_first = band[: k + 1] + ((first_cut, y), (first_cut, Fraction(0)))
    if second_cut == vb[0]:
        piece_second = ((vb[0], Fraction(0)),) + band[k + 2:]
    else:
        piece_second = ((second_cut, Fraction(0)), (second_cut, y)) + band[k + 1:]
    piece_a, piece_b = (
        (piece_first, piece_second) if rightward else (piece_second, piece_first)
    )

    occupied = _occupied_columns(diagram) | {u, w}
    connector = Connector(_fresh_left(occupied, u), _fresh_right(occupied, w))

    bands = (
        diagram.bands[: line.band]
        + (piece_a, piece_b)
        + diagram.bands[line.band + 1:]
    )
    result = RectilinearDiagram(bands, diagram.connectors + (connector,))
    validate_diagram(result)
    assert diagram_euler(result) == diagram_euler(diagram) - 2
    assert diagram_boundary_components(result) == diagram_boundary_components(diagram)
    return result


def flatten_trace(diagram: RectilinearDiagram) -> FlattenResult:
    """Push down eligible sites (lowest first) until every x-line is flat."""
    validate_diagram(diagram)
    steps: list[PushStep] = []
    current = diagram
    while True:
        pending = [
            line
            for line in _xlines(current)
            if line.left_ascends or line.right_ascends
        ]
        if not pending:
            break
        line = min(pending, key=lambda l: l.y)
        u, w = _site_for(current, line)
        before = (
            diagram_euler(current),
            diagram_boundary_components(current),
            _ascending_count(current),
        )
        current = push_down(current, line.y, (u, w))
        after = (
            diagram_euler(current),
            diagram_boundary_components(current),
            _ascending_count(current),
        )
        steps.append(
            PushStep(
                height=line.y,
                interval=(u, w),
                euler_before=before[0],
                euler_after=after[0],
                boundary_before=before[1],
                boundary_after=after[1],
                ascending_before=before[2],
                ascending_after=after[2],
            )
        )
        assert after[0] == before[0] - 2, "push-down must add exactly two bands"
        assert after[1] == before[1], "push-down must preserve the boundary count"
        assert after[2] < before[2], "push-down must remove an ascending end"
    return FlattenResult(
        code=read_off_code(current), final=current, steps=tuple(steps)
    )


def flatten(diagram: RectilinearDiagram) -> FlatBasketCode:
    return flatten_trace(diagram).code


def read_off_code(diagram: RectilinearDiagram) -> FlatBasketCode:
    """Basket code of an all-flat diagram.

    Front bands are single arches; pages go to the lowest arch first, then
    to connectors in creation order behind all front bands.
    """
    validate_diagram(diagram)
    arch_heights = []
    for bi, band in enumerate(diagram.bands):
        spans = [a[1] for _, a, b, vertical in _segments(band) if not vertical]
        if len(spans) != 1:
            raise SiteNotEligible(
                f"band {bi} is not a single arch; flatten the diagram first"
            )
        arch_heights.append((spans[0], bi))
    arch_heights.sort()
    label: dict[int, int] = {}
    for page, (_, bi) in enumerate(arch_heights, start=1):
        label[bi] = page
    for ci in range(len(diagram.connectors)):
        label[len(diagram.bands) + ci] = len(diagram.bands) + 1 + ci
    word = tuple(label[owner] for _, owner in _feet(diagram))
    return FlatBasketCode(word)


# ---------------------------------------------------------------------------
# Seifert matrix straight from a diagram (independent of flattening)
# ---------------------------------------------------------------------------

def diagram_seifert_matrix(diagram: RectilinearDiagram) -> tuple[tuple[int, ...], ...]:
    """Seifert matrix of the normal-form surface, from crossings and chords.

    Bands are indexed by increasing peak height (the page order for flat
    diagrams).  Each basis cycle runs along its band core oriented from the
    left foot to the right foot (baseline order, regardless of which end the
    vertex list starts at) and closes up through the disk.  The entry for
    (x, y) sums the crossing signs where x's x-lines pass over y's y-lines,
    plus the chord-crossing sign for feet that interleave on the disk, which
    enters the two entries of a pair antisymmetrically; the diagonal is each
    core's self-linking (its projected writhe, read with the same push-off
    convention as everything else).  The two global binary conventions left
    open by the construction - the push-off side (an overall sign) and which
    entry of a pair receives the chord crossing - are pinned by entrywise
    agreement with the six-case code rule on flat diagrams; the same choice
    is confirmed against an independent boundary-trace oracle on random
    non-flat diagrams (see the test suite).
    """
    validate_diagram(diagram)
    if diagram.connectors:
        raise MalformedDiagram(
            "diagram oracle applies to connector-free diagrams"
        )
    order = sorted(
        range(len(diagram.bands)),
        key=lambda bi: max(v[1] for v in diagram.bands[bi]),
    )
    index = {bi: pos for pos, bi in enumerate(order)}
    n = len(order)
    rows = [[0] * n for _ in range(n)]

    # cycle orientation: +1 when the vertex list already runs left foot to
    # right foot, -1 when the path starts at the right foot
    flow = {
        bi: (1 if band[0][0] < band[-1][0] else -1)
        for bi, band in enumerate(diagram.bands)
    }

    segments = []
    for bi, band in enumerate(diagram.bands):
        for k, a, b, vertical in _segments(band):
            segments.append((bi, k, a, b, vertical))
    xl_items = [s for s in segments if not s[4]]
    yl_items = [s for s in segments if s[4]]
    for bi, ki, a, b, _ in xl_items:
        y = a[1]
        xl, xr = (a[0], b[0]) if a[0] < b[0] else (b[0], a[0])
        h_dir = (1 if b[0] > a[0] else -1) * flow[bi]
        for bj, kj, c, d, _ in yl_items:
            if bi == bj and abs(ki - kj) == 1:
                continue
            x = c[0]
            ylo, yhi = (c[1], d[1]) if c[1] < d[1] else (d[1], c[1])
            if xl < x < xr and ylo < y < yhi:
                v_dir = (1 if d[1] > c[1] else -1) * flow[bj]
                rows[index[bi]][index[bj]] -= h_dir * v_dir

    feet = []
    for bi, band in enumerate(diagram.bands):
        x0, x1 = band[0][0], band[-1][0]
        feet.append((min(x0, x1), max(x0, x1), index[bi]))
    for p_i, q_i, i in feet:
        for p_j, q_j, j in feet:
            if i >= j:
                continue
            inside = (p_i < p_j < q_i) + (p_i < q_j < q_i)
            if inside == 1:
                # chord crossing, oriented second foot to first foot on the
                # disk: +1 into the entry of the earlier-starting chord
                earlier_first = p_i < p_j
                rows[i][j] += 1 if earlier_first else -1
                rows[j][i] += -1 if earlier_first else 1
    return tuple(tuple(r) for r in rows)


def code_to_flat_diagram(code: FlatBasketCode) -> RectilinearDiagram:
    """Flat diagram realizing a code: one arch per band, height = page."""
    bands = []
    for label in range(1, code.n + 1):
        p, q = code.foot_positions[label]
        bands.append(
            (
                (Fraction(p), Fraction(0)),
                (Fraction(p), Fraction(label)),
                (Fraction(q), Fraction(label)),
                (Fraction(q), Fraction(0)),
            )
        )
    return RectilinearDiagram(tuple(bands))
