"""Rectilinear diagrams, push-downs, and the diagram Seifert oracle."""

from fractions import Fraction
from importlib import resources

import pytest

from flatbasket import alexander, normalize_alexander, parse_code, seifert_matrix
from flatbasket.errors import (
    DuplicateColumn,
    DuplicateHeight,
    EndpointCrossing,
    FootOrderViolation,
    MalformedDiagram,
    SiteNotEligible,
)
from flatbasket.invariants import pencil_determinant
from flatbasket.pushdown import (
    RectilinearDiagram,
    classify_xlines,
    code_to_flat_diagram,
    diagram_boundary_components,
    diagram_euler,
    diagram_seifert_matrix,
    diagram_to_text,
    flatten,
    flatten_trace,
    load_diagram,
    parse_diagram,
    push_down,
    read_off_code,
    validate_diagram,
)
from flatbasket.seifert import SeifertMatrix

VALLEY = "1,0; 1,3; 2,3; 2,1; 3,1; 3,4; 4,4; 4,0"


def corpus_paths():
    root = resources.files("flatbasket") / "data" / "diagrams"
    return sorted(root.iterdir(), key=lambda p: p.name)


def corpus_diagram(name: str) -> RectilinearDiagram:
    root = resources.files("flatbasket") / "data" / "diagrams"
    return parse_diagram((root / f"{name}.txt").read_text())


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_single_arch_valid():
    validate_diagram(parse_diagram("1,0; 1,1; 2,1; 2,0"))


def test_valley_valid():
    validate_diagram(parse_diagram(VALLEY))


def test_duplicate_height_rejected():
    with pytest.raises(DuplicateHeight):
        validate_diagram(parse_diagram("1,0; 1,1; 2,1; 2,0\n3,0; 3,1; 4,1; 4,0"))


def test_duplicate_column_rejected():
    with pytest.raises(DuplicateColumn):
        validate_diagram(parse_diagram("1,0; 1,1; 2,1; 2,0\n2,0; 2,3; 4,3; 4,0"))


def test_endpoint_crossing_rejected():
    # Any endpoint touch also duplicates a height or column, so full
    # validation reports the duplicate first; the crossing checker itself
    # must still reject the touch when probed directly.
    from flatbasket.pushdown import _check_crossings

    touching = parse_diagram("1,0; 1,2; 4,2; 4,0\n2,0; 2,2; 3,2; 3,0")
    with pytest.raises(DuplicateHeight):
        validate_diagram(touching)
    with pytest.raises(EndpointCrossing):
        _check_crossings(touching)


def test_foot_violations_rejected():
    with pytest.raises(FootOrderViolation):
        validate_diagram(parse_diagram("1,1; 1,2; 2,2; 2,0"))
    with pytest.raises(FootOrderViolation):
        validate_diagram(parse_diagram("1,0; 1,2; 2,2; 2,0; 3,0; 3,1; 4,1; 4,0"))


def test_malformed_paths_rejected():
    with pytest.raises(MalformedDiagram):
        validate_diagram(parse_diagram("1,0; 2,1; 3,0; 4,0"))
    with pytest.raises(MalformedDiagram):
        validate_diagram(parse_diagram("1,0; 1,1"))
    with pytest.raises(MalformedDiagram):
        parse_diagram("   ")


def test_parse_and_format_round_trip():
    diagram = parse_diagram(VALLEY)
    again = parse_diagram(diagram_to_text(diagram))
    assert again == diagram


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def test_classify_single_arch_flat():
    (cls,) = classify_xlines(parse_diagram("1,0; 1,1; 2,1; 2,0"))
    assert cls.flat and cls.left == "descends" and cls.right == "descends"


def test_classify_valley():
    classes = {c.height: c for c in classify_xlines(parse_diagram(VALLEY))}
    assert classes[Fraction(1)].left == "ascends"
    assert classes[Fraction(1)].right == "ascends"
    assert classes[Fraction(3)].flat
    assert classes[Fraction(4)].flat


def test_classify_all_arches_flat(trefoil_code):
    for cls in classify_xlines(code_to_flat_diagram(trefoil_code)):
        assert cls.flat


# ---------------------------------------------------------------------------
# push-down surgery
# ---------------------------------------------------------------------------

def test_push_down_valley():
    diagram = parse_diagram(VALLEY)
    result = push_down(diagram, 1)
    assert result.band_count == 3
    assert diagram_boundary_components(diagram) == 2
    assert diagram_boundary_components(result) == 2
    assert diagram_euler(result) == diagram_euler(diagram) - 2
    # the new feet realize the connector-flanked pattern A C A B C B
    code = flatten(diagram)
    assert code.word == (1, 3, 1, 2, 3, 2)


def test_push_down_flat_rejected(trefoil_code):
    flat = code_to_flat_diagram(trefoil_code)
    with pytest.raises(SiteNotEligible):
        push_down(flat, 1)
    with pytest.raises(SiteNotEligible):
        push_down(flat, 99)  # no such x-line


def test_push_down_explicit_interval_must_touch_ascending_end():
    diagram = parse_diagram(VALLEY)
    with pytest.raises(SiteNotEligible):
        push_down(diagram, 1, (Fraction(9, 4), Fraction(11, 4)))
    result = push_down(diagram, 1, (Fraction(2), Fraction(5, 2)))
    assert result.band_count == 3


def test_push_down_rejects_interval_spanning_occupied_columns():
    # deleting a crossing under the pushed interval would strand feet
    # between the connector's feet and change the boundary
    diagram = parse_diagram(
        "156,0; 156,119; 16,119; 16,160; 20,160; 20,0\n"
        "14,0; 14,16; 123,16; 123,0"
    )
    with pytest.raises(SiteNotEligible):
        push_down(diagram, 119, (Fraction(16), Fraction(60)))
    clean = push_down(diagram, 119, (Fraction(16), Fraction(18)))
    assert clean.band_count == 4
    assert diagram_boundary_components(clean) == diagram_boundary_components(diagram)


def test_push_down_rejects_descending_junction_cut():
    # the snake's x-line at y=2 descends on the left; an interval pinned to
    # that junction would fold the band onto its own column
    snake = parse_diagram("1,0; 1,2; 4,2; 4,5; 5,5; 5,0")
    with pytest.raises(SiteNotEligible):
        push_down(snake, 2, (Fraction(1), Fraction(2)))
    pushed = push_down(snake, 2, (Fraction(3), Fraction(4)))
    assert pushed.band_count == 3


def test_valley_delta_preserved():
    diagram = parse_diagram(VALLEY)
    oracle = diagram_seifert_matrix(diagram)
    raw = pencil_determinant(SeifertMatrix(oracle))
    assert raw.is_zero  # annulus boundary: two-component unlink
    assert alexander(flatten(diagram)).normalized.is_zero


# ---------------------------------------------------------------------------
# flattening
# ---------------------------------------------------------------------------

def test_flatten_flat_diagram_is_read_off(trefoil_code):
    flat = code_to_flat_diagram(trefoil_code)
    result = flatten_trace(flat)
    assert result.steps == ()
    assert result.code == trefoil_code == read_off_code(flat)


def test_flatten_interleaved_pair():
    flat = code_to_flat_diagram(parse_code("1,2,1,2"))
    assert flatten(flat).word == (1, 2, 1, 2)


def test_read_off_requires_flat():
    with pytest.raises(SiteNotEligible):
        read_off_code(parse_diagram(VALLEY))


def test_flatten_trefoil_normal_form_keeps_delta():
    diagram = corpus_diagram("trefoil_curled")
    oracle = normalize_alexander(
        pencil_determinant(SeifertMatrix(diagram_seifert_matrix(diagram)))
    )
    assert str(oracle.normalized) == "t^2 - t + 1"
    result = flatten_trace(diagram)
    assert str(alexander(result.code, checked=True).normalized) == "t^2 - t + 1"


def test_flatten_hopf_curl_keeps_delta():
    diagram = corpus_diagram("hopf_curl")
    oracle = normalize_alexander(
        pencil_determinant(SeifertMatrix(diagram_seifert_matrix(diagram)))
    )
    assert str(oracle.normalized) == "t - 1"
    assert str(alexander(flatten(diagram)).normalized) == "t - 1"


# ---------------------------------------------------------------------------
# diagram Seifert oracle
# ---------------------------------------------------------------------------

def test_oracle_calibration_anchors(trefoil_code):
    flat = code_to_flat_diagram(parse_code("1,2,1,2"))
    assert diagram_seifert_matrix(flat) == ((0, 0), (-1, 0))
    assert diagram_seifert_matrix(code_to_flat_diagram(parse_code("1,1,2,2"))) == (
        (0, 0), (0, 0),
    )
    tre = code_to_flat_diagram(trefoil_code)
    assert diagram_seifert_matrix(tre) == seifert_matrix(trefoil_code).rows


def test_oracle_matches_rule_on_flat_codes_up_to_six_bands():
    texts = (
        "1,1", "1,2,1,2", "1,2,2,1", "1,2,3,1,2,3", "1,3,1,2,3,2",
        "1,2,3,4,1,2,3,4", "1,2,4,3,1,2,4,3", "1,2,3,5,6,4,5,6,1,2,3,4",
        "1,2,3,1,2,4,6,5,3,4,6,5", "1,2,4,6,5,3,1,2,4,6,5,3",
    )
    for text in texts:
        code = parse_code(text)
        flat = code_to_flat_diagram(code)
        assert diagram_seifert_matrix(flat) == seifert_matrix(code).rows


def test_oracle_matches_rule_exhaustively_small():
    from conftest import all_codes

    for n in (1, 2, 3):
        for code in all_codes(n):
            flat = code_to_flat_diagram(code)
            assert diagram_seifert_matrix(flat) == seifert_matrix(code).rows


def test_oracle_matches_rule_on_all_table_codes():
    from flatbasket.tables import load_table

    for record in load_table():
        flat = code_to_flat_diagram(record.code)
        assert diagram_seifert_matrix(flat) == seifert_matrix(record.code).rows


def test_oracle_rejects_connectors():
    pushed = push_down(parse_diagram(VALLEY), 1)
    with pytest.raises(MalformedDiagram):
        diagram_seifert_matrix(pushed)


# ---------------------------------------------------------------------------
# the bundled corpus
# ---------------------------------------------------------------------------

def test_corpus_size_and_contents():
    names = [p.name for p in corpus_paths()]
    assert len(names) >= 20
    assert "valley.txt" in names
    assert any(name.startswith("flat_") for name in names)


def _random_diagram(rng, max_bands=4, max_xlines=4):
    """Any globally distinct column/height choice yields a valid diagram."""
    bands = []
    columns = rng.sample(range(1, 400), 80)
    heights = rng.sample(range(1, 400), 80)
    ci = hi = 0
    for _ in range(rng.randint(1, max_bands)):
        k = rng.randint(1, max_xlines)
        cols = columns[ci:ci + k + 1]
        ci += k + 1
        levels = heights[hi:hi + k]
        hi += k
        verts = [(cols[0], 0)]
        for j in range(k):
            verts.append((cols[j], levels[j]))
            verts.append((cols[j + 1], levels[j]))
        verts.append((cols[k], 0))
        bands.append(tuple((Fraction(x), Fraction(y)) for x, y in verts))
    return RectilinearDiagram(tuple(bands))


def test_random_diagrams_three_way_consistency():
    # flatten, the crossing oracle, and an independent boundary-trace
    # oracle (Wirtinger presentation + Fox calculus) must agree
    import random

    from boundary_oracle import boundary_alexander

    rng = random.Random(20250809)
    knots = 0
    for _ in range(120):
        diagram = _random_diagram(rng)
        validate_diagram(diagram)
        oracle = normalize_alexander(
            pencil_determinant(SeifertMatrix(diagram_seifert_matrix(diagram)))
        ).normalized
        result = flatten_trace(diagram)
        assert alexander(result.code).normalized == oracle
        if diagram_boundary_components(diagram) == 1:
            knots += 1
            assert boundary_alexander(diagram) == oracle
    assert knots >= 10


def test_boundary_oracle_matches_code_rule_on_flat_knots():
    from boundary_oracle import boundary_alexander

    for text in ("1,2,1,2", "1,2,3,4,1,2,3,4", "1,2,4,3,1,2,4,3",
                 "1,2,3,5,6,4,5,6,1,2,3,4", "1,3,2,6,5,1,6,4,5,3,2,4"):
        code = parse_code(text)
        assert boundary_alexander(code_to_flat_diagram(code)) == alexander(code).normalized


def test_oracle_flow_orientation_independent_of_path_start():
    # reversing a band's vertex list must not change the matrix
    diagram = corpus_diagram("trefoil_curled")
    reversed_bands = tuple(tuple(reversed(band)) for band in diagram.bands)
    flipped = RectilinearDiagram(reversed_bands)
    assert diagram_seifert_matrix(flipped) == diagram_seifert_matrix(diagram)


def test_corpus_consistency():
    for path in corpus_paths():
        diagram = parse_diagram(path.read_text())
        validate_diagram(diagram)
        oracle = normalize_alexander(
            pencil_determinant(SeifertMatrix(diagram_seifert_matrix(diagram)))
        )
        result = flatten_trace(diagram)
        for step in result.steps:
            assert step.euler_after == step.euler_before - 2
            assert step.boundary_after == step.boundary_before
            assert step.ascending_after < step.ascending_before
        final = alexander(result.code)
        assert final.normalized == oracle.normalized, path.name
        if not result.steps:
            assert diagram_seifert_matrix(diagram) == seifert_matrix(result.code).rows
