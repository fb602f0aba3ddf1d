"""Error branches and less-travelled paths across the modules."""

import json

import pytest

from flatbasket import IntPolynomial, parse_code, parse_matching
from flatbasket.cli import cli_dispatch
from flatbasket.codes import FlatBasketCode, UnderlyingDiagram
from flatbasket.errors import (
    EmptyInput,
    MalformedCode,
    MalformedDiagram,
    ParseError,
)
from flatbasket.pushdown import (
    code_to_flat_diagram,
    diagram_to_text,
    parse_diagram,
    push_down,
)
from flatbasket.search import SearchQuery
from flatbasket.tables import load_references, load_table, verify_table


def test_code_constructor_rejects_empty_word():
    with pytest.raises(EmptyInput):
        FlatBasketCode(())


def test_underlying_diagram_validation():
    with pytest.raises(MalformedCode):
        UnderlyingDiagram((0,))          # odd size
    with pytest.raises(MalformedCode):
        UnderlyingDiagram((0, 1))        # fixed point
    with pytest.raises(MalformedCode):
        UnderlyingDiagram((1, 2, 0, 3))  # not an involution


def test_parse_matching_errors():
    with pytest.raises(EmptyInput):
        parse_matching(" ")
    with pytest.raises(MalformedCode):
        parse_matching("1,2,1")
    assert parse_matching("(7,9,7,9)").pairs() == ((1, 3), (2, 4))


def test_polynomial_division_and_shift_edges():
    with pytest.raises(ZeroDivisionError):
        IntPolynomial((1,)).exact_div(IntPolynomial(()))
    with pytest.raises(ArithmeticError):
        IntPolynomial((1,)).exact_div(IntPolynomial((0, 1)))  # deg too small
    with pytest.raises(ArithmeticError):
        IntPolynomial((1, 1)).shifted(-1)
    assert IntPolynomial(()).shifted(3).is_zero
    assert IntPolynomial(()).exact_div(IntPolynomial((2,))).is_zero


def test_polynomial_parse_errors():
    from flatbasket import parse_polynomial

    with pytest.raises(MalformedCode):
        parse_polynomial("")
    with pytest.raises(MalformedCode):
        parse_polynomial("1,x")
    with pytest.raises(MalformedCode):
        parse_polynomial("t t")
    with pytest.raises(MalformedCode):
        parse_polynomial("t^2 +")


def test_search_query_validation():
    with pytest.raises(ValueError):
        SearchQuery(bands=0)


def test_parse_diagram_errors():
    with pytest.raises(MalformedDiagram):
        parse_diagram("1,0; 1;2")
    with pytest.raises(MalformedDiagram):
        parse_diagram("1,0; x,2; 2,2; 2,0")


def test_diagram_to_text_rejects_connectors():
    pushed = push_down(parse_diagram("1,0; 1,3; 2,3; 2,1; 3,1; 3,4; 4,4; 4,0"), 1)
    with pytest.raises(MalformedDiagram):
        diagram_to_text(pushed)


def test_diagram_connector_validation():
    from fractions import Fraction

    from flatbasket.errors import DuplicateColumn, FootOrderViolation
    from flatbasket.pushdown import Connector, RectilinearDiagram, validate_diagram

    base = code_to_flat_diagram(parse_code("1,1"))
    with pytest.raises(DuplicateColumn):
        validate_diagram(
            RectilinearDiagram(base.bands, (Connector(Fraction(1), Fraction(5)),))
        )
    with pytest.raises(FootOrderViolation):
        validate_diagram(
            RectilinearDiagram(base.bands, (Connector(Fraction(5), Fraction(3)),))
        )


def test_table_claim_parse_error(tmp_path):
    bad = tmp_path / "t.tsv"
    bad.write_text("3_1\t(1,2,1,2)\t1\tsoon\n")
    with pytest.raises(ParseError):
        load_table(bad)


def test_reference_file_errors(tmp_path):
    bad = tmp_path / "r.tsv"
    bad.write_text("3_1\t1,-1,1\textra\n")
    with pytest.raises(ParseError):
        load_references(bad)
    bad.write_text("3_1\t1,q,1\n")
    with pytest.raises(ParseError):
        load_references(bad)
    bad.write_text("3_1\t0,1,-1,1\n")  # not normalized (min degree 1)
    with pytest.raises(ParseError):
        load_references(bad)


def test_verify_table_parallel_matches_serial():
    records = load_table()[:6]
    references = load_references()
    serial = verify_table(records, references, jobs=1)
    parallel = verify_table(records, references, jobs=2)
    assert [r.checks for r in serial.rows] == [r.checks for r in parallel.rows]
    assert serial.passed and parallel.passed


def _run(capsys, *argv):
    status = cli_dispatch(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_cli_plain_text_paths(capsys):
    status, out, _ = _run(capsys, "matrix", "--code", "1,2,1,2")
    assert status == 0 and out.splitlines() == [" 0  0", "-1  0"]
    status, out, _ = _run(capsys, "invariants", "--code", "1,2,3,4,1,2,3,4", "--json")
    payload = json.loads(out)
    assert payload["determinant"] == 3 and payload["arf"] == 1
    status, out, _ = _run(capsys, "census", "-n", "2")
    assert status == 0 and out.strip().endswith("1")
    status, out, _ = _run(capsys, "validate", "--code", "2,1,2,1")
    assert "canonical form (1,2,1,2)" in out
    status, out, _ = _run(capsys, "passclass", "--code", "1,1")
    assert "undetermined" in out
    status, out, _ = _run(capsys, "search", "-n", "2", "--knots-only")
    assert "code=1,2,1,2" in out


def test_cli_positive_int_flags(capsys):
    assert _run(capsys, "census", "-n", "0")[0] == 2
    assert _run(capsys, "search", "-n", "4", "--jobs", "0")[0] == 2


def test_cli_store_on_directory_is_domain_error(tmp_path, capsys):
    status, _, err = _run(
        capsys, "search", "-n", "2", "--store", str(tmp_path)
    )
    assert status == 1 and "error" in err


def test_store_rejects_unreadable_lines(tmp_path):
    from flatbasket.errors import StoreMismatch
    from flatbasket.search import search, write_store

    store = tmp_path / "s.jsonl"
    store.write_text("not json\n")
    with pytest.raises(StoreMismatch):
        write_store(store, search(SearchQuery(bands=2)))


def test_cli_verify_table_json_and_failure(tmp_path, capsys):
    status, out, _ = _run(capsys, "verify-table", "--json")
    rows = json.loads(out)
    assert status == 0 and len(rows) == 84 and all(r["passed"] for r in rows)
    table = tmp_path / "table.tsv"
    # claim 6 contradicts the 4-band trefoil code: bands check must fail
    table.write_text("3_1\t(1,2,3,4,1,2,3,4)\t1\t6\n")
    status, out, _ = _run(capsys, "verify-table", "--table", str(table))
    assert status == 1
    assert "BANDS!" in out or "BOUND!" in out
