import numpy as np
import pytest

from errors import ConfigError, PreconditionError, UncertifiedDatum
from neumann.data import (BoundaryDatum, DatumKind, algebraic_datum, by_face, certify, combine_data,
                          compact_datum, decay_bound, decay_exponent, gaussian_datum, tabulated_datum,
                          tabulated_datum_from_file, zero_datum)
from neumann.tabulated import grid_from_rows, parse_table, parse_table_file


def test_zero_datum(spec3):
    datum = zero_datum(0, spec3)
    assert datum.is_zero
    assert certify(datum, spec3) == 0.0
    assert datum(np.ones((4, 2))).tolist() == [0.0] * 4


def test_algebraic_datum_is_sharp_for_its_bound(spec3):
    datum = algebraic_datum(0, spec3, amplitude=2.0, eps=0.5)
    assert certify(datum, spec3) == pytest.approx(1.0, rel=1e-12)
    assert datum(np.zeros((1, 2)))[0] == 2.0
    assert decay_exponent(datum, spec3) == pytest.approx(1.0)


def test_gaussian_and_compact_certify(spec3):
    assert certify(gaussian_datum(0, spec3, [0.5, -0.5], 0.8), spec3) <= 1.0
    assert certify(compact_datum(0, spec3, [0.0, 1.0], 0.5), spec3) <= 1.0


def test_compact_datum_support(spec3):
    datum = compact_datum(0, spec3, [0.0, 0.0], 1.0, amplitude=3.0)
    values = datum(np.array([[0.0, 0.0], [0.0, 1.0], [2.0, 2.0]]))
    assert values[0] == pytest.approx(3.0)
    assert values[1:].tolist() == [0.0, 0.0]


def test_uncertified_datum_is_rejected(spec3):
    datum = BoundaryDatum(0, lambda t: np.ones(len(t)), bound_c=0.5, bound_eps=0.5)
    with pytest.raises(UncertifiedDatum):
        certify(datum, spec3)


def test_slowly_decaying_datum_is_rejected(spec3):
    # decays like |x̃|^-0.6, slower than the declared |x̃|^-1
    datum = BoundaryDatum(0, lambda t: (1.0 + np.einsum("ij,ij->i", t, t)) ** -0.3,
                          bound_c=1.0, bound_eps=0.5)
    with pytest.raises(UncertifiedDatum):
        certify(datum, spec3)


def test_datum_validation():
    with pytest.raises(PreconditionError):
        BoundaryDatum(0, lambda t: t[:, 0], bound_c=0.0, bound_eps=0.5)
    with pytest.raises(PreconditionError):
        BoundaryDatum(0, lambda t: t[:, 0], bound_c=1.0, bound_eps=-1.0)


def test_combined_datum(spec3):
    a = algebraic_datum(0, spec3, 1.0, 0.5)
    g = gaussian_datum(0, spec3, [0.0, 0.0], 1.0, eps=0.25)
    combined = combine_data([(2.0, a), (-1.0, g)])
    t = np.array([[0.3, -0.4], [2.0, 1.0]])
    assert combined(t) == pytest.approx(2.0 * a(t) - g(t), rel=1e-15)
    assert combined.bound_c == pytest.approx(2.0 * a.bound_c + g.bound_c)
    assert combined.bound_eps == 0.25
    assert combined.kind is DatumKind.COMBINED


def test_combined_datum_needs_one_face(spec4):
    with pytest.raises(PreconditionError):
        combine_data([(1.0, algebraic_datum(0, spec4)), (1.0, algebraic_datum(1, spec4))])


def test_by_face_fills_missing_faces(spec4):
    data = by_face([algebraic_datum(1, spec4)], spec4)
    assert data[0].is_zero
    assert data[1].kind is DatumKind.ALGEBRAIC
    with pytest.raises(PreconditionError):
        by_face([algebraic_datum(1, spec4), algebraic_datum(1, spec4)], spec4)


def test_decay_bound_scales_with_bound_constant(spec3):
    one = decay_bound(algebraic_datum(0, spec3, 1.0), spec3)
    three = decay_bound(algebraic_datum(0, spec3, 3.0), spec3)
    assert one > 0.0
    assert three == pytest.approx(3.0 * one, rel=1e-14)


# ── Tabulated data ─────────────────────────────────────────────

TABLE = """\
# x_1, x_2, value
x1 x2 value
0.0, 0.0, 1.0
0.0, 1.0, 2.0
1.0, 0.0, 3.0
1.0, 1.0, 4.0
"""


def test_parse_table_skips_header_and_comments():
    rows = parse_table(TABLE)
    assert [r.value for r in rows] == [1.0, 2.0, 3.0, 4.0]
    assert rows[0].coords == (0.0, 0.0)
    assert rows[0].line == 3


def test_parse_table_reports_line_numbers():
    with pytest.raises(ConfigError) as err:
        parse_table("0 0 1\n0 1 2\n1 oops 3\n", source="bad.txt")
    assert err.value.line == 3
    assert err.value.path == "bad.txt"


def test_parse_table_rejects_ragged_rows():
    with pytest.raises(ConfigError):
        parse_table("0 0 1\n0 1\n")


def test_grid_needs_full_tensor():
    rows = parse_table("0 0 1\n0 1 2\n1 0 3\n")
    with pytest.raises(ConfigError):
        grid_from_rows(rows, 2)


def test_grid_from_rows():
    axes, values = grid_from_rows(parse_table(TABLE), 2)
    assert [a.tolist() for a in axes] == [[0.0, 1.0], [0.0, 1.0]]
    assert values.tolist() == [[1.0, 2.0], [3.0, 4.0]]


def test_tabulated_datum_interpolates(spec3):
    axes, values = grid_from_rows(parse_table(TABLE), 2)
    datum = tabulated_datum(0, spec3, axes, values, bound_c=10.0, bound_eps=0.5)
    out = datum(np.array([[0.5, 0.5], [0.0, 0.0], [5.0, 5.0]]))
    assert out == pytest.approx([2.5, 1.0, 0.0])
    assert datum.breakpoints == ((0.0, 1.0), (0.0, 1.0))


def test_tabulated_datum_from_file(tmp_path, spec3):
    path = tmp_path / "nu.txt"
    path.write_text(TABLE, encoding="utf-8")
    datum = tabulated_datum_from_file(0, spec3, str(path), 10.0, 0.5)
    assert certify(datum, spec3) <= 1.0


def test_missing_table_file(tmp_path):
    missing = str(tmp_path / "nu.txt")
    with pytest.raises(ConfigError) as err:
        parse_table_file(missing)
    assert err.value.path == missing


def test_latin1_table_file(tmp_path):
    path = tmp_path / "nu.txt"
    path.write_bytes("# b\xe9zier grid\n0 0 1\n0 1 2\n".encode("latin-1"))
    assert [r.value for r in parse_table_file(str(path))] == [1.0, 2.0]
