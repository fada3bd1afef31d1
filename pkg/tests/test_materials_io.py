import io

import pytest

from wetcasimir import dielectric as di
from wetcasimir.errors import MaterialFileError, UnknownRowError
from wetcasimir.lifshitz import DELTA, ForceCurve
from wetcasimir.materials_io import (MATERIALS_DIR, TABLE1, MaterialDatabase,
                                     builtin_table1, format_curve_csv,
                                     load_material, parse_material_file,
                                     read_curve_csv, resolve_model,
                                     serialize_material, write_curve_csv)

SHIPPED = sorted(MATERIALS_DIR.glob("*.mat"))

COLECOLE = """\
# test liquid
[material]
name = test
kind = colecole
source = made up
eps_static = 3.0
eps_high = 2.0
tau = 100.0
alpha = {alpha}
"""


def test_table1_rows():
    assert builtin_table1(1.0) == di.DrudeParams(7.76, 71.53, 0.0041, 0.0123, 1.0)
    p = builtin_table1(1.60)
    assert (p.eps_inf, p.omega_p_sq, p.gamma0, p.beta) == (10.30, 88.33, 0.0097, 0.0072)
    assert len(TABLE1) == 5


def test_table1_unknown_row_lists_keys():
    with pytest.raises(UnknownRowError) as info:
        builtin_table1(1.50)
    assert "1.33" in str(info.value) and "1.6" in str(info.value)


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.name)
def test_shipped_file_round_trip(path):
    rec = load_material(path)
    canonical = serialize_material(rec)
    again = parse_material_file(canonical)
    assert again == rec
    assert serialize_material(again) == canonical


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.name)
def test_shipped_file_is_causal(path):
    import numpy as np
    eps = load_material(path).model.eval(np.geomspace(1e-4, 1e3, 40))
    assert np.all(eps >= 1) and np.all(np.diff(eps) <= 0)


def test_valid_colecole_parses():
    rec = parse_material_file(COLECOLE.format(alpha=0.2))
    assert rec.model == di.ColeCole(di.ColeColeParams(3.0, 2.0, 100.0, 0.2))
    assert rec.source == "made up"


def test_alpha_out_of_range_names_field():
    with pytest.raises(MaterialFileError) as info:
        parse_material_file(COLECOLE.format(alpha=1.2))
    assert info.value.field == "alpha"
    assert "alpha" in str(info.value)
    assert info.value.line == 9


def test_missing_source_rejected():
    text = COLECOLE.format(alpha=0).replace("source = made up\n", "")
    with pytest.raises(MaterialFileError, match="source"):
        parse_material_file(text)


@pytest.mark.parametrize("bad, line", [
    ("eps_high 2.0", 7),
    ("eps_high = two", 7),
    ("colour = red", 7),
    ("eps_static = 4.0", 7),
])
def test_bad_lines_carry_line_number(bad, line):
    text = COLECOLE.format(alpha=0).replace("eps_high = 2.0", bad)
    with pytest.raises(MaterialFileError) as info:
        parse_material_file(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_header_required():
    with pytest.raises(MaterialFileError):
        parse_material_file("name = x\n")


def test_ninham_terms_repeat():
    text = ("[material]\nname = w\nkind = ninham\nsource = s\nB = 1\ntau = 2\n"
            "term = 0.1, 1.0, 0.0\nterm = 0.2, 10.0, 0.5\n")
    rec = parse_material_file(text)
    assert rec.model.params.terms == ((0.1, 1.0, 0.0), (0.2, 10.0, 0.5))


def test_database_is_deterministic(tmp_path):
    a = MaterialDatabase.load().serialize()
    b = MaterialDatabase.load().serialize()
    assert a == b
    assert MaterialDatabase.load().names() == ["cbr3f", "ccl3f", "water"]


def test_database_rejects_duplicate_names(tmp_path):
    for name in ("a.mat", "b.mat"):
        (tmp_path / name).write_text(COLECOLE.format(alpha=0))
    with pytest.raises(MaterialFileError, match="duplicate"):
        MaterialDatabase.load(tmp_path)


def test_database_unknown_name(db):
    with pytest.raises(UnknownRowError, match="water"):
        db["glycerol"]


def test_resolve_model_forms(db):
    assert resolve_model("vacuum", db) == di.Vacuum()
    assert resolve_model("const:2.5", db) == di.Constant(2.5)
    assert resolve_model("au", db) == di.Drude(builtin_table1(1.0))
    assert resolve_model("au:1.42", db) == di.Drude(builtin_table1(1.42))
    assert resolve_model("cbr3f", db, paper_literal_colecole=True).paper_literal


# --- CSV ------------------------------------------------------------------

def test_empty_curve_is_header_only():
    assert format_curve_csv(ForceCurve((), ())) == "separation_nm,value,value_kind\n"


def test_single_record_is_two_lines():
    text = format_curve_csv(ForceCurve((10.0,), (13.00,)))
    assert text.splitlines() == ["separation_nm,value,value_kind",
                                 "1.00000000000000e+01,1.30000000000000e+01,pressure_Pa"]
    assert "\r" not in text


def test_write_read_round_trip(tmp_path):
    curve = ForceCurve((10.0, 31.622776601683793, 1000.0),
                       (23.587123456789012, 3.1e-3, 0.728), DELTA)
    path = tmp_path / "c.csv"
    n = write_curve_csv(curve, path)
    assert n == path.stat().st_size
    back = read_curve_csv(path)
    assert back.value_kind == DELTA
    for a, b in zip(curve.values + curve.separations, back.values + back.separations):
        assert b == pytest.approx(a, rel=1e-14)


def test_write_to_streams():
    curve = ForceCurve((10.0,), (1.0,))
    text, raw = io.StringIO(), io.BytesIO()
    assert write_curve_csv(curve, text) == write_curve_csv(curve, raw)
    assert raw.getvalue().decode() == text.getvalue()
