"""Command line front end: records, determinism, and the exit-code contract."""

import io
import json

from tubular.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_classify_regions_on_the_line():
    code, text = run("classify", "--scene", "p1", "mono: t1=1/2")
    assert code == 0 and text == "region W\n"
    code, text = run("classify", "--scene", "p1", "mono: t1=0")
    assert code == 0 and text == "region Z_eta\n"
    code, text = run("classify", "--scene", "p1", "mono: t1=1")
    assert code == 0 and text == "region U_eta\n"


def test_fiber_coordinate_and_not_in_w():
    code, text = run("fiber", "--scene", "p1", "mono: t1=1/2")
    assert code == 0 and text == "fiber 1/2\n"
    code, text = run("fiber", "--scene", "p1", "mono: t1=1")
    assert code == 1


def test_power_and_chart_select():
    code, text = run("power", "--scene", "p1", "mono: t1=1/2", "2")
    assert code == 0 and text == "point mono: t1=1/4\n"
    code, text = run("chart-select", "--scene", "p1",
                     "--gens", "t1,t1^2", "mono: t1=1/2")
    assert code == 0 and text == "chart 0\n"


def test_global_sections_dimensions():
    code, text = run("global-sections", "--scene", "p2", "--tag", "W",
                     "--box=-6:1:6")
    assert code == 0 and text.splitlines()[0] == "dimension 28"
    code, text = run("global-sections", "--scene", "p1", "--tag", "XHAT",
                     "--box", "0:6:0", "--basis")
    lines = text.splitlines()
    assert code == 0 and lines[0] == "dimension 6"
    assert len([l for l in lines if l.startswith("section ")]) == 6


def test_global_units_counts():
    code, text = run("global-units", "--scene", "p1", "--tag", "W",
                     "--box=-4:5:0")
    assert code == 0 and text.splitlines()[0] == "count 9"
    code, text = run("global-units", "--scene", "p2", "--tag", "W",
                     "--box=-6:1:6")
    assert code == 0 and text.splitlines()[0] == "count 1"


def test_pic_kernel_classes_record():
    code, text = run("pic-kernel", "--scene", "p1", "--box=-4:5:0")
    lines = text.splitlines()
    assert code == 0
    assert lines[0] == "classes 9"
    assert len([l for l in lines if l.startswith("representative ")]) == 9


def test_records_are_deterministic():
    first = run("pic-kernel", "--scene", "p1", "--box=-4:5:0")
    second = run("pic-kernel", "--scene", "p1", "--box=-4:5:0")
    assert first == second
    a = run("global-sections", "--scene", "p2", "--basis", "--box=-2:1:2")
    b = run("global-sections", "--scene", "p2", "--basis", "--box=-2:1:2")
    assert a == b


def _matrix_file(tmp_path, entries, tag="W", name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"tag": tag, "entries": entries}))
    return str(path)


def test_birkhoff_command(tmp_path):
    mat = _matrix_file(tmp_path, [["t1", "1"], ["0", "t1^-1"]])
    code, text = run("birkhoff", "--scene", "p1", "--prec", "8",
                     "--matrix", mat)
    lines = text.splitlines()
    assert code == 0
    assert lines[0] == "split 0 0"
    assert lines[1].startswith("a_minus ")
    rec = json.loads(lines[1].split(" ", 1)[1])
    assert rec["tag"] == "U" and rec["chart"] == "c1"
    diag = _matrix_file(tmp_path, [["t1", "0"], ["0", "t1^-1"]], name="d.json")
    code, text = run("birkhoff", "--scene", "p1", "--prec", "8",
                     "--matrix", diag)
    assert code == 0 and text.splitlines()[0] == "split 1 -1"


def test_factor_and_glue_commands(tmp_path):
    diag = _matrix_file(tmp_path, [["t1", "0"], ["0", "t1^-1"]])
    code, text = run("factor", "--scene", "p1", "--prec", "8",
                     "--matrix", diag)
    assert code == 0
    assert text.splitlines() == ["status obstructed", "obstruction 1 -1"]
    code, text = run("glue", "--scene", "p1", "--prec", "8", "--matrix", diag)
    assert code == 0 and text.splitlines()[0] == "status obstructed"
    scalar = _matrix_file(tmp_path, [["t1"]], name="s.json")
    code, text = run("glue", "--scene", "p1", "--prec", "8", "--matrix", scalar)
    assert code == 0 and text.splitlines()[0] == "status free"
    # rank >= 2 over a chart with y-variables is out of the solver's reach
    und = _matrix_file(tmp_path, [["t1", "0"], ["0", "t1^-1"]], name="u.json")
    code, text = run("glue", "--scene", "p2", "--prec", "8", "--matrix", und)
    assert code == 1 and text.splitlines()[0] == "status undecided"


def test_fiber_sections_command():
    code, text = run("fiber-sections", "--scene", "p1", "--box", "0:4:0",
                     "--prec", "8", "t1")
    assert code == 0 and text.splitlines()[0] == "dimension 4"


def test_cocycle_check_command(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"g": {"0 1": [["1"]], "1 0": [["1"]]}}))
    code, text = run("cocycle-check", "--scene", "p2", "--prec", "6",
                     "--data", str(good))
    assert code == 0 and text == "cocycle ok\n"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"g": {"0 1": [["1 + t1"]], "1 0": [["1"]]}}))
    code, text = run("cocycle-check", "--scene", "p2", "--prec", "6",
                     "--data", str(bad))
    lines = text.splitlines()
    assert code == 1
    assert lines[0] == "cocycle fail"
    assert lines[1].startswith("failure inverse 0 1")


def test_input_errors_exit_2(tmp_path):
    assert run("classify", "--scene", "nope.scene", "mono: t1=1/2")[0] == 2
    assert run("classify", "--scene", "p1", "t1=1/2")[0] == 2
    assert run("pic-kernel", "--scene", "p1", "--box", "broken")[0] == 2
    garbled = tmp_path / "g.json"
    garbled.write_text("{not json")
    assert run("birkhoff", "--scene", "p1", "--matrix", str(garbled))[0] == 2
    badel = tmp_path / "b.json"
    badel.write_text(json.dumps({"tag": "W", "entries": [["qq"]]}))
    assert run("birkhoff", "--scene", "p1", "--matrix", str(badel))[0] == 2


def test_matrix_from_stdin(tmp_path, monkeypatch):
    import sys
    payload = json.dumps({"tag": "W", "entries": [["t1", "0"], ["0", "t1^-1"]]})
    monkeypatch.setattr(sys, "stdin", io.StringIO(payload))
    code, text = run("birkhoff", "--scene", "p1", "--prec", "8",
                     "--matrix", "-")
    assert code == 0 and text.splitlines()[0] == "split 1 -1"
