import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from opgeo.cli.dsl import ScriptError, parse, print_script
from opgeo.cli.interpreter import RunConfig, run
from opgeo.cli.main import main
from opgeo.cli.svg import Cross, Scene, render_svg
from opgeo.compass import DistanceValue
from opgeo.scalar import Ordering, compare

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).parent / "golden"
SCRIPTS = sorted((ROOT / "scripts" / "constructions").glob("*.og"))

DIST = "frame F 2\npoint A 0 0\npoint B 3 4\ndist d1 A B\n"


class TestParse:
    def test_smoke(self):
        assert len(parse(DIST)) == 4

    def test_comments_and_blank_lines(self):
        assert len(parse("# hi\n\nframe F 3  # space\npoint A 0 0 1\n")) == 2

    def test_rational_literal_round_trip(self):
        src = "frame F 2\npoint A 0 0\npoint B 5 0\nvec v1 A B\nscale v2 3/5 v1\n"
        script = parse(src)
        st_ = script.statements[-1]
        assert st_.command == "scale" and st_.args[1].text == "3/5"
        assert print_script(script) == src
        assert parse(print_script(script)) == script

    @pytest.mark.parametrize("src, line, col, needle", [
        ("frame F 2\npoint A 0", 2, 10, "needs 2 coordinates"),
        ("point A 0 0", 1, 1, "declare a frame first"),
        ("frame F 2\ndist d A B", 2, 8, "unbound name 'A'"),
        ("frame F 2\npoint A 0 0\npoint A 1 1", 3, 7, "already bound"),
        ("frame F 2\npoint A 0 0\nnorm n A", 3, 8, "type mismatch"),
        ("frame F 2\npoint A 0 1/0", 2, 11, "division by zero"),
        ("frame F 4", 1, 9, "dimension must be 2 or 3"),
        ("frame F 2\nfly away", 2, 1, "unknown command"),
        ("frame F 2\nverify metric --trials many", 2, 24, "takes an integer"),
    ])
    def test_diagnostics(self, src, line, col, needle):
        with pytest.raises(ScriptError) as err:
            parse(src)
        assert (err.value.line, err.value.col) == (line, col)
        assert needle in err.value.message

    def test_error_format(self):
        with pytest.raises(ScriptError) as err:
            parse("frame F 2\npoint A 0")
        assert err.value.format("demo.og").startswith("demo.og:2:")


names = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,5}", fullmatch=True)
lits = st.builds(lambda p, q: f"{p}/{q}", st.integers(-50, 50), st.integers(1, 9))


@given(st.lists(st.tuples(lits, lits), min_size=1, max_size=6), lits)
def test_print_parse_identity(points, lam):
    lines = ["frame F 2"]
    lines += [f"point P{i} {x} {y}" for i, (x, y) in enumerate(points)]
    lines += [f"let k {lam}", "vec v P0 P0", f"scale w {lam} v"]
    script = parse("\n".join(lines))
    assert parse(print_script(script)) == script


class TestRun:
    def test_distance(self):
        out = run(parse(DIST))
        assert out.values["d1"].value == DistanceValue.of(5)

    def test_three_fifths_endpoint(self):
        out = run(parse((ROOT / "scripts/constructions/three_fifths.og").read_text()))
        p = out.values["B3'"].value
        xs = p.frame.coords(p)
        assert [x.as_fraction() for x in xs] == [Fraction(12, 5), Fraction(9, 5)]
        assert out.values["len_drawn"].value == DistanceValue.of(3)

    def test_verify_statement(self):
        out = run(parse("frame F 3\nverify metric --trials 1000 --seed 7"))
        assert len(out.reports) == 1 and out.reports[0].failures == 0
        assert not out.failed

    def test_kernel_error_is_located(self):
        with pytest.raises(ScriptError) as err:
            run(parse("frame F 2\npoint A 1 1\nline r A A"))
        assert err.value.line == 3

    def test_exploratory_needs_flag(self):
        src = "frame F 2\nverify inner_product --trials 20 --seed 1"
        with pytest.raises(ScriptError):
            run(parse(src))
        assert not run(parse(src), RunConfig(exploratory=True)).failed

    def test_tape_reading(self):
        out = run(parse((ROOT / "scripts/constructions/tape_angle.og").read_text()))
        assert out.values["reading"].reading == "1.03"
        assert compare(out.values["s"].value, 1) is Ordering.EQUAL


class TestSvg:
    def test_single_point(self):
        data = render_svg(Scene("one_point", [Cross((1.0, 2.0), "A")]))
        assert data.count(b"<path d=") == 2  # the cross and the arrow-head marker
        assert data == (GOLDEN / "one_point.svg").read_bytes()

    @pytest.mark.parametrize("script, scene", [
        (GOLDEN / "sphere_two_points.og", "sphere_two_points"),
        (ROOT / "scripts/constructions/vector_sum.og", "vector_sum"),
    ])
    def test_golden_scenes(self, script, scene):
        out = run(parse(script.read_text()))
        assert out.scenes[scene] == (GOLDEN / f"{scene}.svg").read_bytes()

    def test_vector_sum_has_three_arrows(self):
        assert (GOLDEN / "vector_sum.svg").read_bytes().count(b"marker-end") == 3

    def test_empty_scene(self):
        with pytest.raises(ValueError):
            render_svg(Scene("nothing"))


class TestMain:
    def test_run_writes_outputs(self, tmp_path, capsys):
        script = tmp_path / "d.og"
        script.write_text(DIST)
        assert main(["run", str(script), "--out-dir", str(tmp_path / "o"), "--report", "json"]) == 0
        payload = json.loads((tmp_path / "o" / "d.json").read_text())
        assert payload["values"][-1]["name"] == "d1"
        assert json.loads(capsys.readouterr().out) == payload

    def test_script_error_exit_code(self, tmp_path, capsys):
        script = tmp_path / "bad.og"
        script.write_text("frame F 2\npoint A 0\n")
        assert main(["run", str(script), "--out-dir", str(tmp_path)]) == 2
        assert "bad.og:2:" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["run", str(tmp_path / "nope.og")]) == 2

    def test_verify_pass(self, capsys):
        assert main(["verify", "affine", "--seed", "1", "--trials", "30", "--dim", "2"]) == 0
        d = json.loads(capsys.readouterr().out)
        assert d["suite"] == "affine" and d["seed"] == 1 and d["trials"] == 30

    def test_verify_failure_exit_code(self, capsys, monkeypatch):
        import opgeo.verify as verify

        monkeypatch.setattr(verify, "check_symmetry", lambda frame, a, b: False)
        assert main(["verify", "metric", "--seed", "1", "--trials", "10"]) == 1
        ax = {a["name"]: a for a in json.loads(capsys.readouterr().out)["axioms"]}
        assert ax["symmetry"]["fail"] == 10
        assert ax["symmetry"]["counterexample"]["trial"] == 0
        assert "counterexample" not in ax["identity"]

    def test_undecided_checks_exit_one(self, capsys):
        # angle equalities cannot be settled by enclosures alone
        code = main(["verify", "angles", "--seed", "1", "--trials", "5", "--dim", "2",
                     "--mode", "interval-only"])
        assert code == 1
        ax = {a["name"]: a for a in json.loads(capsys.readouterr().out)["axioms"]}
        assert ax["sum_construction"]["uncertain"] == 5 and ax["sum_construction"]["fail"] == 0

    def test_precision_precedence(self, monkeypatch):
        from opgeo.cli.main import _ceiling

        monkeypatch.delenv("OPGEO_MAX_PRECISION", raising=False)
        assert _ceiling(None) is None
        monkeypatch.setenv("OPGEO_MAX_PRECISION", "256")
        assert _ceiling(None) == 256
        assert _ceiling(2048) == 2048

    def test_usage_errors(self, capsys):
        assert main(["verify", "nosuch"]) == 2
        assert main(["verify", "metric", "--dim", "4"]) == 2
        assert main(["verify", "inner_product", "--trials", "5"]) == 2

    def test_text_report(self, capsys):
        assert main(["verify", "metric", "--trials", "20", "--report", "text"]) == 0
        assert "metric" in capsys.readouterr().out


@pytest.mark.parametrize("script", SCRIPTS, ids=lambda p: p.stem)
def test_bundled_scripts_run_clean(script, tmp_path):
    assert main(["run", str(script), "--out-dir", str(tmp_path)]) == 0
