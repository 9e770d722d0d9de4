import json

import pytest

from gspforge import cli
from gspforge.synth import certificate_to_json

NEAR_MISS_POLY = "1,9757776,8853700,10422426,677292100,3179077776,342862800"


def run(argv, capsys):
    code = cli.dispatch(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSimpleCommands:

    def test_deuring_exact_line(self, capsys):
        code, out, _ = run(["deuring", "--ell", "7"], capsys)
        assert code == 0
        assert out == "x^3+2x^2+2x+1 = (x+1)(x+3)(x+5) mod 7\n"

    def test_group_order_exact_line(self, capsys):
        code, out, _ = run(["group-order", "--n", "2", "--q", "7"], capsys)
        assert code == 0
        assert out == "1659571200 = 2^10 * 3^3 * 5^2 * 7^4\n"

    def test_igusa_output(self, capsys):
        code, out, _ = run(["igusa", "--poly", "1,1,0,1,0,1,1"], capsys)
        assert code == 0
        assert "J2 = -97/4" in out
        assert "J10 = 6845/256" in out
        assert "I12 = -1095163/64" in out

    def test_classify_output(self, capsys):
        code, out, _ = run(["classify", "--poly", "1,1,0,1,0,1,1", "--p", "5"], capsys)
        assert (code, out) == (0, "typeII, e = 1\n")
        code, out, _ = run(["classify", "--poly", "1,1,0,1,0,1,1", "--p", "7"], capsys)
        assert (code, out) == (0, "good\n")

    def test_count_output(self, capsys):
        code, out, _ = run(["count", "--q", "29",
                            "--poly", "g2:v1:[1,1,0,0,0,17,5]"], capsys)
        assert code == 0
        assert "N1 = 31, N2 = 843" in out
        assert "a = 1, b = 1" in out
        assert "X^4 + 1 X^3 + 1 X^2 + 29 X + 841" in out

    def test_search_lex_pinned(self, capsys):
        code, out, _ = run(["search", "--q", "29", "--n1", "31", "--n2", "843",
                            "--strategy", "lex", "--fixed", "1,1,,,,,"], capsys)
        assert code == 0
        assert out.startswith("g2:v1:[1,1,0,0,0,17,5]  (y^2 = ")
        assert "over F_29)" in out

    def test_help_exits_zero(self, capsys):
        assert run(["--help"], capsys)[0] == 0


class TestSynthVerifyRoundTrip:

    def test_round_trip_and_tamper(self, tmp_path, capsys, cert7):
        cert_file = tmp_path / "cert7.json"
        code, out, _ = run(["synth", "--ell", "7", "--json", str(cert_file)], capsys)
        assert code == 0
        assert "certificate for ell = 7" in out
        assert cert_file.read_text() == certificate_to_json(cert7)

        code, out, _ = run(["verify", "--cert", str(cert_file)], capsys)
        assert code == 0
        assert out.rstrip().endswith("overall: PASS")

        doc = json.loads(cert_file.read_text())
        doc["group_order"] = "3319142400"
        cert_file.write_text(json.dumps(doc) + "\n")
        code, out, _ = run(["verify", "--cert", str(cert_file)], capsys)
        assert code == 1
        assert out.rstrip().endswith("overall: FAIL")

    def test_json_stdout_is_byte_identical(self, capsys, cert7):
        code, out1, _ = run(["synth", "--ell", "7", "--json", "-"], capsys)
        assert code == 0
        code, out2, _ = run(["synth", "--ell", "7", "--json", "-"], capsys)
        assert out1 == out2 == certificate_to_json(cert7)
        assert json.loads(out1)["format"] == "gspforge-certificate/1"

    def test_report_json_payload(self, tmp_path, capsys, cert7):
        cert_file = tmp_path / "c.json"
        cert_file.write_text(certificate_to_json(cert7))
        report_file = tmp_path / "report.json"
        code, _, _ = run(["verify", "--cert", str(cert_file),
                          "--json", str(report_file)], capsys)
        assert code == 0
        payload = json.loads(report_file.read_text())
        assert payload["overall"] is True
        assert any(r["name"] == "tame-guards" and r["status"] == "pass"
                   for r in payload["rows"])


class TestDiagnostics:

    def test_curve_diagnostic_failure(self, capsys):
        code, out, err = run(["verify", "--curve", NEAR_MISS_POLY, "--ell", "7",
                              "--diagnostic", "--verbose"], capsys)
        assert code == 1
        assert "diagnosing against q1 = 29, q2 = 43" in err
        assert "mod16:f3" in out
        assert out.rstrip().endswith("overall: FAIL")

    def test_certificate_curve_diagnoses_clean(self, capsys, cert7):
        code, out, _ = run(["verify", "--curve", cert7.curve.to_text(),
                            "--ell", "7"], capsys)
        assert code == 0
        assert out.rstrip().endswith("overall: PASS")

    def test_ell5_passes(self, capsys):
        code, out, _ = run(["ell5"], capsys)
        assert code == 0
        assert "type-ii-at-27792683" in out
        assert "type-ii-at-195476205803858674906021" in out
        assert out.rstrip().endswith("overall: PASS")

    def test_ell5_perturbed_fails(self, capsys):
        code, out, _ = run(["ell5", "--curve",
                            "1,0,391300,1178,1300,0,1"], capsys)
        assert code == 1
        assert out.rstrip().endswith("overall: FAIL")


class TestClosureCommand:

    @staticmethod
    def _write_gens(path, mats):
        path.write_text(json.dumps([[list(row) for row in m] for m in mats]))

    def test_full_group(self, tmp_path, capsys):
        from gspforge.sympgroup import standard_generators
        gens = tmp_path / "gens.json"
        self._write_gens(gens, standard_generators(3))
        code, out, _ = run(["closure", "--ell", "3", "--gens", str(gens)], capsys)
        assert code == 0
        assert out == "closure size 51840 = |Sp4|\n"

    def test_cap_exceeded(self, tmp_path, capsys):
        from gspforge.sympgroup import transvection
        gens = tmp_path / "gens.json"
        self._write_gens(gens, [transvection((1, 0, 0, 0), 1, 3)])
        code, _, err = run(["closure", "--ell", "3", "--gens", str(gens),
                            "--cap", "2"], capsys)
        assert code == 3
        assert "CapExceeded" in err

    def test_malformed_generator(self, tmp_path, capsys):
        gens = tmp_path / "gens.json"
        gens.write_text(json.dumps([[[1, 0], [0, 1]]]))
        assert run(["closure", "--ell", "3", "--gens", str(gens)], capsys)[0] == 2


class TestExitCodes:

    @pytest.mark.parametrize("argv", [
        [],
        ["nosuch"],
        ["verify"],
        ["verify", "--curve", "1,1,0,1,0,1,1"],
        ["count", "--q", "29", "--poly", "1,2,3"],
        ["count", "--q", "29", "--poly", "g2:v2:[1,1,0,0,0,17,5]"],
        ["synth", "--ell", "5"],
        ["synth", "--ell", "7", "--witness1", "1,1,0,0,0,17,5"],
        ["verify", "--cert", "/nonexistent/cert.json"],
        ["classify", "--poly", "1,1,0,1,0,1,1", "--p", "2"],
    ])
    def test_usage_errors_exit_2(self, argv, capsys):
        assert run(argv, capsys)[0] == 2

    def test_search_exhaustion_exits_3(self, capsys):
        code, _, err = run(["search", "--q", "29", "--n1", "31", "--n2", "843",
                            "--strategy", "lex", "--fixed", "1,1,0,0,0,17,6"],
                           capsys)
        assert code == 3
        assert "NotFound" in err


class TestThreadsEnv:

    def test_forge_threads_env_respected(self, monkeypatch, capsys):
        monkeypatch.setenv("FORGE_THREADS", "2")
        code, out, _ = run(["search", "--q", "29", "--n1", "31", "--n2", "843",
                            "--strategy", "lex", "--fixed", "1,1,0,0,0,17,5"],
                           capsys)
        assert code == 0
        assert "g2:v1:[1,1,0,0,0,17,5]" in out

    def test_threads_flag_overrides_env(self, monkeypatch, capsys):
        monkeypatch.setenv("FORGE_THREADS", "not-a-number")
        code, out, _ = run(["search", "--q", "29", "--n1", "31", "--n2", "843",
                            "--threads", "1",
                            "--strategy", "lex", "--fixed", "1,1,0,0,0,17,5"],
                           capsys)
        assert code == 0
        assert "g2:v1:[1,1,0,0,0,17,5]" in out
