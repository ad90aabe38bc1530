"""Command line behavior: sources, outputs, exit codes."""

from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from turancert.cli import main

SUPER_CRITICAL = "(n+2)^3*a(n+1) - ((n+2)^3+1)*a(n) = 0 ; a(0)=1"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSources:
    def test_corpus_name(self, capsys):
        code, out, _ = run(capsys, "terms", "apery", "--to", "5")
        assert code == 0
        assert out.strip() == "1, 5, 73, 1445, 33001, 819005"

    def test_inline_text(self, capsys):
        code, out, _ = run(
            capsys, "terms", "(4*n+2)*a(n+1) - (n+2)*a(n) = 0 ; a(0)=1", "--to", "4"
        )
        assert code == 0
        assert out.strip() == "1, 1, 1/2, 1/5, 1/14"

    def test_text_file(self, capsys, tmp_path):
        p = tmp_path / "rec.txt"
        p.write_text("(n+4)*a(n+2) - (2*n+5)*a(n+1) - 3*(n+1)*a(n) = 0 ; a(0)=1, a(1)=1\n")
        code, out, _ = run(capsys, "terms", str(p), "--to", "6")
        assert code == 0
        assert out.strip() == "1, 1, 2, 4, 9, 21, 51"

    def test_json_file(self, capsys, tmp_path):
        doc = {
            "name": "fib",
            "coeffs": [["1"], ["1"], ["1"]],
            "initials": ["0", "1"],
        }
        p = tmp_path / "rec.json"
        p.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "terms", str(p), "--to", "8")
        assert code == 0
        assert out.strip() == "0, 1, 1, 2, 3, 5, 8, 13, 21"

    def test_operator_source(self, capsys):
        code, out, _ = run(
            capsys, "terms", "N^2 - N - 1 ; a(0)=0, a(1)=1", "--operator", "--to", "6"
        )
        assert code == 0
        assert out.strip() == "0, 1, 1, 2, 3, 5, 8"

    def test_bad_source(self, capsys):
        code, _, err = run(capsys, "terms", "garbage(", "--to", "3")
        assert code == 1
        assert "error:" in err


class TestAsymptotics:
    def test_u_asymp_series(self, capsys):
        code, out, _ = run(capsys, "u-asymp", "inverse-catalan", "-K", "5")
        assert code == 0
        assert "1 - 3/2*n^-2 + 9/4*n^-3 - 21/8*n^-4" in out

    def test_u_asymp_json(self, capsys):
        code, out, _ = run(capsys, "--json", "u-asymp", "involutions", "-K", "3")
        assert code == 0
        doc = json.loads(out)
        assert doc["scaling"] == "none"
        exps = {t["exponent"]: t["coefficient"] for t in doc["series"]["terms"]}
        assert exps["1"] == {"num": ["-1"], "den": ["2"]}
        assert exps["3/2"] == {"num": ["-1"], "den": ["4"]}
        assert exps["2"] == {"num": ["5"], "den": ["8"]}

    def test_ratio_asymp_rational_growth(self, capsys):
        code, out, _ = run(capsys, "ratio-asymp", "motzkin", "-K", "3")
        assert code == 0
        assert "lambda = 3" in out

    def test_ratio_asymp_algebraic_growth(self, capsys):
        code, out, _ = run(capsys, "ratio-asymp", "bn", "-K", "3")
        assert code == 0
        assert "root of x^2 - 6*x + 1" in out


class TestVerdictCommands:
    def test_holds_exit_zero(self, capsys):
        code, out, _ = run(capsys, "check-turan3", "motzkin")
        assert code == 0
        assert "verdict: holds" in out

    def test_fails_exit_three(self, capsys):
        code, out, _ = run(capsys, "check-turan3", "binomial4")
        assert code == 3
        assert "verdict: fails" in out

    def test_inconclusive_exit_two(self, capsys):
        code, out, _ = run(capsys, "check-turan3", SUPER_CRITICAL)
        assert code == 2
        assert "verdict: inconclusive" in out

    def test_scale_flag(self, capsys):
        code, out, _ = run(capsys, "check-turan3", "binomial4", "--scale", "n!")
        assert code == 0
        assert "verdict: holds" in out

    def test_llc(self, capsys):
        code, out, _ = run(capsys, "check-llc", "inverse-catalan", "--ell", "2")
        assert code == 0
        assert "verdict: holds" in out

    def test_max_k_caps_retries(self, capsys):
        code, out, _ = run(
            capsys, "--json", "check-llc", "inverse-catalan", "--ell", "3", "--max-K", "4"
        )
        assert code == 2
        assert json.loads(out)["rule"] == "llc.insufficient-order"

    def test_max_k_default_reaches_boundary(self, capsys):
        code, out, _ = run(capsys, "--json", "check-llc", "inverse-catalan", "--ell", "3")
        assert code == 2
        assert json.loads(out)["rule"] == "llc.boundary"

    def test_verdict_json_payload(self, capsys):
        code, out, _ = run(capsys, "check-turan3", "franel3", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["result"] == "holds"
        assert doc["scaling"] == "factorial"
        assert doc["rule"].startswith("turan3.")


class TestCertifyAndVerify:
    def test_certify_writes_and_verifies(self, capsys, tmp_path):
        cert_path = tmp_path / "m.json"
        code, out, _ = run(capsys, "certify", "motzkin", "-o", str(cert_path))
        assert code == 0
        assert "holds for all n >= 2" in out
        assert cert_path.exists()
        code, out, _ = run(capsys, "verify", str(cert_path), "motzkin")
        assert code == 0
        assert "verified" in out

    def test_certify_json_mode(self, capsys, tmp_path):
        cert_path = tmp_path / "f.json"
        code, out, _ = run(capsys, "--json", "certify", "franel3", "-o", str(cert_path))
        assert code == 0
        doc = json.loads(out)
        assert doc == json.loads(cert_path.read_text())
        assert doc["holdsFrom"] == 2

    def test_certify_refusal_exit_one(self, capsys, tmp_path):
        code, _, err = run(capsys, "certify", "bn", "-o", str(tmp_path / "x.json"))
        assert code == 1
        assert "rational growth constant" in err

    def test_certify_window_only_fallback(self, capsys, tmp_path):
        # corners refuse on binomial4, so the command falls back to a
        # window-only certificate and reports inconclusive
        cert_path = tmp_path / "b4.json"
        code, out, _ = run(capsys, "certify", "binomial4", "-o", str(cert_path))
        assert code == 2
        assert "does not settle" in out
        assert "g(n) = (2*n^2 + 1) / (2*n^2)" in out
        assert "f(n) = (2*n^2 + 5) / (2*n^2)" in out
        doc = json.loads(cert_path.read_text())
        assert doc["kind"] == "u-window"
        assert doc["bounds"]["validFrom"] <= 200
        code, out, _ = run(capsys, "verify", str(cert_path), "binomial4")
        assert code == 0
        assert "verified" in out and "no sign conclusion" in out

    def test_certify_window_only_default_name(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        code, out, _ = run(capsys, "certify", "binomial4")
        assert code == 2
        assert (tmp_path / "binomial4.uwindow.json").exists()

    def test_verify_rejects_tampering(self, capsys, tmp_path):
        cert_path = tmp_path / "m.json"
        run(capsys, "certify", "motzkin", "-o", str(cert_path))
        doc = json.loads(cert_path.read_text())
        doc["holdsFrom"] = 1
        cert_path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", str(cert_path), "motzkin")
        assert code == 3
        assert "REJECTED" in out

    def test_verify_wrong_sequence(self, capsys, tmp_path):
        cert_path = tmp_path / "m.json"
        run(capsys, "certify", "motzkin", "-o", str(cert_path))
        code, out, _ = run(capsys, "verify", str(cert_path), "franel3")
        assert code == 3
        assert "REJECTED" in out

    def test_scale_spelling_variants(self, capsys, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run(capsys, "certify", "motzkin", "--scale", "n!", "-o", str(a))
        run(capsys, "certify", "motzkin", "--scale", "factorial", "-o", str(b))
        assert json.loads(a.read_text()) == json.loads(b.read_text())


class TestCorpusRun:
    def test_all_green(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "corpus", "run", "--cache-dir", str(tmp_path), "--seed", "7"
        )
        assert code == 0
        assert ", 0 failures" in out

    def test_json_deterministic(self, capsys, tmp_path):
        code, out1, _ = run(
            capsys, "--json", "corpus", "run", "--cache-dir", str(tmp_path)
        )
        assert code == 0
        code, out2, _ = run(
            capsys, "--json", "corpus", "run", "--cache-dir", str(tmp_path)
        )
        assert code == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["failures"] == 0
        assert doc["checks"] == len(doc["results"])


class TestProcessEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "turancert.cli", "terms", "apery", "--to", "5"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "1, 5, 73, 1445, 33001, 819005"

    def test_console_script(self):
        exe = shutil.which("turancert")
        if exe is None:
            pytest.skip("console script not installed")
        proc = subprocess.run([exe, "--version"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert "turancert" in proc.stdout
