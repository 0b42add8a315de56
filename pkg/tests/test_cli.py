import json
from importlib import resources

import pytest

from symint.cli import (EXIT_CORPUS, EXIT_FAIL, EXIT_IMPROPER, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, main,
                        run_corpus)
from symint.parser import parse, print_expr

CORPUS = resources.files("symint") / "data" / "paper_corpus.jsonl"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


# -- integrate ---------------------------------------------------------------------------------------

def test_integrate_indefinite(capsys):
    code, out, _ = run(capsys, "integrate", "1/(x^2+1)")
    assert code == EXIT_OK and out.strip() == "atan(x)"


def test_integrate_definite(capsys):
    code, out, _ = run(capsys, "integrate", "1/(x^2+1)", "--from", "0", "--to", "1")
    assert code == EXIT_OK
    assert out.split() == ["pi/4", "0.7853981634"]


def test_integrate_digits(capsys):
    code, doc = run_json(capsys, "integrate", "1/(x^2+1)", "--from", "0", "--to", "1", "--digits", "30")
    assert code == EXIT_OK and doc["numeric"] == "0.785398163397448309615660845820"


def test_integrate_other_variable(capsys):
    code, out, _ = run(capsys, "integrate", "1/(u^2+1)", "--var", "u")
    assert code == EXIT_OK and out.strip() == "atan(u)"


def test_integrate_trig(capsys):
    code, out, _ = run(capsys, "integrate", "x*sin(x)/(1+cos(x)^2)", "--from", "0", "--to", "pi")
    assert code == EXIT_OK and out.split()[0] == "pi^2/4"


@pytest.mark.parametrize("argv,expected", [
    (["integrate", "1/x", "--from", "-1", "--to", "1"], EXIT_IMPROPER),
    (["integrate", "1/(x^3-2)"], EXIT_UNSUPPORTED),
    (["integrate", "1/(x^2+"], EXIT_PARSE),
    (["integrate", "exp(x)"], EXIT_PARSE),
    (["integrate", "sin(x)^2/x"], EXIT_UNSUPPORTED),
])
def test_integrate_exit_codes(capsys, argv, expected):
    code, _, err = run(capsys, *argv)
    assert code == expected and err


def test_error_json_document(capsys):
    code, doc = run_json(capsys, "integrate", "1/x", "--from", "-1", "--to", "1")
    assert code == EXIT_IMPROPER
    assert doc["status"] == "error" and doc["error"] == "ImproperIntegral"


def test_naive_splitting_reports_discrepancy(capsys):
    code, doc = run_json(capsys, "integrate", "(x^4-3*x^2+6)/(x^6-5*x^4+5*x^2+4)", "--from", "1", "--to", "2",
                         "--antiderivative", "atan((x^5-3*x^3+x)/2)+atan(x^3)+atan(x)", "--naive-splitting")
    assert code == EXIT_OK and "pi_discrepancy" in doc


def test_naive_splitting_on_discontinuous_form(capsys):
    f = "(x^2+2*x+4)/(x^4-7*x^2+2*x+17)"
    F = "1/2*atan((-x-1)/(x^2-4))-1/2*atan((x+1)/(x^2-4))"
    code, doc = run_json(capsys, "integrate", f, "--from", "0", "--to", "4", "--antiderivative", F,
                         "--naive-splitting")
    assert code == EXIT_OK
    assert doc["pi_discrepancy"] == -1
    assert any(d.startswith("warning") for d in doc["diagnostics"])
    assert doc["value"] == "-atan(1/4)-atan(5/12)"
    code, doc = run_json(capsys, "integrate", f, "--from", "0", "--to", "4", "--antiderivative", F)
    assert code == EXIT_OK and "pi_discrepancy" not in doc
    assert doc["numeric"].startswith("2.50182")


def test_rejects_wrong_antiderivative(capsys):
    code, _, _ = run(capsys, "integrate", "1/(x^2+1)", "--from", "0", "--to", "1", "--antiderivative", "atan(2*x)")
    assert code == EXIT_UNSUPPORTED


def test_json_round_trip(capsys):
    for argv in (["integrate", "(x^4-3*x^2+6)/(x^6-5*x^4+5*x^2+4)"],
                 ["integrate", "(x^2+2*x+4)/(x^4-7*x^2+2*x+17)", "--from", "0", "--to", "3"],
                 ["integrate", "1/(x^2-2)"]):
        code, doc = run_json(capsys, *argv)
        assert code == EXIT_OK and doc["status"] == "ok"
        text = doc.get("antiderivative", doc.get("value"))
        tree = parse(text)
        assert parse(str(text)) == tree
        assert parse(print_expr(tree)) == tree


# -- check-equal and oracle ------------------------------------------------------------------------------

def test_check_equal(capsys):
    code, out, _ = run(capsys, "check-equal", "atan(1/2)+atan(2)", "pi/2")
    assert code == EXIT_OK and out.startswith("Equal")
    code, out, _ = run(capsys, "check-equal", "atan(3)+atan(2)", "7/4*pi")
    assert code == EXIT_FAIL and out.startswith("NotEqual")
    code, doc = run_json(capsys, "check-equal", "5/4*pi-atan(75/11)", "pi-atan(1/4)-atan(5/12)")
    assert code == EXIT_OK and doc["verdict"] == "Equal"


def test_check_equal_rejects_variables(capsys):
    code, _, _ = run(capsys, "check-equal", "atan(x)", "pi")
    assert code != EXIT_OK


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "(x^4-3*x^2+6)/(x^6-5*x^4+5*x^2+4)", "--from", "1", "--to", "2")
    assert code == EXIT_OK and out.startswith("2.81984209919315")
    code, doc = run_json(capsys, "oracle", "x", "--from", "0", "--to", "1")
    assert float(doc["numeric"]) == pytest.approx(0.5, abs=1e-12)


def test_digits_out_of_range(capsys):
    with pytest.raises(SystemExit):
        main(["integrate", "1/(x^2+1)", "--digits", "500"])
    capsys.readouterr()


# -- corpus ----------------------------------------------------------------------------------------------

def test_shipped_corpus_passes(capsys):
    code, out, _ = run(capsys, "corpus", str(CORPUS))
    assert code == EXIT_OK, out
    assert "0 failed" in out.splitlines()[-1]


def test_corpus_deterministic(capsys):
    first = run(capsys, "corpus", str(CORPUS))
    second = run(capsys, "corpus", str(CORPUS))
    assert first == second


def test_corpus_empty(tmp_path, capsys):
    p = tmp_path / "empty.jsonl"
    p.write_text("")
    code, out, _ = run(capsys, "corpus", str(p))
    assert code == EXIT_OK and "0 entries" in out


def test_corpus_failures(tmp_path, capsys):
    p = tmp_path / "bad.jsonl"
    p.write_text('{"id": "ok", "input": "1/(x^2+1)", "expect": "atan(x)"}\n'
                 "not json\n"
                 '{"id": "wrong", "input": "1/(x^2+1)", "lo": "0", "hi": "1", "expect_value": "0.8"}\n')
    code, out, _ = run(capsys, "corpus", str(p))
    assert code == EXIT_CORPUS
    assert any(line.startswith("line 2") and "malformed entry" in line for line in out.splitlines())
    wrong = next(line for line in out.splitlines() if line.startswith("wrong"))
    assert "FAIL" in wrong and "1.460E-2" in wrong  # reported delta
    assert out.splitlines()[-1] == "summary: 3 entries, 1 passed, 2 failed"


def test_run_corpus_rows():
    rows, failures = run_corpus(['{"id": "e", "kind": "equal", "input": "atan(1)", "expect": "pi/4"}'])
    assert failures == 0 and rows[0][:3] == ("e", "equal", True)
