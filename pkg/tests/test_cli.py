import io
import json
import subprocess
import sys

import pytest

from poisson_kit.cli import corpus_names, run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_check_examples():
    assert call("check", "--structure", "corpus:sl2") == (0, '{"poisson":true}\n')
    code, out = call("check", "--structure", "corpus:nonpoisson")
    data = json.loads(out)
    assert code == 0 and data["poisson"] is False
    assert data["witness"]["generators"] == ["x1", "x2", "x3"]


def test_potential_examples():
    assert call("potential", "--structure", "corpus:plane-a1b0c1", "--bound", "1") == \
        (0, '{"exists":false}\n')
    code, out = call("potential", "--structure", "corpus:sl2")
    assert code == 0 and json.loads(out)["exists"] is True


def test_cohomology_table_matches_oracle():
    from poisson_kit import homalg, poisson as ps
    code, out = call("cohomology", "--structure", "corpus:sl2", "--kmax", "2", "--dmax", "4")
    assert code == 0
    oracle = homalg.ce_lie_algebra_cohomology(ps.sl2_constants(), 4, 2).to_json()
    assert json.loads(out)["rows"] == oracle["rows"]


def test_inline_file_and_stdin(tmp_path):
    text = '{"vars": ["a", "b"], "bivector": {"a,b": "a"}}'
    path = tmp_path / "s.json"
    path.write_text(text)
    assert call("check", "--structure", str(path))[1] == call("check", "--structure", text)[1]
    proc = subprocess.run([sys.executable, "-m", "poisson_kit", "check", "--structure", "-"],
                          input=text, capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == '{"poisson":true}\n'


@pytest.mark.parametrize("bad", [
    '{"vars": ["a"], "bivector": {}, "extra": 1}',
    '{"vars": ["a", "b"], "bivector": {"0,1": "a b"}}',
    '{"vars": ["a", "b"], "bivector": {"0,2": "a"}}',
    '{"vars": ["a", "b"], "bivector": {"0,1": 3}}',
    '{"vars": ["a", "a"], "bivector": {}}',
    '{"vars": "ab", "bivector": {}}',
    '{not json',
])
def test_validation_errors(bad):
    code, out = call("check", "--structure", bad)
    assert code == 2 and json.loads(out)["error"]["kind"] == "input"


def test_usage_errors():
    assert call("frobnicate")[0] == 2
    assert call("cohomology")[0] == 2
    assert call("cohomology", "--structure", "corpus:sl2", "--kmax", "-1")[0] == 2
    assert call("cohomology", "--structure", "corpus:nonpoisson")[0] == 2
    assert call("check", "--structure", "/nonexistent/file.json")[0] == 2
    assert call("check", "--structure", "corpus:nope")[0] == 2


def test_inhomogeneous_and_cutoff():
    s = '{"vars": ["u1", "u2"], "bivector": {"0,1": "u1^2 + u2"}}'
    assert call("cohomology", "--structure", s)[0] == 2
    code, out = call("cohomology", "--structure", s, "--cutoff")
    assert code == 0 and json.loads(out)["mode"] == "cutoff"


def test_curvature_dirac_quantize():
    code, out = call("curvature", "--structure", "corpus:sl2", "--mode", "real")
    data = json.loads(out)
    assert code == 0 and data["bianchi_zero"]
    assert data["curvature"]["coeffs"]["0,1"] == "2*e"
    code, out = call("curvature", "--structure", "corpus:canonical-plane",
                     "--theta", '{"k": 1, "coeffs": {"0": "u1*u2"}}')
    assert code == 0
    code, out = call("dirac", "--structure", "corpus:sl2", "--observable", "e*h",
                     "--observable", "f^2", "--section", "e + i*h")
    assert code == 0 and json.loads(out)["zero"]
    assert call("dirac", "--structure", "corpus:sl2", "--observable", "e")[0] == 2
    code, out = call("quantize-op", "--structure", "corpus:sl2", "--observable", "1",
                     "--section", "e")
    assert json.loads(out)["actions"][0]["result"] == "e"
    code, out = call("quantize-op", "--observable", "x0*p1 + x1*p0", "--section", "p0^2")
    row = json.loads(out)["actions"][0]
    assert row["closed_form_agrees"] and row["amplitude"] == "-2*i*p0*p1"
    assert call("quantize-op", "--observable", "x0")[0] == 2
    assert call("dirac", "--structure", "corpus:plane-a1b0c1", "--observable", "u1",
                "--observable", "u2")[0] == 2
    bad_theta = '{"k": 1, "coeffs": {}}'
    assert call("dirac", "--structure", "corpus:canonical-plane", "--observable", "u1",
                "--observable", "u2", "--theta", bad_theta)[0] == 2


def test_formatting_flags():
    code, out = call("check", "--structure", "corpus:sl2", "--json-indent", "2")
    assert out == '{\n  "poisson": true\n}\n'
    code, out = call("homology", "--structure", "corpus:aff1", "--pretty")
    assert out.startswith("homology (graded)")


def test_reduce_demo_runs():
    code, out = call("reduce-demo")
    assert code == 0 and json.loads(out)["hamiltonian_J"][0] == "-2*p0"


def test_corpus_bundled():
    assert {"sl2", "so3", "aff1", "nonpoisson", "magnetic"} <= set(corpus_names())
