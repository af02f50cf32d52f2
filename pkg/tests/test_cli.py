import json

from betaorbit.cli import main

GOLDEN = "-1,-1,1"
QUINTIC = "-1,-1,-1,-1,0,1"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# === pisot ===

def test_pisot_exit_codes(capsys):
    assert run(capsys, "pisot", "--minpoly", QUINTIC)[0] == 0
    assert run(capsys, "pisot", "--minpoly", "-2,1")[0] == 0
    assert run(capsys, "pisot", "--minpoly", "-3,0,1")[0] == 2
    assert run(capsys, "pisot", "--minpoly", "1,-1,-1,-1,1")[0] == 3  # Salem-type


def test_pisot_prints_certificate_json(capsys):
    code, out, _ = run(capsys, "pisot", "--minpoly", GOLDEN)
    blob = json.loads(out)
    assert blob["is_pisot"] is True
    assert blob["status"] == "pisot"


# === orbit ===

def test_orbit_prints_k(capsys):
    code, out, _ = run(capsys, "orbit", "--minpoly", QUINTIC, "-m", "1", "-x", "1/(b^2-1)")
    assert code == 0
    assert out.splitlines()[0] == "k = 10"


def test_orbit_golden(capsys):
    code, out, _ = run(capsys, "orbit", "--minpoly", GOLDEN, "-m", "1", "-x", "1")
    assert code == 0
    assert out.splitlines()[0] == "k = 4"


def test_orbit_zero_point(capsys):
    code, out, _ = run(capsys, "orbit", "--minpoly", GOLDEN, "-m", "1", "-x", "0")
    assert code == 0
    assert out.splitlines()[0] == "k = 1"


def test_orbit_divergence_exit(capsys):
    code, out, _ = run(capsys, "orbit", "--minpoly", "-2,0,1", "-m", "1", "-x", "1",
                       "--state-cap", "200")
    assert code == 4
    assert "diverged" in out


def test_orbit_outside_interval(capsys):
    code, _, err = run(capsys, "orbit", "--minpoly", GOLDEN, "-m", "1", "-x", "0-1")
    assert code == 65


def test_orbit_writes_files(tmp_path, capsys):
    base = str(tmp_path / "orbit")
    code, _, _ = run(capsys, "orbit", "--minpoly", GOLDEN, "-m", "1", "-x", "1",
                     "--out", base)
    assert code == 0
    graph = json.loads((tmp_path / "orbit.json").read_text())
    assert len(graph["states"]) == 4
    dot = (tmp_path / "orbit.dot").read_text()
    assert dot.startswith("digraph orbit {")
    matrix = json.loads((tmp_path / "orbit.matrix.json").read_text())
    assert matrix["k"] == 4
    csv = (tmp_path / "orbit.matrix.csv").read_text()
    assert csv.splitlines()[0] == "0,1,1,0"


def test_orbit_json_state_roundtrips_as_input(capsys):
    # a state written by one command is accepted unchanged as -x downstream
    code, out, _ = run(capsys, "orbit", "--minpoly", QUINTIC, "-m", "1",
                       "-x", "1/(b^2-1)", "--format", "json")
    assert code == 0
    blob = json.loads(out.split("\n", 1)[1])
    state0 = json.dumps(blob["states"][0])
    code2, out2, _ = run(capsys, "orbit", "--minpoly", QUINTIC, "-m", "1", "-x", state0)
    assert code2 == 0
    assert out2.splitlines()[0] == "k = 10"


# === dimension ===

def test_dimension_quintic_json(capsys):
    code, out, _ = run(capsys, "dimension", "--minpoly", QUINTIC, "-m", "1",
                       "-x", "1/(b^2-1)", "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["condition1"] == "VerifiedPrimitive"
    assert blob["char_poly"] == [1, 0, 0, 0, 0, -2, 0, 0, -1, 0, 1]
    alo, ahi = map(float, blob["alpha"])
    assert alo <= 1.3247179572448 <= ahi
    dlo, dhi = map(float, blob["dim"])
    assert dlo <= 0.405685231376 <= dhi
    assert len(blob["eigenvector"]) == 10


def test_dimension_degenerate_exit_five(capsys):
    code, out, _ = run(capsys, "dimension", "--minpoly", GOLDEN, "-m", "1", "-x", "1")
    assert code == 5
    assert "condition1: FailedPeripheralSpectrum" in out
    assert "alpha in [1." in out
    assert "dim <=" in out


def test_dimension_single_state(capsys):
    code, out, _ = run(capsys, "dimension", "--minpoly", GOLDEN, "-m", "1", "-x", "0")
    assert code == 0
    assert "dim in [0." in out


# === expand ===

def test_expand_golden_greedy(capsys):
    code, out, _ = run(capsys, "expand", "--minpoly", GOLDEN, "-m", "1", "-x", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "11(0)"
    assert lines[1] == "preperiod 2, period 1"


def test_expand_zero(capsys):
    code, out, _ = run(capsys, "expand", "--minpoly", GOLDEN, "-m", "1", "-x", "0")
    assert code == 0
    assert out.splitlines()[0] == "(0)"


def test_expand_quintic_periodic(capsys):
    for rule in ("greedy", "lazy", "alternating"):
        code, out, _ = run(capsys, "expand", "--minpoly", QUINTIC, "-m", "1",
                           "-x", "1/(b^2-1)", "--rule", rule)
        assert code == 0


def test_expand_no_period_exit(capsys):
    code, out, _ = run(capsys, "expand", "--minpoly", GOLDEN, "-m", "1", "-x", "1",
                       "--steps", "1")
    assert code == 7
    assert "no period within 1 steps" in out


# === count ===

def test_count_both_methods_agree(capsys):
    code, out, _ = run(capsys, "count", "--minpoly", QUINTIC, "-m", "1",
                       "-x", "1/(b^2-1)", "-n", "10")
    assert code == 0
    lines = dict(line.split(": ") for line in out.splitlines())
    assert lines["matrix"] == lines["brute"] == "26"


def test_count_single_method(capsys):
    code, out, _ = run(capsys, "count", "--minpoly", GOLDEN, "-m", "1", "-x", "1",
                       "-n", "20", "--method", "brute")
    assert code == 0
    assert out.strip() == "brute: 21"


# === spectrum ===

def test_spectrum_stdout_and_file(tmp_path, capsys):
    code, out, _ = run(capsys, "spectrum", "--minpoly", "-2,1", "-m", "1", "--nmax", "3")
    assert code == 0
    assert out.splitlines()[0] == "level,count,min_gap_lo,min_gap_hi,max_gap_lo,max_gap_hi"
    target = tmp_path / "spec.csv"
    code, out2, _ = run(capsys, "spectrum", "--minpoly", "-2,1", "-m", "1",
                        "--nmax", "3", "--out", str(target))
    assert code == 0
    assert target.read_text() == out


def test_orbit_dot_format(capsys):
    code, out, _ = run(capsys, "orbit", "--minpoly", GOLDEN, "-m", "1", "-x", "1",
                       "--format", "dot")
    assert code == 0
    assert "digraph orbit {" in out
    assert '-> 2 [label="0"];' in out


def test_root_rank_flag(capsys):
    # z^2 - 5z + 6 = (z-2)(z-3); rank 1 picks the root 2
    code, out, _ = run(capsys, "pisot", "--minpoly", "6,-5,1", "--root-rank", "1")
    blob = json.loads(out)
    assert blob["beta_lower"] == "2"


def test_dimension_tol_flag(capsys):
    code, out, _ = run(capsys, "dimension", "--minpoly", QUINTIC, "-m", "1",
                       "-x", "1/(b^2-1)", "--tol", "1e-6", "--format", "json")
    assert code == 0
    alo, ahi = map(float, json.loads(out)["alpha"])
    assert ahi - alo <= 1e-6


# === usage errors and determinism ===

def test_usage_errors_exit_64(capsys):
    assert run(capsys, "orbit", "--minpoly", GOLDEN, "-m", "1", "-x", "1/(q)")[0] == 64
    assert run(capsys, "orbit", "--minpoly", "1,1,notint", "-m", "1", "-x", "1")[0] == 64
    assert run(capsys, "pisot", "--minpoly", "1,-2,1")[0] == 64  # not squarefree
    assert run(capsys, "orbit", "--minpoly", GOLDEN, "-m", "0", "-x", "1")[0] == 64


def test_identical_configs_identical_bytes(capsys):
    args = ("dimension", "--minpoly", QUINTIC, "-m", "1", "-x", "1/(b^2-1)",
            "--format", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
