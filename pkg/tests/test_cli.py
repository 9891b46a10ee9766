import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from syzstab.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestBoundCommand:
    def test_p3_rank_two(self):
        code, out, _ = run_cli("bound", "--catalog", "P3", "--rank", "2", "--degree", "3")
        assert code == 0
        report = json.loads(out)
        assert report["result"]["value"] == "21"
        assert report["result"]["branch"] == "RiemannRoch"

    def test_lemma_form(self):
        code, out, _ = run_cli("bound", "--catalog", "P3", "--rank", "2", "--degree", "3",
                               "--form", "lemma")
        assert code == 0
        assert json.loads(out)["result"]["value"] == "21"

    def test_explicit_variety(self):
        code, out, _ = run_cli("bound", "--dim", "2", "--h-top", "4", "--c1-h", "0",
                               "--degree", "4")
        assert code == 0
        report = json.loads(out)
        assert report["input"]["variety"]["genus"] == 3
        assert report["result"]["value"] == "4"

    def test_degree_range_csv(self):
        code, out, _ = run_cli("bound", "--catalog", "P2", "--degree", "0..12",
                               "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 14
        assert lines[0] == "branch,core,degree,value"
        # h0(O_P2(3)) = 10 exactly
        assert "RiemannRoch,9,3,10" in lines

    def test_negative_degree_is_inconsistent(self):
        code, _, err = run_cli("bound", "--catalog", "P2", "--degree", "-3")
        assert code == 3
        assert "degree" in err

    def test_missing_degree(self):
        code, _, err = run_cli("bound", "--catalog", "P2")
        assert code == 1
        assert "--degree" in err

    def test_unknown_catalog_name(self):
        code, _, err = run_cli("bound", "--catalog", "P9", "--degree", "2")
        assert code == 1
        assert "quartic-K3" in err  # the error lists what exists

    def test_catalog_and_dims_conflict(self):
        code, _, err = run_cli("bound", "--catalog", "P2", "--dim", "2", "--h-top", "1",
                               "--c1-h", "3", "--degree", "2")
        assert code == 1

    def test_bad_range(self):
        code, _, err = run_cli("bound", "--catalog", "P2", "--degree", "5..1")
        assert code == 1

    def test_odd_parity_variety(self):
        code, _, err = run_cli("bound", "--dim", "2", "--h-top", "1", "--c1-h", "2",
                               "--degree", "2")
        assert code == 3
        assert "odd" in err


class TestCheckCommand:
    def test_stable_point(self):
        code, out, _ = run_cli("check", "--catalog", "P2", "--degree", "2", "--h0", "6")
        assert code == 0
        report = json.loads(out)
        assert report["result"]["verdict"] == "Stable"
        assert report["result"]["condition2"]["lhs"] == "5"
        assert report["result"]["condition2"]["rhs"] == "4"
        assert report["result"]["condition1"]["status"] == "Vacuous"

    def test_rank_two_rejected(self):
        code, _, err = run_cli("check", "--catalog", "P2", "--rank", "2",
                               "--degree", "2", "--h0", "6")
        assert code == 1
        assert "rank 1" in err

    def test_hilbert_route_inconclusive(self):
        code, out, _ = run_cli("check", "--catalog", "quartic-K3", "--degree", "0",
                               "--hilbert", "2,0,2", "--regularity", "0", "--twist", "3")
        assert code == 0
        report = json.loads(out)
        assert report["result"]["verdict"] == "Inconclusive"
        assert report["result"]["degree"] == 12
        assert report["result"]["h0"] == 20

    def test_hilbert_route_stable(self):
        code, out, _ = run_cli("check", "--catalog", "quartic-K3", "--degree", "0",
                               "--hilbert", "2,0,2", "--regularity", "0", "--twist", "4")
        assert code == 0
        assert json.loads(out)["result"]["verdict"] == "Stable"

    def test_hilbert_route_needs_twist(self):
        code, _, err = run_cli("check", "--catalog", "quartic-K3", "--degree", "0",
                               "--hilbert", "2,0,2", "--regularity", "0")
        assert code == 1
        assert "--twist" in err

    def test_twist_below_regularity(self):
        code, _, err = run_cli("check", "--catalog", "quartic-K3", "--degree", "0",
                               "--hilbert", "2,0,2", "--regularity", "2", "--twist", "1")
        assert code == 1
        assert "regularity" in err

    def test_wrong_hilbert_coefficients(self):
        code, _, err = run_cli("check", "--catalog", "quartic-K3", "--degree", "0",
                               "--hilbert", "2,0,1", "--regularity", "0", "--twist", "3")
        assert code == 3
        assert "leading" in err

    def test_degree_zero_with_sections(self):
        code, _, err = run_cli("check", "--catalog", "P2", "--degree", "0", "--h0", "4")
        assert code == 3

    def test_h0_and_hilbert_conflict(self):
        code, _, err = run_cli("check", "--catalog", "P2", "--degree", "2", "--h0", "6",
                               "--hilbert", "1,3/2,1/2", "--regularity", "0", "--twist", "2")
        assert code == 1


class TestTwistCommand:
    def test_quartic_surface(self):
        code, out, _ = run_cli("twist", "--catalog", "quartic-K3", "--degree", "0",
                               "--hilbert", "2,0,2", "--regularity", "0")
        assert code == 0
        report = json.loads(out)
        assert report["result"]["k_min"] == 4
        assert report["result"]["cauchy_bound"] == "17/4"
        assert report["result"]["condition_polys"]["F"] == ["-1", "-13/2", "2"]
        assert report["result"]["condition_polys"]["G"] == ["4", "-12", "8"]

    def test_plane(self):
        code, out, _ = run_cli("twist", "--catalog", "P2", "--degree", "0",
                               "--hilbert", "1,3/2,1/2", "--regularity", "0")
        assert code == 0
        report = json.loads(out)
        assert report["result"]["k_min"] == 2
        assert "G" not in report["result"]["condition_polys"]

    def test_requires_hilbert(self):
        code, _, err = run_cli("twist", "--catalog", "P2", "--degree", "0")
        assert code == 1
        assert "--hilbert" in err

    def test_curve_not_applicable(self):
        code, _, err = run_cli("twist", "--catalog", "P1", "--degree", "0",
                               "--hilbert", "1,1", "--regularity", "0")
        assert code == 1
        assert "dimension" in err

    def test_bad_coefficient_string(self):
        code, _, err = run_cli("twist", "--catalog", "P2", "--degree", "0",
                               "--hilbert", "1,1.5,0.5", "--regularity", "0")
        assert code == 1
        assert "hilbert" in err


class TestCatalogCommand:
    def test_list(self):
        code, out, _ = run_cli("catalog")
        assert code == 0
        entries = json.loads(out)["result"]["entries"]
        assert len(entries) == 18
        assert entries[0]["name"] == "P1"

    def test_show(self):
        code, out, _ = run_cli("catalog", "show", "quartic-K3")
        assert code == 0
        assert json.loads(out)["result"]["entry"]["genus"] == 3

    def test_show_unknown(self):
        code, _, err = run_cli("catalog", "show", "nope")
        assert code == 1
        assert "available" in err

    def test_csv_listing(self):
        code, out, _ = run_cli("catalog", "--format", "csv")
        assert code == 0
        assert len(out.splitlines()) == 19


class TestVerifyCommand:
    def test_small_grid_passes(self):
        code, out, _ = run_cli("verify", "--grid", "small", "--seed", "0")
        assert code == 0
        result = json.loads(out)["result"]
        assert result["total_failed"] == 0
        assert {c["name"] for c in result["checks"]} >= {
            "telescoping-identity",
            "restriction-dominance",
            "certificate-soundness",
        }

    def test_deterministic_for_seed(self):
        _, out1, _ = run_cli("verify", "--grid", "small", "--seed", "7")
        _, out2, _ = run_cli("verify", "--grid", "small", "--seed", "7")
        assert out1 == out2


class TestInputFiles:
    def test_file_matches_flags(self, tmp_path):
        problem = {
            "variety": {"name": "quartic-K3"},
            "sheaf": {"rank": 1, "degree": 0, "hilbert": ["2", "0", "2"], "regularity": 0},
        }
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(problem))
        _, from_file, _ = run_cli("twist", "--input", str(path))
        _, from_flags, _ = run_cli("twist", "--catalog", "quartic-K3", "--degree", "0",
                                   "--hilbert", "2,0,2", "--regularity", "0")
        assert from_file == from_flags

    def test_file_with_h0(self, tmp_path):
        problem = {"variety": {"name": "P2"}, "sheaf": {"rank": 1, "degree": 2, "h0": 6}}
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(problem))
        code, out, _ = run_cli("check", "--input", str(path))
        assert code == 0
        assert json.loads(out)["result"]["verdict"] == "Stable"

    def test_input_excludes_flags(self, tmp_path):
        path = tmp_path / "problem.json"
        path.write_text(json.dumps({"variety": {"name": "P2"},
                                    "sheaf": {"rank": 1, "degree": 2}}))
        code, _, err = run_cli("bound", "--input", str(path), "--degree", "3")
        assert code == 1
        assert "--degree" in err

    def test_missing_file(self):
        code, _, err = run_cli("bound", "--input", "/nonexistent.json")
        assert code == 1

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, err = run_cli("bound", "--input", str(path))
        assert code == 1
        assert "JSON" in err


class TestOutputContracts:
    def test_byte_identical_repeats(self):
        invocations = [
            ("bound", "--catalog", "P3", "--rank", "2", "--degree", "3"),
            ("check", "--catalog", "quartic-K3", "--degree", "12", "--h0", "20"),
            ("twist", "--catalog", "quartic-K3", "--degree", "0",
             "--hilbert", "2,0,2", "--regularity", "0"),
            ("catalog",),
        ]
        for argv in invocations:
            _, first, _ = run_cli(*argv)
            _, second, _ = run_cli(*argv)
            assert first == second

    def test_json_round_trip(self):
        _, out, _ = run_cli("twist", "--catalog", "quartic-K3", "--degree", "0",
                            "--hilbert", "2,0,2", "--regularity", "0")
        assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out

    def test_approx_keeps_exact(self):
        code, out, _ = run_cli("check", "--catalog", "quartic-K3", "--degree", "12",
                               "--h0", "20", "--approx")
        report = json.loads(out)
        cond = report["result"]["condition2"]
        assert cond["rhs"] == "423/22"
        assert cond["rhs_approx"] == pytest.approx(19.227272727)
        assert "lhs_approx" not in cond  # integers carry no companion

    def test_table_format(self):
        code, out, _ = run_cli("check", "--catalog", "P2", "--degree", "2", "--h0", "6",
                               "--format", "table")
        assert code == 0
        assert "result.verdict" in out
        assert "Stable" in out

    def test_no_subcommand(self):
        code, _, err = run_cli()
        assert code == 1

    def test_usage_error_message_shape(self):
        code, _, err = run_cli("bound", "--catalog", "P2", "--degree", "x")
        assert code == 1
        assert err.startswith("error:")
