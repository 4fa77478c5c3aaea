import json
import math

from aliquot.cli import build_parser, combine_lambda, run


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


class TestExitCodes:
    def test_unknown_verb(self, capsys):
        assert run(["frobnicate"]) == 1

    def test_unknown_flag(self):
        assert run(["alpha", "--frobs", "3"]) == 1

    def test_parameter_error(self, tmp_path):
        assert run(["alpha", "--N", "2", "--out", str(tmp_path)]) == 1

    def test_resource_error(self, tmp_path):
        # Sieve range beyond the supported bound.
        assert run(["means", "--class", "even", "--N", "1e11",
                    "--out", str(tmp_path)]) == 2

    def test_success(self, tmp_path):
        assert run(["means", "--class", "even", "--N", "1e3",
                    "--out", str(tmp_path)]) == 0


class TestMeansVerb:
    def test_reference_value_and_reports(self, tmp_path):
        assert run(["means", "--class", "even", "--N", "1e4",
                    "--out", str(tmp_path)]) == 0
        doc = read_json(tmp_path / "means.json")
        assert abs(doc["log_mean"] - (-0.0335201796)) < 1e-8
        assert doc["class"] == "even"
        csv_text = (tmp_path / "means.csv").read_text().splitlines()
        assert csv_text[0] == "class,N,arithmetic_mean,log_mean,closed_form,error_radius"
        assert csv_text[1].startswith("even,10000,")

    def test_scientific_notation_flag(self, tmp_path):
        assert run(["means", "--class", "odd", "--N", "2e3",
                    "--out", str(tmp_path)]) == 0
        assert read_json(tmp_path / "means.json")["N"] == 2000


class TestTraceVerb:
    def test_amicable(self, tmp_path):
        assert run(["trace", "220", "--max-steps", "10", "--out", str(tmp_path)]) == 0
        doc = read_json(tmp_path / "trace.json")
        assert doc["classification"]["kind"] == "cycle"
        assert doc["classification"]["cycle_length"] == 2
        assert doc["terms"] == ["220", "284", "220"]


class TestAlphaVerb:
    def test_reference_sums(self, tmp_path):
        assert run(["alpha", "--N", "1e4", "--L", "15", "--M", "15",
                    "--out", str(tmp_path)]) == 0
        doc = read_json(tmp_path / "alpha.json")
        assert abs(doc["sums_value"] - 0.6983072233) < 1e-9
        assert doc["params"] == {"N": 10000, "L": 15, "M": 15}

    def test_reference_sums_1e6(self, tmp_path):
        assert run(["alpha", "--N", "1e6", "--L", "15", "--M", "15",
                    "--out", str(tmp_path)]) == 0
        doc = read_json(tmp_path / "alpha.json")
        assert abs(doc["sums_value"] - 0.6983169710) < 1e-9


class TestBetaVerb:
    def test_small_run_writes_reports(self, tmp_path):
        assert run(["beta", "--J", "2", "--Nj", "1e4", "--e", "1,0.75",
                    "--out", str(tmp_path)]) == 0
        doc = read_json(tmp_path / "beta.json")
        assert doc["lower_bound"] > 0.6
        assert len(doc["terms"]) == 2
        csv_lines = (tmp_path / "beta.csv").read_text().splitlines()
        assert len(csv_lines) == 3

    def test_stop_and_resume(self, tmp_path):
        ckpt = tmp_path / "ckpt"
        args = ["beta", "--J", "1", "--Nj", "2e5", "--e", "1",
                "--block-size", "16384", "--checkpoint-dir", str(ckpt),
                "--out", str(tmp_path / "a")]
        assert run(args + ["--stop-after-blocks", "3"]) == 0
        assert read_json(tmp_path / "a" / "beta.json")["status"] == "incomplete"
        assert run(args) == 0
        resumed = read_json(tmp_path / "a" / "beta.json")
        assert run(["beta", "--J", "1", "--Nj", "2e5", "--e", "1",
                    "--block-size", "16384", "--out", str(tmp_path / "b")]) == 0
        oneshot = read_json(tmp_path / "b" / "beta.json")
        assert resumed["lower_bound"] == oneshot["lower_bound"]
        assert resumed["terms"][0]["main_term"] == oneshot["terms"][0]["main_term"]


class TestLambdaVerb:
    def test_small_lambda_run(self, tmp_path):
        assert run(["lambda", "--N", "1e4", "--J", "2", "--Nj", "1e4",
                    "--e", "1,0.75", "--out", str(tmp_path)]) == 0
        alpha_doc = read_json(tmp_path / "alpha.json")
        beta_doc = read_json(tmp_path / "beta.json")
        lam_doc = read_json(tmp_path / "lambda.json")
        expected = alpha_doc["upper_bound"] - beta_doc["lower_bound"]
        assert abs(lam_doc["lambda_upper"] - expected) < 1e-14
        assert lam_doc["mu_upper"] >= math.exp(lam_doc["lambda_upper"])
        assert (lam_doc["mu_upper"] < 1.0) == (lam_doc["lambda_upper"] < 0.0)


class TestConfigFile:
    def test_config_supplies_values_flags_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"N": 500, "mean_class": "odd"}))
        assert run(["means", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        assert read_json(tmp_path / "means.json")["class"] == "odd"
        assert read_json(tmp_path / "means.json")["N"] == 500
        assert run(["means", "--config", str(cfg), "--N", "700",
                    "--out", str(tmp_path)]) == 0
        assert read_json(tmp_path / "means.json")["N"] == 700

    def test_missing_config_file(self, tmp_path):
        assert run(["means", "--config", str(tmp_path / "nope.json"),
                    "--out", str(tmp_path)]) == 1


class TestReproducibility:
    def test_rerun_reproduces_results(self, tmp_path):
        run(["means", "--class", "even", "--N", "5e3", "--out", str(tmp_path / "a")])
        run(["means", "--class", "even", "--N", "5e3", "--out", str(tmp_path / "b")])
        a = read_json(tmp_path / "a" / "means.json")
        b = read_json(tmp_path / "b" / "means.json")
        a.pop("provenance")
        b.pop("provenance")
        assert a == b


class TestCombineLambda:
    def test_equal_bounds_give_zero(self):
        from aliquot.alpha import AlphaParams, AlphaResult
        from aliquot.beta import BetaSummary
        from aliquot.numerics import CertifiedValue

        alpha_result = AlphaResult(
            AlphaParams(10, 2, 2), CertifiedValue(0.7, 0.0), 0.0, 0.7, 0, 0.0
        )
        beta_result = BetaSummary(CertifiedValue(0.7, 0.0), [], 0.0)
        report = combine_lambda(alpha_result, beta_result)
        assert abs(report.lambda_upper) < 1e-15
        assert report.mu_upper >= 1.0

    def test_parser_builds(self):
        parser = build_parser()
        assert parser.prog == "alq"
