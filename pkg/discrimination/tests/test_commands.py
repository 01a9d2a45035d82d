from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from io import StringIO
from pathlib import Path
import json
import logging
import math
import tempfile

from discrimination.ensembles import make_em
from discrimination.measures import i_theta
from discrimination.runner import RunConfig, run
from discrimination.serializers import dumps, ensemble_serializer


def call(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


class CommandTests(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_sweep_csv(self):
        lines = call("sweep", "--M", "3", "--points", "1000", "--format", "csv").splitlines()
        self.assertEqual(lines[0], "theta_rad,info_nats")
        self.assertEqual(len(lines), 1001)
        values = [float(line.split(",")[1]) for line in lines[1:]]
        self.assertAlmostEqual(max(values), math.log(1.5), delta=1e-6)

    def test_sweep_json(self):
        data = json.loads(call("sweep", "--M", "4", "--points", "8", "--format", "json"))
        self.assertEqual(len(data["theta_rad"]), 8)
        self.assertEqual(len(data["info_nats"]), 8)

    def test_construct_w_weights(self):
        data = json.loads(call("construct", "w", "--M", "5", "--m", "2", "--n", "2", "--format", "json"))
        self.assertEqual(data["dim"], 2)
        self.assertEqual(len(data["elements"]), 3)
        weights = sorted(data["weights"])
        for weight, expected in zip(weights, (0.552786, 0.552786, 0.894427)):
            self.assertAlmostEqual(weight, expected, delta=1e-6)

    def test_construct_rank1(self):
        data = json.loads(call("construct", "covariant", "--M", "4", "--format", "rank1"))
        self.assertEqual(len(data["weights"]), 4)
        for weight in data["weights"]:
            self.assertAlmostEqual(weight, 0.5, delta=1e-12)

    def test_construct_pairs(self):
        data = json.loads(call("construct", "pairs", "--M", "7"))
        pairs = [(p["m"], p["n"]) for p in data["pairs"]]
        self.assertIn([2, 2], [list(pair) for pair in pairs])
        self.assertGreaterEqual(data["class_count"], 2)

    def test_construct_infeasible_pair_exits_1(self):
        with self.assertRaises(CommandError) as cm:
            call("construct", "w", "--M", "7", "--m", "1", "--n", "1")
        self.assertEqual(cm.exception.returncode, 1)
        self.assertIn("a^2 + b^2 <= 2", str(cm.exception))

    def test_construct_missing_parameter_exits_1(self):
        with self.assertRaises(CommandError) as cm:
            call("construct", "subgroup", "--M", "6")
        self.assertEqual(cm.exception.returncode, 1)
        self.assertIn("--k", str(cm.exception))

    def test_scan_in_bits(self):
        data = json.loads(call("scan", "--M", "3", "--grid", "48", "--unit", "bits"))
        self.assertAlmostEqual(data["best_value_bits"], 0.584963, delta=1e-6)

    def test_scan_csv(self):
        lines = call("scan", "--M", "4", "--grid", "16", "--refine-iters", "0", "--format", "csv").splitlines()
        self.assertEqual(len(lines), 2)
        self.assertIn("best_value_nats", lines[0])

    def test_identical_invocations_give_identical_output(self):
        first = call("scan", "--M", "5", "--grid", "16")
        second = call("scan", "--M", "5", "--grid", "16")
        self.assertEqual(first, second)
        path_a, path_b = self.dir / "a.csv", self.dir / "b.csv"
        call("sweep", "--M", "7", "--points", "50", "--output", str(path_a))
        call("sweep", "--M", "7", "--points", "50", "--output", str(path_b))
        self.assertEqual(path_a.read_bytes(), path_b.read_bytes())

    def test_unit_conversion(self):
        nats = json.loads(call("info", "--M", "5"))
        bits = json.loads(call("info", "--M", "5", "--unit", "bits"))
        self.assertAlmostEqual(bits["mutual_information"], nats["mutual_information"] / math.log(2), delta=1e-12)
        self.assertAlmostEqual(bits["accessible_information"], nats["accessible_information"] / math.log(2), delta=1e-12)

    def test_info_reports_strategy(self):
        data = json.loads(call("info", "--M", "3", "--family", "w", "--m", "1", "--n", "1"))
        self.assertAlmostEqual(data["mutual_information"], math.log(1.5), delta=1e-10)
        self.assertAlmostEqual(data["accessible_information"], math.log(1.5), delta=1e-12)
        self.assertTrue(data["angles_on_optimal_lattice"])
        self.assertEqual(data["element_count_bound"], 3)

    def test_info_from_files(self):
        ensemble_path = self.dir / "ensemble.json"
        povm_path = self.dir / "povm.json"
        ensemble_path.write_text(dumps(ensemble_serializer(make_em(3))))
        call("construct", "covariant", "--M", "3", "--output", str(povm_path))
        data = json.loads(call("info", "--M", "3", "--ensemble-file", str(ensemble_path), "--povm-file", str(povm_path)))
        self.assertIsNone(data["accessible_information"])
        self.assertAlmostEqual(data["mutual_information"], math.log(1.5), delta=1e-10)

    def test_info_output_distribution(self):
        data = json.loads(call("info", "--M", "4"))
        self.assertEqual(data["source"], "single")
        self.assertEqual(len(data["output_distribution"]), 4)
        for value in data["output_distribution"]:
            self.assertAlmostEqual(value, 0.25, delta=1e-12)

    def test_info_seeded_covariant_family(self):
        data = json.loads(call("info", "--M", "5", "--theta", "0.3"))
        self.assertAlmostEqual(data["mutual_information"], i_theta(5, 0.3), delta=1e-10)
        self.assertFalse(data["angles_on_optimal_lattice"])

    def test_info_on_two_copy_source(self):
        logging.disable(logging.NOTSET)
        self.addCleanup(logging.disable, logging.CRITICAL)
        with self.assertLogs("accinfo", level="WARNING") as logs:
            data = json.loads(call("info", "--M", "3", "--double"))
        self.assertTrue(any("two-copy source" in line for line in logs.output))
        self.assertEqual(data["source"], "double")
        self.assertIsNone(data["accessible_information"])
        self.assertIsNone(data["error_probability"])
        self.assertIsNone(data["angles_on_optimal_lattice"])
        self.assertEqual(data["element_count"], 9)
        self.assertEqual(data["element_count_bound"], 10)
        self.assertGreaterEqual(data["mutual_information"], math.log(1.5) - 1e-10)
        self.assertAlmostEqual(sum(data["output_distribution"]), 1.0, delta=1e-12)

    def test_info_two_copy_source_rejects_noise(self):
        with self.assertRaises(CommandError) as cm:
            call("info", "--M", "3", "--double", "--eps", "0.1")
        self.assertEqual(cm.exception.returncode, 1)

    def test_info_rejects_non_finite_prior(self):
        path = self.dir / "ensemble.json"
        data = ensemble_serializer(make_em(3))
        text = dumps(data).replace(repr(data["priors"][0]), "NaN", 1)
        self.assertIn("NaN", text)
        path.write_text(text)
        with self.assertRaises(CommandError) as cm:
            call("info", "--M", "3", "--ensemble-file", str(path))
        self.assertEqual(cm.exception.returncode, 1)

    def test_non_utf8_file_exits_1(self):
        path = self.dir / "binary.json"
        path.write_bytes(b"\xff\xfe\x00{")
        for args in (("validate", str(path)), ("info", "--M", "3", "--povm-file", str(path))):
            with self.assertRaises(CommandError) as cm:
                call(*args)
            self.assertEqual(cm.exception.returncode, 1, args[0])

    def test_sweep_caps_m(self):
        with self.assertRaises(CommandError) as cm:
            call("sweep", "--M", "100000", "--points", "10")
        self.assertEqual(cm.exception.returncode, 1)

    def test_validate_round_trip(self):
        for family, extra in (("w", ["--m", "2", "--n", "2"]), ("mu4", ["--lambda", "0.25"]), ("covariant", [])):
            for output_format in ("json", "rank1"):
                path = self.dir / f"{family}-{output_format}.json"
                call("construct", family, "--M", "5", *extra, "--format", output_format, "--output", str(path))
                data = json.loads(call("validate", str(path)))
                self.assertTrue(data["valid"], f"{family} {output_format}")

    def test_validate_rejects_incomplete_povm(self):
        path = self.dir / "bad.json"
        path.write_text(json.dumps({"weights": [1.0, 1.0], "angles_rad": [0.0, 0.5]}))
        with self.assertRaises(CommandError) as cm:
            call("validate", str(path))
        self.assertEqual(cm.exception.returncode, 1)

    def test_validate_rejects_malformed_json(self):
        path = self.dir / "broken.json"
        path.write_text("{not json")
        with self.assertRaises(CommandError) as cm:
            call("validate", str(path))
        self.assertEqual(cm.exception.returncode, 1)

    def test_missing_file_exits_2(self):
        with self.assertRaises(CommandError) as cm:
            call("validate", str(self.dir / "missing.json"))
        self.assertEqual(cm.exception.returncode, 2)

    def test_unwritable_output_exits_2(self):
        with self.assertRaises(CommandError) as cm:
            call("sweep", "--M", "3", "--points", "10", "--output", str(self.dir / "no" / "such" / "dir.csv"))
        self.assertEqual(cm.exception.returncode, 2)

    def test_missing_flag_exits_1(self):
        with self.assertRaises(CommandError) as cm:
            call("sweep", "--M", "3")
        self.assertEqual(cm.exception.returncode, 1)

    def test_bad_choice_exits_1(self):
        with self.assertRaises(CommandError) as cm:
            call("sweep", "--M", "3", "--points", "10", "--unit", "hartleys")
        self.assertEqual(cm.exception.returncode, 1)

    def test_pe_check(self):
        data = json.loads(call("pe-check", "--M", "3"))
        self.assertTrue(data["passed"])
        self.assertAlmostEqual(data["error_probability"], 1 / 3, delta=1e-12)
        data = json.loads(call("pe-check", "--M", "5", "--eps", "0.5"))
        self.assertTrue(data["passed"])

    def test_pe_check_failure_exits_1(self):
        with self.assertRaises(CommandError) as cm:
            call("pe-check", "--M", "3", "--family", "covariant")
        self.assertEqual(cm.exception.returncode, 1)


class RunTests(SimpleTestCase):

    def test_unknown_command(self):
        result = run(RunConfig(command="plot", M=3))
        self.assertEqual(result.status, 1)
        self.assertIn("Unknown command", result.message)

    def test_unknown_unit(self):
        self.assertEqual(run(RunConfig(command="sweep", M=3, points=10, unit="hartleys")).status, 1)

    def test_default_family(self):
        result = run(RunConfig(command="info", M=4))
        self.assertEqual(result.status, 0)
        self.assertEqual(json.loads(result.output)["family"], "covariant")

    def test_json_floats_round_trip_exactly(self):
        for value in (math.pi / 7, 0.1 + 0.2, 1 / 3, 2.0 ** -40):
            self.assertEqual(json.loads(dumps({"x": value}))["x"], value)

    def test_wrong_format(self):
        result = run(RunConfig(command="construct", family="covariant", M=3, format="csv"))
        self.assertEqual(result.status, 1)
