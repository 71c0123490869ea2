import io
import json
import math
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

from django.core.management import call_command
from django.test import SimpleTestCase, tag

from Potentia.exceptions import QuadratureError
from apps.toolkit.cli import join_negative_values, main
from apps.toolkit.output import render_csv
from apps.toolkit.serializers import (
    CombSerializer, EqSerializer, GreenSerializer, RateSerializer, RemezSerializer, VerifyPointSerializer,
)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def command_json(name, *args):
    out = io.StringIO()
    call_command(name, *join_negative_values(list(args)), stdout=out)
    return json.loads(out.getvalue())


class ArgumentTests(SimpleTestCase):

    def test_negative_values_joined(self):
        self.assertEqual(
            join_negative_values(["--set", "-1,1", "--x0", "0", "--z", "-0.5+1j", "--alpha=1"]),
            ["--set=-1,1", "--x0", "0", "--z=-0.5+1j", "--alpha=1"],
        )

    def test_csv_formatting(self):
        text = render_csv([{"n": 2, "error": 0.125}, {"n": 3, "error": 0.1}], ["n", "error"])
        self.assertEqual(text, "n,error\n2,0.125\n3,0.10000000000000001\n")


class MainTests(SimpleTestCase):

    def test_eq_capacity(self):
        code, out, _ = run("eq", "--set", "-1,1")
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertAlmostEqual(payload["capacity"], 0.5, delta=1e-9)
        self.assertEqual(payload["gap_zeros"], [])

    def test_remez_csv_row(self):
        code, out, _ = run("remez", "--set", "-1,1", "--x0", "0", "--alpha", "1", "--n", "2")
        self.assertEqual(code, 0)
        header, row = out.strip().split("\n")
        self.assertEqual(header, "n,error,iterations")
        fields = row.split(",")
        self.assertEqual(fields[0], "2")
        self.assertAlmostEqual(float(fields[1]), 0.125, delta=1e-9)

    def test_rate_csv_header(self):
        code, out, _ = run("rate", "--set", "-1,1", "--x0", "0", "--alpha", "1",
                           "--degrees", "10,20,40,56", "--format", "csv")
        self.assertEqual(code, 0)
        lines = out.strip().split("\n")
        self.assertEqual(lines[0], "n,n^alpha_En")
        self.assertEqual([line.split(",")[0] for line in lines[1:]], ["10", "20", "40", "56"])
        self.assertTrue(all(0.27 < float(line.split(",")[1]) < 0.2802 for line in lines[1:]))

    def test_comb_geometry_top_level(self):
        code, out, _ = run("comb", "--set", "-1,-0.5;0.5,1", "--x0", "0.75")
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertNotIn("geometry", payload)
        self.assertEqual(len(payload["u"]), 3)
        self.assertAlmostEqual(payload["u"][1], math.pi / 2, delta=1e-9)
        self.assertEqual(len(payload["v"]), 1)
        self.assertIn("eta0", payload)

    def test_usage_errors(self):
        self.assertEqual(run()[0], 2)
        self.assertEqual(run("plot", "--set", "-1,1")[0], 2)
        self.assertEqual(run("eq", "--set", "1,0")[0], 2)
        self.assertEqual(run("eq", "--set", "0,x")[0], 2)
        self.assertEqual(run("remez", "--set", "-1,1", "--alpha", "1", "--n", "2")[0], 2)
        self.assertEqual(run("comb", "--set", "-1,-0.5;0.5,1", "--x0", "0")[0], 2)
        self.assertEqual(run("green", "--set", "-1,1", "--z", "abc")[0], 2)
        self.assertEqual(run("dichotomy", "--cantor", "0.333", "--levels", "2", "--x0", "0", "--alpha", "1")[0], 2)

    def test_error_names_parameter(self):
        code, _, err = run("comb", "--set", "-1,-0.5;0.5,1", "--x0", "0")
        self.assertEqual(code, 2)
        self.assertIn("x0", err)

    def test_numeric_failure(self):
        with mock.patch("apps.toolkit.management.commands.eq.solve_equilibrium",
                        side_effect=QuadratureError("gap conditions not met")):
            code, _, err = run("eq", "--set", "-1,1")
        self.assertEqual(code, 3)
        self.assertIn("QuadratureError", err)

    def test_violation_exit_code(self):
        report = {"set": "-1.0,1.0", "x0": 0.0, "ok": False, "error": "forced"}
        with mock.patch("apps.toolkit.management.commands.verify.verify_point", return_value=report):
            code, out, _ = run("verify", "--set", "-1,1", "--x0", "0")
        self.assertEqual(code, 4)
        self.assertFalse(json.loads(out)["ok"])

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "eq.json")
            code, out, _ = run("eq", "--set", "-1,-0.5;0.5,1", "--out", path)
            self.assertEqual(code, 0)
            self.assertEqual(out, "")
            with open(path, encoding="utf-8") as fh:
                payload = json.load(fh)
        self.assertAlmostEqual(payload["capacity"], 0.75 ** 0.5 / 2, delta=1e-8)

    def test_deterministic_output(self):
        args = ("green", "--set", "-1,-0.3;0,0.2;0.5,1", "--z", "0.1+0.5j", "--z", "2", "--z", "-0.15")
        self.assertEqual(run(*args)[1], run(*args)[1])
        args = ("eq", "--set", "-1,-0.3;0,0.2;0.5,1", "--x0", "0.1")
        self.assertEqual(run(*args)[1], run(*args)[1])


class SchemaTests(SimpleTestCase):

    def assertRoundTrip(self, serializer_class, payload):
        serializer = serializer_class(data=payload)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        return serializer.validated_data

    def test_eq(self):
        payload = command_json("eq", "--set", "-1,-0.5;0.5,1", "--x0", "0.75")
        data = self.assertRoundTrip(EqSerializer, payload)
        self.assertEqual(data["capacity"], payload["capacity"])
        self.assertEqual(len(payload["q_coeffs"]), 2)
        self.assertEqual(len(payload["gap_zeros"]), 1)
        self.assertAlmostEqual(payload["gap_zeros"][0], 0.0, delta=1e-12)

    def test_green(self):
        payload = command_json("green", "--set", "-1,1", "--z", "0+1j", "--z", "2")
        self.assertRoundTrip(GreenSerializer, payload)
        self.assertAlmostEqual(payload["points"][0]["g"], 0.881373587019543, delta=1e-9)

    def test_comb(self):
        payload = command_json("comb", "--set", "-1,-0.5;0.5,1", "--x0", "0.75", "--samples", "10")
        self.assertRoundTrip(CombSerializer, payload)
        self.assertLess(payload["identities"]["green_deviation"], 1e-7)

    def test_remez_json(self):
        payload = command_json("remez", "--set", "-1,1", "--x0", "0", "--alpha", "1",
                               "--degrees", "1,2,3", "--format", "json")
        self.assertRoundTrip(RemezSerializer, payload)
        self.assertEqual([row["n"] for row in payload["rows"]], [1, 2, 3])
        self.assertTrue(all(row["levelled"] <= row["error"] * (1 + 1e-12) for row in payload["rows"]))

    def test_rate_short_ladder(self):
        payload = command_json("rate", "--set", "-1,1", "--x0", "0", "--alpha", "1", "--degrees", "4,6,8,10")
        self.assertRoundTrip(RateSerializer, payload)
        self.assertTrue(payload["rate"]["extrapolated"])

    def test_verify_point(self):
        payload = command_json("verify", "--set", "-1,-0.5;0.5,1", "--x0", "0.75", "--samples", "16")
        self.assertRoundTrip(VerifyPointSerializer, payload)
        self.assertTrue(payload["ok"])


@tag("slow")
class LongRunTests(SimpleTestCase):

    def test_rate_sigma_one(self):
        code, out, _ = run("rate", "--set", "-1,1", "--x0", "0", "--alpha", "1", "--degrees", "20:120:even")
        self.assertEqual(code, 0)
        self.assertAlmostEqual(json.loads(out)["rate"]["extrapolated_limit"], 0.2802, delta=1e-3)

    def test_verify_trials(self):
        code, out, _ = run("verify", "--trials", "5", "--seed", "0")
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["trial_count"], 5)
        self.assertTrue(payload["ok"])
