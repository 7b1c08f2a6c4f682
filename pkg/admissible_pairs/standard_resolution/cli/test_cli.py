# Copyright (c) 2025, Standard Resolution Developers and contributors
# See license.txt

import io
import json
import logging
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path

from admissible_pairs.errors import PolynomialSyntaxError, ValidationError
from admissible_pairs.standard_resolution.cli.cli import (
	EXIT_GATE,
	EXIT_INPUT,
	EXIT_PASS,
	JobSpec,
	main,
	parse_job,
	validate_document,
)

# Configure logging for tests
logger = logging.getLogger(__name__)

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"

PLANE = {"variables": ["x0", "x1", "x2"]}
AFFINE = {"variables": ["x", "y"]}
STRUCTURE_SHEAF = {"ring": PLANE, "module": {"target": [[0]], "source": [], "matrix": [[]]}}


class TestParseJob(unittest.TestCase):
	"""Options, job files and diagnostics"""

	def setUp(self):
		"""Set up in-memory job files"""
		self.contents = {
			"point.json": json.dumps({"ring": PLANE, "ideal": ["x0", "x1"], "k": 2}),
			"syntax.json": json.dumps({"ring": PLANE, "ideal": ["x0", "x0^"]}),
			"inhomogeneous.json": json.dumps(
				{"ring": PLANE, "module": {"target": [[0]], "source": [[1]], "matrix": [["x0 + 1"]]}}
			),
			"unknown.json": json.dumps({"ring": PLANE, "ideal": ["x0"], "colour": "red"}),
			"broken.json": '{"ring": ',
		}

	def tearDown(self):
		"""Drop the job files"""
		self.contents = None

	def test_minimal_ideal_sheaf(self):
		"""A ring block and two generators give the presentation of I_p"""
		job = parse_job(["resolve", "--input", "point.json"], self.contents)
		self.assertIsInstance(job, JobSpec)
		module = job.payloads[0]["module"]
		self.assertEqual(module.rank, 2)
		self.assertEqual(module.target, ((1,), (1,)))
		self.assertEqual(len(module.source), 1)
		self.assertEqual(job.documents[0]["k"], 2)

	def test_syntax_error_has_a_column(self):
		"""A dangling exponent is reported where the integer was expected"""
		with self.assertRaises(PolynomialSyntaxError) as context:
			parse_job(["resolve", "--input", "syntax.json"], self.contents)
		self.assertEqual(context.exception.column, 4)
		self.assertIn("integer", context.exception.expected)

	def test_inhomogeneous_entry_is_named(self):
		"""The offending matrix entry appears in the diagnostic"""
		with self.assertRaises(ValidationError) as context:
			parse_job(["hilbert", "--input", "inhomogeneous.json"], self.contents)
		self.assertIn("(0,0)", str(context.exception))

	def test_unknown_and_misplaced_keys(self):
		"""Keys outside the schema of the command are rejected"""
		with self.assertRaises(ValidationError):
			parse_job(["resolve", "--input", "unknown.json"], self.contents)
		with self.assertRaises(ValidationError):
			validate_document("lemma2", {"ring": PLANE, "ideal": ["x0"], "smoothing": [["x0"]]})
		with self.assertRaises(ValidationError):
			validate_document("resolve", {"ring": PLANE, "ideal": ["x0"], "k": "2"})
		with self.assertRaises(ValidationError):
			validate_document("blowup", {"ideal": ["x0", "x1"]})

	def test_invalid_json_and_missing_file(self):
		with self.assertRaises(ValidationError):
			parse_job(["resolve", "--input", "broken.json"], self.contents)
		with self.assertRaises(ValidationError):
			parse_job(["resolve", "--input", "absent.json"], self.contents)

	def test_options(self):
		"""Flags reach the job and the settings"""
		argv = ["resolve", "--input", "point.json", "--k", "3", "--window", "1:5", "--caps", "max_degree=40", "--workers", "2"]
		job = parse_job(argv, self.contents)
		self.assertEqual(job.k, 3)
		self.assertEqual(job.window, (1, 5))
		self.assertEqual(job.settings.max_degree, 40)
		self.assertEqual(job.settings.workers, 2)
		with self.assertRaises(ValidationError):
			parse_job(["resolve", "--input", "point.json", "--caps", "speed=9"], self.contents)
		with self.assertRaises(ValidationError):
			parse_job(["resolve", "--input", "point.json", "--k", "0"], self.contents)
		with self.assertRaises(ValidationError):
			parse_job(["resolve", "--input", "point.json", "--window", "5:1"], self.contents)

	def test_malformed_flags_exit_with_usage_error(self):
		"""argparse rejects a window without a colon"""
		with redirect_stdout(io.StringIO()), self.assertRaises(SystemExit) as context:
			parse_job(["resolve", "--input", "point.json", "--window", "3"], self.contents)
		self.assertEqual(context.exception.code, EXIT_INPUT)


class TestRunAndReport(unittest.TestCase):
	"""Exit codes and reports of the subcommands"""

	def setUp(self):
		"""Set up a report directory and in-memory job files"""
		self.directory = tempfile.TemporaryDirectory()
		self.report = str(Path(self.directory.name) / "report.json")
		self.contents = {
			"structure.json": json.dumps(STRUCTURE_SHEAF),
			"syntax.json": json.dumps({"ring": PLANE, "ideal": ["x0^"]}),
			"line.json": json.dumps({"ring": AFFINE, "module": {"target": [[0]], "source": [[1]], "matrix": [["x"]]}}),
			"pair_of_lines.json": json.dumps(
				{
					"ring": PLANE,
					"module": {"target": [[0], [0]], "source": [], "matrix": [[], []]},
					"candidates": [{"module": {"target": [[0]], "source": [], "matrix": [[]]}, "matrix": [["1"], ["0"]]}],
				}
			),
			"unbalanced.json": json.dumps(
				{
					"ring": PLANE,
					"module": {"target": [[1], [-1]], "source": [], "matrix": [[], []]},
					"candidates": [{"module": {"target": [[-1]], "source": [], "matrix": [[]]}, "matrix": [["0"], ["1"]]}],
				}
			),
		}

	def tearDown(self):
		"""Remove the report directory"""
		self.directory.cleanup()

	def run_cli(self, argv):
		code = main([*argv, "--report", self.report], self.contents)
		with open(self.report, encoding="utf-8") as handle:
			return code, json.load(handle)

	def test_hilbert_polynomial_of_the_plane(self):
		"""h0(O(n)) = (n+1)(n+2)/2"""
		code, report = self.run_cli(["hilbert", "--input", "structure.json"])
		self.assertEqual(code, EXIT_PASS)
		entry = report["entries"][0]
		self.assertEqual(entry["result"]["coefficients"], ["1", "3/2", "1/2"])
		self.assertEqual(entry["echo"], STRUCTURE_SHEAF)
		self.assertEqual(report["command"], "hilbert")

	def test_identical_inputs_give_identical_reports(self):
		main(["hilbert", "--input", "structure.json", "--report", self.report], self.contents)
		first = Path(self.report).read_text(encoding="utf-8")
		main(["hilbert", "--input", "structure.json", "--report", self.report], self.contents)
		self.assertEqual(Path(self.report).read_text(encoding="utf-8"), first)

	def test_syntax_error_exits_two(self):
		"""Input errors are reported with their position"""
		code, report = self.run_cli(["resolve", "--input", "syntax.json"])
		self.assertEqual(code, EXIT_INPUT)
		self.assertEqual(report["error"]["type"], "PolynomialSyntaxError")
		self.assertEqual(report["error"]["column"], 4)

	def test_missing_file_exits_two(self):
		missing = str(Path(self.directory.name) / "absent.json")
		self.assertEqual(main(["resolve", "--input", missing, "--report", self.report]), EXIT_INPUT)

	def test_special_fiber_is_not_flat(self):
		"""R/(eps) over the dual numbers fails the flatness table"""
		code, report = self.run_cli(["flatcheck", "--input", str(FIXTURES / "special_fiber.json")])
		self.assertEqual(code, EXIT_GATE)
		self.assertFalse(report["entries"][0]["result"]["flat"])

	def test_moving_point_is_flat(self):
		code, report = self.run_cli(["flatcheck", "--input", str(FIXTURES / "moving_point.json"), "--depths", "0,1"])
		self.assertEqual(code, EXIT_PASS)
		self.assertTrue(report["entries"][0]["result"]["flat"])

	def test_lemma2_on_a_line(self):
		"""k[x,y]/(x) has hd 1 and invertible Fitt0"""
		code, report = self.run_cli(["lemma2", "--input", "line.json"])
		self.assertEqual(code, EXIT_PASS)
		result = report["entries"][0]["result"]
		self.assertEqual(result["hd"], 1)
		self.assertTrue(result["invertible"])

	def test_semistable_verdicts(self):
		"""A summand of O + O does not destabilize, O(1) in O(-1) + O(1) does"""
		code, report = self.run_cli(["semistable", "--input", "pair_of_lines.json"])
		self.assertEqual(code, EXIT_PASS)
		self.assertEqual(report["entries"][0]["result"]["verdict"], "semistable")
		code, report = self.run_cli(["semistable", "--input", "unbalanced.json"])
		self.assertEqual(code, EXIT_GATE)
		self.assertEqual(report["entries"][0]["result"]["destabilizing"], [0])

	def test_blowup_of_a_point(self):
		"""One additional component and chi(L~^n) = (2n+1)(n+1)"""
		code, report = self.run_cli(["blowup", "--input", str(FIXTURES / "point_center.json")])
		self.assertEqual(code, EXIT_PASS)
		result = report["entries"][0]["result"]
		self.assertEqual(result["scheme"]["component_count"], 1)
		self.assertEqual(result["scheme"]["twist"], [1, 1])
		self.assertEqual(result["polarization_chi"]["coefficients"], ["1", "3", "2"])

	def test_worst_exit_code_wins(self):
		"""Entries keep their order and the job exits with the worst code"""
		code, report = self.run_cli(["semistable", "--input", "pair_of_lines.json", "--input", "unbalanced.json"])
		self.assertEqual(code, EXIT_GATE)
		self.assertEqual([entry["input"] for entry in report["entries"]], ["pair_of_lines.json", "unbalanced.json"])
		self.assertEqual([entry["exit_code"] for entry in report["entries"]], [EXIT_PASS, EXIT_GATE])

	def test_summary_mirrors_the_report(self):
		buffer = io.StringIO()
		with redirect_stdout(buffer):
			code = main(["hilbert", "--input", "structure.json", "--summary"], self.contents)
		self.assertEqual(code, EXIT_PASS)
		self.assertIn("hilbert: exit 0", buffer.getvalue())
		self.assertIn("structure.json: pass", buffer.getvalue())
