# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Command line front end.

	admissible-pairs resolve --input flagship.json --k 2 --report out.json

Exit status: 0 when every gate passes, 1 when a mathematical gate or verdict
fails, 2 on input and resource errors.
"""

import argparse
import importlib
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from pathlib import Path

from admissible_pairs import hooks
from admissible_pairs.config import ResolutionSettings, get_settings, parse_overrides
from admissible_pairs.errors import (
	GateFailure,
	InconclusiveError,
	InternalConsistencyError,
	PolynomialSyntaxError,
	ResourceLimitError,
	StabilizationError,
	ValidationError,
	log_error,
)
from admissible_pairs.standard_resolution.blowup.blowup import (
	admissible_scheme,
	infinitesimal_section,
	polarization_chi,
)
from admissible_pairs.standard_resolution.blowup.blowup import load_schema as load_center_schema
from admissible_pairs.standard_resolution.fitting.fitting import lemma2_check
from admissible_pairs.standard_resolution.gbring.gbring import Ideal, Ring
from admissible_pairs.standard_resolution.modres.hilbert import hilbert
from admissible_pairs.standard_resolution.modres.modres import GradedModule, ModuleMap
from admissible_pairs.standard_resolution.pipeline.flatness import flat_check, flat_check_line
from admissible_pairs.standard_resolution.pipeline.pipeline import (
	FamilyBase,
	InputSheaf,
	QuotientDatum,
	resolve_family,
	resolve_sheaf,
)
from admissible_pairs.standard_resolution.pipeline.semistability import DESTABILIZED, check_semistability

# Configure logging
logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).with_name("cli.json")

EXIT_PASS = 0
EXIT_GATE = 1
EXIT_INPUT = 2

INPUT_ERRORS = (ValidationError, ResourceLimitError, StabilizationError, InconclusiveError)

_BASE_KEYS = ("polynomial", "artinian", "ideal")
_CANDIDATE_KEYS = ("module", "matrix")


def load_schema():
	with open(SCHEMA_PATH, encoding="utf-8") as handle:
		return json.load(handle)


def get_attr(dotted):
	"""Resolve ``package.module.name`` to the named attribute."""
	module_name, _, name = dotted.rpartition(".")
	return getattr(importlib.import_module(module_name), name)


@dataclass
class JobSpec:
	"""One invocation: a command, its input files and the options shared by all of them."""

	command: str
	inputs: list
	k: int = None
	window: tuple = None
	report: str = None
	depths: list = None
	direction: tuple = None
	candidates: str = None
	summary: bool = False
	verbose: bool = False
	settings: ResolutionSettings = None
	documents: list = field(default_factory=list)
	candidate_rows: list = None
	payloads: list = field(default_factory=list, repr=False)

	def __post_init__(self):
		self.validate()

	def validate(self):
		"""Validate options before any file is read"""
		try:
			self.validate_command()
			self.validate_k()
			self.validate_window()
		except (TypeError, ValueError) as e:
			logger.error(f"Validation error in Job Spec: {str(e)}")
			raise ValidationError(str(e)) from e

	def validate_command(self):
		if self.command not in hooks.commands:
			raise ValueError(f"Unknown command {self.command!r}")
		if not self.inputs:
			raise ValueError("At least one --input file is required")

	def validate_k(self):
		if self.k is not None and self.k <= 0:
			raise ValueError(f"--k must be positive, got {self.k}")

	def validate_window(self):
		if self.window is not None and self.window[0] > self.window[1]:
			raise ValueError(f"Window {self.window[0]}:{self.window[1]} is empty")


# Arguments


def _window_argument(text):
	try:
		start, stop = (int(part) for part in text.split(":"))
	except ValueError as e:
		raise argparse.ArgumentTypeError(f"window must read A:B, got {text!r}") from e
	return (start, stop)


def _integers_argument(text):
	try:
		return [int(part) for part in text.split(",") if part.strip()]
	except ValueError as e:
		raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from e


def build_parser():
	parser = argparse.ArgumentParser(
		prog="admissible-pairs",
		description="Standard resolution of sheaves on P^2 into admissible pairs",
	)
	parser.add_argument("command", choices=sorted(hooks.commands))
	parser.add_argument("--input", action="append", required=True, help="Job file (repeat to run several)")
	parser.add_argument("--k", type=int, help="Polarization re-twist")
	parser.add_argument("--window", type=_window_argument, help="Twist window A:B")
	parser.add_argument("--report", help="Write the JSON report to this path")
	parser.add_argument("--depths", type=_integers_argument, help="Truncation depths for flatcheck")
	parser.add_argument("--direction", type=_integers_argument, help="Twist direction for hilbert")
	parser.add_argument("--candidates", help="Candidate subsheaves for semistable")
	parser.add_argument("--caps", default="", help="Settings overrides, key=value,... or a JSON object")
	parser.add_argument("--workers", type=int, help="Worker processes for several inputs")
	parser.add_argument("--summary", action="store_true", help="Print a plain text summary")
	parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
	return parser


# Job files


def read_document(path, contents=None):
	"""JSON object of an input file, from ``contents`` when the path is listed there."""
	if contents is not None and path in contents:
		text = contents[path]
	else:
		try:
			text = Path(path).read_text(encoding="utf-8")
		except OSError as e:
			raise ValidationError(f"Cannot read {path}: {e.strerror or e}") from e
	try:
		return json.loads(text)
	except json.JSONDecodeError as e:
		raise ValidationError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}, column {e.colno}") from e


def _type_ok(fieldtype, value):
	if fieldtype == "Int":
		return isinstance(value, int) and not isinstance(value, bool)
	if fieldtype in ("List", "Table"):
		return isinstance(value, list)
	if fieldtype == "Check":
		return isinstance(value, bool)
	if fieldtype == "Link":
		return isinstance(value, dict)
	return isinstance(value, (str, dict))


def validate_document(command, document):
	"""Keys and field types of a job file against the schema of ``command``."""
	if not isinstance(document, dict):
		raise ValidationError("A job file must hold a JSON object")
	if command == "blowup":
		rows = load_center_schema()["fields"]
	else:
		rows = [row for row in load_schema()["fields"] if command in row["commands"]]
	allowed = {row["fieldname"]: row for row in rows}
	unknown = sorted(set(document) - set(allowed))
	if unknown:
		raise ValidationError(f"Unknown keys for {command}: {', '.join(unknown)}")
	for row in rows:
		if row.get("reqd") and row["fieldname"] not in document:
			raise ValidationError(f"{command} requires '{row['fieldname']}'")
	for key, value in document.items():
		if not _type_ok(allowed[key]["fieldtype"], value):
			raise ValidationError(f"Field '{key}' has the wrong type for {allowed[key]['fieldtype']}")


def _ring(document):
	return Ring.from_json(document["ring"]) if "ring" in document else None


def _module(document, ring):
	if "module" in document:
		block = document["module"]
		return GradedModule.from_json(block, None if "ring" in block else ring)
	if "ideal" in document:
		if ring is None:
			raise ValidationError("An ideal sheaf needs a 'ring' block")
		return GradedModule.from_ideal(Ideal(ring, document["ideal"]))
	raise ValidationError("The job needs a 'module' or an 'ideal'")


def _candidate(row, E):
	if not isinstance(row, dict):
		raise ValidationError("Candidates are objects with 'module' and 'matrix'")
	unknown = sorted(set(row) - set(_CANDIDATE_KEYS))
	missing = [key for key in _CANDIDATE_KEYS if key not in row]
	if unknown or missing:
		raise ValidationError(f"Candidate keys must be {list(_CANDIDATE_KEYS)}")
	block = row["module"]
	F = GradedModule.from_json(block, None if isinstance(block, dict) and "ring" in block else E.ring)
	return ModuleMap(F, E, row["matrix"])


def build_payload(command, document, candidate_rows=None):
	"""Mathematical objects of a validated job file."""
	if command == "blowup":
		ring = Ring.from_json(document["ring"])
		payload = dict(document)
		payload["ideal"] = Ideal(ring, document["ideal"])
		return payload
	payload = dict(document)
	payload["module"] = _module(document, _ring(document))
	if command == "resolve-family":
		base = document.get("base")
		if not isinstance(base, dict):
			raise ValidationError("resolve-family requires a 'base' object")
		unknown = sorted(set(base) - set(_BASE_KEYS))
		if unknown:
			raise ValidationError(f"Unknown base keys: {', '.join(unknown)}")
		payload["base"] = FamilyBase(**base)
	if command == "resolve" and document.get("quotient"):
		payload["quotient"] = QuotientDatum.point(Ideal(payload["module"].ring, document["quotient"]))
	if command == "semistable":
		rows = candidate_rows if candidate_rows is not None else document.get("candidates", [])
		payload["candidates"] = [_candidate(row, payload["module"]) for row in rows]
	return payload


def _candidate_rows(path, contents=None):
	document = read_document(path, contents)
	if isinstance(document, dict):
		document = document.get("candidates")
	if not isinstance(document, list):
		raise ValidationError(f"{path} must hold a list of candidates")
	return document


def job_from_arguments(args, contents=None):
	caps = parse_overrides(args.caps)
	if args.workers is not None:
		caps["workers"] = args.workers
	job = JobSpec(
		command=args.command,
		inputs=list(args.input),
		k=args.k,
		window=args.window,
		report=args.report,
		depths=args.depths,
		direction=tuple(args.direction) if args.direction else None,
		candidates=args.candidates,
		summary=args.summary,
		verbose=args.verbose,
		settings=get_settings().updated(**caps),
	)
	if job.candidates:
		job.candidate_rows = _candidate_rows(job.candidates, contents)
	for path in job.inputs:
		document = read_document(path, contents)
		validate_document(job.command, document)
		job.documents.append(document)
		job.payloads.append(build_payload(job.command, document, job.candidate_rows))
	return job


def parse_job(argv, contents=None):
	"""JobSpec with every input file read, validated and parsed."""
	return job_from_arguments(build_parser().parse_args(argv), contents)


# Commands


def _option(flag, value):
	return flag if flag is not None else value


def _window(job, payload):
	window = _option(job.window, payload.get("window"))
	if window is not None and (len(window) != 2 or window[0] > window[1]):
		raise ValidationError(f"Window {window} must be a nonempty pair A <= B")
	return tuple(window) if window is not None else None


def _gate_table(trace):
	return {gate: entry["passed"] for gate, entry in trace.gates.items()}


def run_resolve(payload, job):
	sheaf = InputSheaf(
		payload["module"],
		payload.get("rank"),
		_option(job.k, payload.get("k")),
		payload.get("quotient"),
		payload.get("smoothing"),
	)
	pair = resolve_sheaf(sheaf, job.settings, _window(job, payload))
	result = pair.to_json()
	result["gates"] = _gate_table(pair.trace)
	result["chi_identity"] = pair.trace.gates["chi_identity"]["passed"]
	return pair.trace.passed, result


def run_resolve_family(payload, job):
	k = _option(job.k, payload.get("k"))
	resolved = resolve_family(payload["module"], payload["base"], k, job.settings, _window(job, payload))
	result = resolved.to_json()
	result["gates"] = _gate_table(resolved.trace)
	return resolved.trace.passed, result


def run_flatcheck(payload, job):
	module = payload["module"]
	direction = _option(job.direction, payload.get("direction"))
	depths = _option(job.depths, payload.get("depths"))
	window = _window(job, payload)
	if payload.get("line"):
		depth = max(depths) if depths else 2
		report = flat_check_line(module, payload["line"], direction, window, depth, job.settings)
	else:
		report = flat_check(module, payload.get("nilpotent"), direction, window, depths, payload.get("ideals"), job.settings)
	return report.flat, report.to_json()


def run_lemma2(payload, job):
	report = lemma2_check(payload["module"], job.settings)
	return report.biconditional_holds, report.to_json()


def run_blowup(payload, job):
	k = _option(job.k, payload.get("k"))
	X = admissible_scheme(payload["ideal"], payload.get("d"), k, job.settings)
	result = {
		"scheme": X.to_json(),
		"polarization_chi": polarization_chi(X, settings=job.settings).to_json(),
	}
	if payload.get("subscheme"):
		Z = Ideal(X.model.base, payload["subscheme"])
		result["section"] = infinitesimal_section(X.model, Z, job.settings).to_json()
	return True, result


def run_hilbert(payload, job):
	direction = _option(job.direction, payload.get("direction"))
	polynomial = hilbert(payload["module"], direction, _window(job, payload), job.settings, payload.get("saturate", True))
	return True, polynomial.to_json()


def run_semistable(payload, job):
	module = payload["module"]
	window = _window(job, payload)
	target = module
	if payload.get("pair"):
		target = resolve_sheaf(InputSheaf(module, k=_option(job.k, payload.get("k"))), job.settings, window)
	report = check_semistability(target, payload["candidates"], window, job.settings)
	return report.verdict != DESTABILIZED, report.to_json()


# Reports


def error_entry(error):
	data = {"type": type(error).__name__, "message": str(error)}
	if isinstance(error, PolynomialSyntaxError):
		data.update({"line": error.line, "column": error.column, "expected": list(error.expected)})
	if isinstance(error, StabilizationError):
		data["table"] = {str(n): v for n, v in sorted(error.table.items())}
	if isinstance(error, ResourceLimitError):
		data.update({"cap": error.cap, "value": error.value})
	return data


def run_entry(job, index, payload=None):
	"""Report of one input file; top level so that worker processes can run it."""
	path, document = job.inputs[index], job.documents[index]
	entry = {"input": path, "echo": document}
	runner = get_attr(hooks.commands[job.command])
	try:
		if payload is None:
			payload = build_payload(job.command, document, job.candidate_rows)
		passed, result = runner(payload, job)
		entry.update({"passed": passed, "result": result, "exit_code": EXIT_PASS if passed else EXIT_GATE})
	except GateFailure as e:
		logger.warning(f"{path}: {str(e)}")
		failure = {"gate": e.gate, "message": str(e), "certificates": e.certificates}
		if e.trace is not None:
			failure["trace"] = e.trace.to_json()
		entry.update({"passed": False, "failure": failure, "exit_code": EXIT_GATE})
	except INPUT_ERRORS as e:
		log_error(runner.__name__, e, {"input": path})
		entry.update({"passed": False, "error": error_entry(e), "exit_code": EXIT_INPUT})
	return entry


def run_and_report(job, write=True):
	"""Run every input of ``job``; returns the exit code and the report."""
	entries = [None] * len(job.inputs)
	workers = min(job.settings.workers, len(job.inputs))
	if workers > 1:
		portable = replace(job, payloads=[])
		with ProcessPoolExecutor(max_workers=workers) as executor:
			futures = {executor.submit(run_entry, portable, index): index for index in range(len(job.inputs))}
			for future in as_completed(futures):
				entries[futures[future]] = future.result()
	else:
		for index in range(len(job.inputs)):
			payload = job.payloads[index] if index < len(job.payloads) else None
			entries[index] = run_entry(job, index, payload)
	exit_code = max(entry["exit_code"] for entry in entries)
	report = {"command": job.command, "exit_code": exit_code, "entries": entries}
	if write:
		write_report(job, report)
	return exit_code, report


def render(report):
	return json.dumps(report, sort_keys=True, indent=1, default=str) + "\n"


def summarize(report):
	"""Plain text mirror of the JSON report."""
	lines = [f"{report['command']}: exit {report['exit_code']}"]
	for entry in report.get("entries", []):
		status = "pass" if entry["passed"] else "FAIL"
		lines.append(f"  {entry['input']}: {status}")
		result = entry.get("result", {})
		for gate, passed in result.get("gates", {}).items():
			lines.append(f"    {gate}: {'pass' if passed else 'FAIL'}")
		if "failure" in entry:
			lines.append(f"    {entry['failure']['message']}")
		if "error" in entry:
			lines.append(f"    {entry['error']['type']}: {entry['error']['message']}")
	if "error" in report:
		lines.append(f"  {report['error']['type']}: {report['error']['message']}")
	return "\n".join(lines)


def write_report(job, report):
	if job.report:
		Path(job.report).write_text(render(report), encoding="utf-8")
		logger.info(f"Report written to {job.report}")
	if job.summary:
		print(summarize(report))
	elif not job.report:
		sys.stdout.write(render(report))


def configure_logging(verbose=False):
	logging.basicConfig(
		level=logging.DEBUG if verbose else logging.INFO,
		format="%(asctime)s %(levelname)s %(name)s: %(message)s",
	)


def main(argv=None, contents=None):
	args = build_parser().parse_args(argv)
	configure_logging(args.verbose)
	try:
		job = job_from_arguments(args, contents)
	except INPUT_ERRORS as e:
		log_error("parse_job", e, {"command": args.command, "inputs": args.input})
		report = {"command": args.command, "exit_code": EXIT_INPUT, "entries": [], "error": error_entry(e)}
		if args.report:
			Path(args.report).write_text(render(report), encoding="utf-8")
		if args.summary:
			print(summarize(report))
		return EXIT_INPUT
	try:
		exit_code, _ = run_and_report(job)
	except InternalConsistencyError as e:
		log_error("run_and_report", e, {"command": job.command, "inputs": job.inputs})
		raise
	return exit_code


if __name__ == "__main__":
	sys.exit(main())
