# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

import json
import logging
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from admissible_pairs import hooks
from admissible_pairs.errors import ValidationError

# Configure logging
logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).resolve().parents[2] / hooks.settings_schema


def load_schema():
	with open(SCHEMA_PATH, encoding="utf-8") as handle:
		return json.load(handle)


def _schema_defaults():
	return {row["fieldname"]: row["default"] for row in load_schema()["fields"]}


_DEFAULTS = _schema_defaults()


@dataclass(frozen=True)
class ResolutionSettings:
	"""Resource caps and numerical policy shared by every computation."""

	max_basis_size: int = _DEFAULTS["max_basis_size"]
	max_pairs: int = _DEFAULTS["max_pairs"]
	max_degree: int = _DEFAULTS["max_degree"]
	max_resolution_length: int = _DEFAULTS["max_resolution_length"]
	max_saturation_steps: int = _DEFAULTS["max_saturation_steps"]
	max_nilpotency: int = _DEFAULTS["max_nilpotency"]
	hilbert_guard: int = _DEFAULTS["hilbert_guard"]
	hilbert_max_degree: int = _DEFAULTS["hilbert_max_degree"]
	default_k: int = _DEFAULTS["default_k"]
	workers: int = _DEFAULTS["workers"]
	section_search_values: tuple = field(default=tuple(_DEFAULTS["section_search_values"]))
	point_count_trials: int = _DEFAULTS["point_count_trials"]
	random_seed: int = _DEFAULTS["random_seed"]

	def __post_init__(self):
		self.validate()

	def validate(self):
		"""Validate settings configuration"""
		try:
			self.validate_caps()
			self.validate_search_values()
		except (TypeError, ValueError) as e:
			logger.error(f"Validation error in Resolution Settings: {str(e)}")
			raise ValidationError(f"Invalid resolution settings: {str(e)}") from e

	def validate_caps(self):
		for f in fields(self):
			if f.name in ("section_search_values", "random_seed"):
				continue
			value = getattr(self, f.name)
			if isinstance(value, bool) or not isinstance(value, int):
				raise TypeError(f"{f.name} must be an integer, got {value!r}")
			if f.name == "hilbert_guard":
				if value < 0:
					raise ValueError("hilbert_guard must be non-negative")
			elif value <= 0:
				raise ValueError(f"{f.name} must be positive, got {value}")

	def validate_search_values(self):
		if not self.section_search_values:
			raise ValueError("section_search_values must not be empty")
		for value in self.section_search_values:
			if isinstance(value, bool) or not isinstance(value, int):
				raise TypeError(f"section search value {value!r} is not an integer")

	def updated(self, **overrides):
		"""Return a copy with ``overrides`` applied; unknown keys are rejected."""
		known = {f.name for f in fields(self)}
		unknown = sorted(set(overrides) - known)
		if unknown:
			raise ValidationError(f"Unknown settings keys: {', '.join(unknown)}")
		if "section_search_values" in overrides:
			overrides["section_search_values"] = tuple(overrides["section_search_values"])
		return replace(self, **overrides)

	def as_dict(self):
		data = {}
		for f in fields(self):
			value = getattr(self, f.name)
			data[f.name] = list(value) if isinstance(value, tuple) else value
		return data


def parse_overrides(text):
	"""Parse ``key=value,key=value`` or a JSON object into a dict of settings values."""
	text = (text or "").strip()
	if not text:
		return {}
	if text.startswith("{"):
		try:
			data = json.loads(text)
		except json.JSONDecodeError as e:
			raise ValidationError(f"Settings override is not valid JSON: {e}") from e
		if not isinstance(data, dict):
			raise ValidationError("Settings override must be a JSON object")
		return data

	overrides = {}
	for chunk in text.split(","):
		if not chunk.strip():
			continue
		if "=" not in chunk:
			raise ValidationError(f"Settings override '{chunk}' is not of the form key=value")
		key, value = (part.strip() for part in chunk.split("=", 1))
		try:
			overrides[key] = int(value)
		except ValueError as e:
			raise ValidationError(f"Settings value for '{key}' must be an integer") from e
	return overrides


_settings = None


def get_settings():
	"""Process default settings, honouring the caps environment variable."""
	global _settings
	if _settings is None:
		overrides = parse_overrides(os.environ.get(hooks.settings_env_var, ""))
		_settings = ResolutionSettings().updated(**overrides)
		if overrides:
			logger.info(f"Resolution settings overridden from environment: {sorted(overrides)}")
	return _settings
