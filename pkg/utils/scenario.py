"""Scenario documents: one JSON file per command-line run."""

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from utils.errors import ConfigInvalid, TwoRayError
from utils.ray_function import DEFAULT_T, default_grid_size

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
DEFAULT_SEED = 42
DEFAULT_QUAD_TOL = 1e-6
DEFAULT_OUTPUT_DIR = os.getenv("TWORAY_OUTPUT_DIR", "reports")

COMMANDS = (
    "verify-green",
    "check-normality",
    "probe-point-spectrum",
    "resolvent-sweep",
    "counterexample",
    "heat-demo",
)

# commands that run without a model
MODEL_FREE_COMMANDS = ("verify-green",)


@dataclass(frozen=True)
class Numerics:
    T: float = DEFAULT_T
    m: Optional[int] = None
    ker_tol: Optional[float] = None
    quad_tol: float = DEFAULT_QUAD_TOL

    @property
    def grid_size(self) -> int:
        return default_grid_size(self.T) if self.m is None else self.m


@dataclass(frozen=True)
class Scenario:
    name: str
    command: str
    model: Any
    model_document: Dict[str, Any]
    numerics: Numerics
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    output_dir: Path = Path(DEFAULT_OUTPUT_DIR)

    def param(self, key: str, default: Any = None) -> Any:
        return self.params.get(key, default)


def parse_complex(value: Union[float, int, List[float], Dict[str, float]]) -> complex:
    """Accept 1.5, [re, im] or {"re": .., "im": ..}."""
    if isinstance(value, bool):
        raise ConfigInvalid(f"not a number: {value!r}")
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return complex(float(value["re"]), float(value["im"]))
    raise ConfigInvalid(f"cannot read a complex number from {value!r}")


def model_kind(model_doc: Dict[str, Any]) -> str:
    if "preset" in model_doc:
        return "preset"
    if model_doc.get("kind") == "heat":
        return "heat"
    return "inline"


def _is_positive(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0


def validate_scenario_document(doc: Any) -> Dict[str, Any]:
    """Validate a scenario document for required fields and sane numerics"""

    validation_results = {
        'valid': True,
        'warnings': [],
        'errors': []
    }

    def error(message: str) -> None:
        validation_results['errors'].append(message)
        validation_results['valid'] = False

    if not isinstance(doc, dict):
        error("scenario document must be a JSON object")
        return validation_results

    command = doc.get("command")
    if command not in COMMANDS:
        error(f"command must be one of {list(COMMANDS)}, got {command!r}")
    if not isinstance(doc.get("name", ""), str):
        error("name must be text")
    seed = doc.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        error(f"seed must be a non-negative integer, got {seed!r}")

    numerics = doc.get("numerics", {})
    if not isinstance(numerics, dict):
        error("numerics must be an object")
        numerics = {}
    for key in ("T", "m", "ker_tol", "quad_tol"):
        if key in numerics and not _is_positive(numerics[key]):
            error(f"numerics.{key} must be positive, got {numerics[key]!r}")
    if "m" in numerics and _is_positive(numerics["m"]) and (int(numerics["m"]) != numerics["m"] or numerics["m"] < 5):
        error(f"numerics.m must be an integer >= 5, got {numerics['m']!r}")
    if _is_positive(numerics.get("T", 1)) and numerics.get("T", DEFAULT_T) < 10:
        validation_results['warnings'].append("truncation length below 10 may leave non-negligible tails")

    params = doc.get("params", {})
    if not isinstance(params, dict):
        error("params must be an object")

    model_doc = doc.get("model")
    if model_doc is None:
        if command not in MODEL_FREE_COMMANDS:
            error(f"command {command!r} needs a model")
    elif not isinstance(model_doc, dict):
        error("model must be an object")
    else:
        kind = model_kind(model_doc)
        if kind == "preset" and model_doc["preset"] not in ("S1", "S2"):
            error(f"unknown preset {model_doc['preset']!r}")
        elif kind == "heat":
            n_modes = model_doc.get("N")
            if not isinstance(n_modes, int) or isinstance(n_modes, bool) or n_modes < 1:
                error(f"heat model needs an integer N >= 1, got {n_modes!r}")
            if "phi" not in model_doc:
                error("heat model needs phi")
        elif kind == "inline":
            missing = [key for key in ("dim", "a", "b", "A1", "A2", "W") if key not in model_doc]
            if missing:
                error(f"inline model lacks {missing}")
        if command == "heat-demo" and kind != "heat":
            error("heat-demo needs a heat model")

    return validation_results


def build_model(model_doc: Optional[Dict[str, Any]], numerics: Numerics):
    """ExtensionSpec for inline/preset models, HeatConfig for heat models, None when absent."""
    # imported here: services depend on utils
    from data.models import get_preset
    from services.extension import spec_from_document
    from services.heat_model import HeatConfig

    if model_doc is None:
        return None
    kind = model_kind(model_doc)
    if kind == "preset":
        return get_preset(model_doc["preset"])
    if kind == "heat":
        return HeatConfig(N=int(model_doc["N"]), phi=float(model_doc["phi"]),
                          T=numerics.T, m=numerics.m)
    return spec_from_document(model_doc, numerics.ker_tol)


def build_scenario(doc: Dict[str, Any], seed: Optional[int] = None,
                   output_dir: Optional[Union[str, Path]] = None) -> Scenario:
    """Validate a document and turn it into a Scenario; raises ConfigInvalid."""
    results = validate_scenario_document(doc)
    for warning in results['warnings']:
        logger.warning("scenario: %s", warning)
    if not results['valid']:
        raise ConfigInvalid("; ".join(results['errors']))

    raw = doc.get("numerics", {})
    numerics = Numerics(
        T=float(raw.get("T", DEFAULT_T)),
        m=int(raw["m"]) if "m" in raw else None,
        ker_tol=float(raw["ker_tol"]) if "ker_tol" in raw else None,
        quad_tol=float(raw.get("quad_tol", DEFAULT_QUAD_TOL)),
    )
    try:
        model = build_model(doc.get("model"), numerics)
    except ConfigInvalid:
        raise
    except (TwoRayError, ValueError, KeyError, TypeError) as e:
        raise ConfigInvalid(f"model could not be built: {e}") from e

    return Scenario(
        name=str(doc.get("name", doc["command"])),
        command=doc["command"],
        model=model,
        model_document=doc.get("model") or {},
        numerics=numerics,
        params=dict(doc.get("params", {})),
        seed=int(doc.get("seed", DEFAULT_SEED)) if seed is None else int(seed),
        output_dir=Path(output_dir or doc.get("output_dir") or DEFAULT_OUTPUT_DIR),
    )


def load_scenario(path: Union[str, Path], seed: Optional[int] = None,
                  output_dir: Optional[Union[str, Path]] = None) -> Scenario:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as e:
        raise ConfigInvalid(f"cannot read scenario {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigInvalid(f"scenario {path} is not valid JSON: {e}") from e
    logger.info("loaded scenario %s", path)
    return build_scenario(doc, seed, output_dir)


def extension_for(scenario: Scenario):
    """ExtensionSpec of the scenario model; heat models go through the cosine reduction."""
    from services.heat_model import HeatConfig, cosine_reduce

    if isinstance(scenario.model, HeatConfig):
        return cosine_reduce(scenario.model)
    if scenario.model is None:
        raise ConfigInvalid(f"command {scenario.command!r} needs a model")
    return scenario.model
