import json
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List

from dotenv import load_dotenv
from rich.console import Console

load_dotenv(override=True)

console = Console()


@dataclass(kw_only=True, frozen=True)
class Settings:
    budget: int = 10000
    workers: int = 4
    seed: int = 0
    output_folder: str = "./duality_reports"
    matrices: int = 100


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, got {value!r}")


def load_settings() -> Settings:
    """Read settings from the environment (and .env), falling back to defaults."""
    return Settings(
        budget=_env_int("DUALITY_BUDGET", 10000),
        workers=_env_int("DUALITY_WORKERS", 4),
        seed=_env_int("DUALITY_SEED", 0),
        output_folder=os.getenv("DUALITY_OUTPUT") or "./duality_reports",
        matrices=_env_int("DUALITY_MATRICES", 100),
    )


def to_jsonable(obj: Any) -> Any:
    """Fractions become strings, tuples and sets become lists."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"


def write_text(path: str, text: str) -> str:
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path


def timestamped_folder(base: str) -> str:
    folder = os.path.join(base, time.strftime("%Y%m%d_%H%M%S"))
    os.makedirs(folder, exist_ok=True)
    return folder


def parse_int_list(text: str) -> List[int]:
    """'1,2,3' -> [1, 2, 3]"""
    try:
        values = [int(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise ValueError(f"Expected a comma-separated list of integers, got {text!r}")
    if not values:
        raise ValueError("Expected at least one integer")
    return values
