import json
import math
from typing import Iterable, Tuple
import numpy as np
import pandas as pd
from pandas import DataFrame


def _to_jsonable(value):
    """Convert numpy and pandas values to plain Python, with NaN and infinities as None.

    Args:
        value: A scalar, array, sequence or mapping, nested to any depth.

    Returns:
        The same structure built from dict, list, str, int, float, bool and None.
    """
    if isinstance(value, dict):
        return {str(key): _to_jsonable(item) for key, item in value.items()}
    if isinstance(value, DataFrame):
        return [_to_jsonable(row) for row in value.to_dict(orient="records")]
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_to_jsonable(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if value is None or isinstance(value, str):
        return value
    if pd.isna(value):
        return None
    return str(value)



def _format_json(document: dict) -> str:
    """Serialize a document with sorted keys; equal inputs give identical text.

    Floats are written in their shortest round-trip form, which fixes every
    value to the 17 significant digits of the double it came from.
    """
    return json.dumps(_to_jsonable(document), sort_keys=True, indent=2, allow_nan=False) + "\n"



def _format_csv(frame: DataFrame, header: Iterable[Tuple[str, object]]) -> str:
    """CSV text with a ``# key=value`` metadata block and 17-digit floats."""
    lines = [f"# {key}={'' if value is None else value}" for key, value in header]
    body = frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")
    return "\n".join(lines) + "\n" + body



def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)



def _read_csv(path: str) -> DataFrame:
    """Read a CSV written by :func:`_format_csv`, skipping its metadata block."""
    return pd.read_csv(path, comment="#")



def _certification_table(minima: dict, violations: dict) -> DataFrame:
    """One row per check with its extreme margin and violation count."""
    rows = [
        {"check": name, "extreme": minima.get(name), "violations": violations.get(name, 0)}
        for name in violations
    ]
    return pd.DataFrame(rows, columns=["check", "extreme", "violations"])
