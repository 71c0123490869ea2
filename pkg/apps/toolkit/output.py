"""
CSV (pandas, 17 значущих цифр) і JSON (sort_keys, indent=2) з перевіркою схеми.
"""
import json
import logging
from typing import Optional, Sequence

import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def render_csv(rows: Sequence[dict], columns: Optional[Sequence[str]] = None) -> str:
    frame = pd.DataFrame(list(rows), columns=list(columns) if columns else None)
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def render_json(payload: dict, serializer_class=None) -> str:
    text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"
    if serializer_class is not None:
        # перевіряємо саме те, що піде у вивід (кортежі вже стали списками)
        serializer = serializer_class(data=json.loads(text))
        serializer.is_valid(raise_exception=True)
    return text


def emit(stdout, text: str, out: Optional[str] = None):
    """У файл --out або в stdout команди; текст байт у байт однаковий."""
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        logger.info(f"wrote {len(text)} characters to {out}")
    else:
        stdout.write(text, ending="")
