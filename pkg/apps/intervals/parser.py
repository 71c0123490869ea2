import re
from typing import List

from Potentia.exceptions import SetSpecError
from .sets import IntervalSet, normalize

_RANGE = re.compile(r"^\s*(\d+)\s*:\s*(\d+)\s*(?::\s*(even|odd|all))?\s*$")


def _to_float(chunk, token):
    s = str(token or "").strip()
    try:
        return float(s)
    except ValueError:
        raise SetSpecError(f"set spec chunk {chunk!r}: {s!r} is not a real number") from None


def parse_set_spec(text: str) -> IntervalSet:
    """
    "a1,b1;a2,b2;..." -> IntervalSet (нормалізований).
    Роздільник смуг ';', всередині смуги ','. Десяткова крапка.
    """
    if text is None or not str(text).strip():
        raise SetSpecError("empty set spec")
    raw = []
    for chunk in str(text).split(";"):
        if not chunk.strip():
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise SetSpecError(f"set spec chunk {chunk!r} must be 'a,b'")
        a = _to_float(chunk, parts[0])
        b = _to_float(chunk, parts[1])
        if not a < b:
            raise SetSpecError(f"set spec chunk {chunk!r} has a >= b")
        raw.append((a, b))
    if not raw:
        raise SetSpecError(f"set spec {text!r} has no bands")
    return normalize(raw)


def parse_degrees(text: str) -> List[int]:
    """
    "20:120:even" -> [20, 22, ..., 120]; "1:5" або "1:5:all" -> [1..5];
    "20,28,40" -> [20, 28, 40].
    """
    if text is None or not str(text).strip():
        raise SetSpecError("empty degree list")
    s = str(text).strip()
    match = _RANGE.match(s)
    if match:
        lo, hi, kind = int(match.group(1)), int(match.group(2)), match.group(3) or "all"
        if lo > hi:
            raise SetSpecError(f"degree range {s!r} has start > stop")
        degrees = list(range(lo, hi + 1))
        if kind == "even":
            degrees = [n for n in degrees if n % 2 == 0]
        elif kind == "odd":
            degrees = [n for n in degrees if n % 2 == 1]
    else:
        try:
            degrees = [int(tok) for tok in s.split(",") if tok.strip()]
        except ValueError:
            raise SetSpecError(f"degree list {s!r} must be 'a:b:even|all' or comma separated integers") from None
    if not degrees:
        raise SetSpecError(f"degree list {s!r} is empty")
    if any(n < 0 for n in degrees):
        raise SetSpecError(f"degree list {s!r} has a negative degree")
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise SetSpecError(f"degree list {s!r} must be strictly increasing")
    return degrees
