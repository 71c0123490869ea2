from django.conf import settings

DEFAULTS = {
    "QUAD_POINTS": 256,
    "GAP_RESIDUAL_TOL": 1e-10,
    "MASS_TOL": 1e-10,
    "CAPACITY_XCHECK_TOL": 1e-9,
    "PATH_HEIGHT": 0.25,
    "PATH_RTOL": 1e-10,
    "GRID_POINTS": 2000,
    "GRID_PER_DEGREE": 30,
    "REMEZ_TOL": 1e-10,
    "REMEZ_MAX_ITER": 200,
    "EXTENDED_PRECISION_DEGREE": 60,
    "DEGREE_LADDER": "20,28,40,56,80,112",
    "Y_FLOOR": 1e-8,
    "LEDGER_DPS": 50,
    "SEED": 0,
    "TRIALS": 100,
    "LEMMA_SAMPLES": 48,
    "SWEEP_BACKEND": "local",
}


def potentia_setting(name):
    """Значення з settings.POTENTIA, а якщо його там немає - дефолт."""
    block = getattr(settings, "POTENTIA", {}) or {}
    if name in block:
        return block[name]
    return DEFAULTS[name]
