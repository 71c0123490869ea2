from django.core.management.base import CommandError

from apps.intervals.parser import parse_set_spec
from apps.intervals.sets import cantor_exhaustion, constant_exhaustion
from apps.toolkit.base import PotentiaCommand
from apps.toolkit.serializers import DichotomySerializer
from apps.verification.checks import dichotomy_report


def float_list(text):
    return [float(tok) for tok in str(text).split(",") if tok.strip()]


class Command(PotentiaCommand):
    help = "Таблиця дихотомії по рівнях вичерпання: n^alpha E_n та sup g/|z - x0|"
    uses_alpha = True

    def add_command_arguments(self, parser):
        parser.add_argument("--degrees")
        parser.add_argument("--cantor", type=float, help="Частка вирізаної середини (Cantor-подібні рівні)")
        parser.add_argument("--levels", type=int, default=1)
        parser.add_argument("--carrier", help='Носій "a,b" для --cantor (за замовчуванням -1,1)')
        parser.add_argument("--floors", type=float_list, help='y_min, напр. "1e-4,1e-6,1e-8"')

    def handle(self, *args, **options):
        cfg = self.config(options).require("x0", "alpha")
        if options.get("cantor") is not None:
            carrier = parse_set_spec(options["carrier"] or "-1,1")
            if carrier.m != 1:
                raise CommandError(f"--carrier must be one band, got {options['carrier']!r}")
            exh = cantor_exhaustion(options["cantor"], options["levels"], carrier.carrier)
        elif cfg.set is not None:
            exh = constant_exhaustion(cfg.set, options["levels"])
        else:
            raise CommandError("missing required argument(s): --set or --cantor")

        report = dichotomy_report(exh, cfg.x0, cfg.alpha, cfg.degrees, options.get("floors"))
        payload = {"exhaustion": exh.description, **report.to_dict()}
        rows = [
            {"level": lv.level, "m": lv.m, "h": lv.h, "capacity": lv.capacity,
             "rate_limit": lv.rates.extrapolated_limit, "sup_at_floor": lv.sups[-1][1]}
            for lv in report.levels
        ]
        self.write(cfg, payload, rows, list(rows[0]) if rows else None, DichotomySerializer)
