from django.core.management.base import CommandError

from apps.minimax.services import remez_sweep
from apps.toolkit.base import PotentiaCommand
from apps.toolkit.serializers import RemezSerializer

COLUMNS = ["n", "error", "iterations"]


class Command(PotentiaCommand):
    help = "E_n(|x - x0|^alpha, E) алгоритмом Ремеза для одного або кількох степенів"
    default_format = "csv"
    uses_alpha = True

    def add_command_arguments(self, parser):
        parser.add_argument("--n", type=int, help="Один степінь")
        parser.add_argument("--degrees", help='Степені: "20:120:even" або "2,4,8"')
        parser.add_argument("--grid", type=int, help="Точок сітки на смугу")
        parser.add_argument("--tol", type=float, help="Відносна точність вирівнювання")

    def handle(self, *args, **options):
        if options.get("n") is not None and options.get("degrees"):
            raise CommandError("use either --n or --degrees, not both")
        cfg = self.config(options).require("set", "x0", "alpha")
        if cfg.degrees is None:
            raise CommandError("missing required argument(s): --n or --degrees")
        rows = remez_sweep(cfg.set, cfg.x0, cfg.alpha, cfg.degrees, cfg.grid, cfg.tol)
        payload = {"set": cfg.set.to_spec(), "x0": cfg.x0, "alpha": cfg.alpha, "rows": rows}
        # у CSV лише n,error,iterations; levelled лишається в JSON
        self.write(cfg, payload, [{key: row[key] for key in COLUMNS} for row in rows], COLUMNS, RemezSerializer)
