from django.core.management.base import CommandError

from Potentia.exceptions import ProvedBoundViolation
from apps.toolkit.base import PotentiaCommand
from apps.toolkit.serializers import SuiteSerializer, VerifyPointSerializer
from apps.verification.suite import proved_bound_suite, verify_point


class Command(PotentiaCommand):
    help = "Доведені оцінки: сталі c..c5, зубці, c3, c4, далеке поле. Код 4, якщо щось не виконалось"

    def add_command_arguments(self, parser):
        parser.add_argument("--trials", type=int, help="Випадкові множини з 2-4 смуг замість --set/--x0")
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--samples", type=int, help="Точок для оцінки |F(z) - eta0| <= c4|z - x0|")

    def handle(self, *args, **options):
        cfg = self.config(options)
        if options.get("trials") is not None:
            if options["trials"] < 1:
                raise CommandError(f"--trials must be positive, got {options['trials']}")
            suite = proved_bound_suite(options["trials"], options["seed"], options.get("samples"))
            payload, ok = suite.to_dict(), suite.ok
            rows = [{"index": i, "set": t["set"], "x0": t["x0"], "ok": t["ok"]} for i, t in enumerate(suite.trials)]
            self.write(cfg, payload, rows, ["index", "set", "x0", "ok"], SuiteSerializer)
        else:
            cfg.require("set", "x0")
            payload = verify_point(cfg.set, cfg.x0, options.get("samples"))
            ok = payload["ok"]
            rows = [{"set": payload["set"], "x0": payload["x0"], "ok": ok}]
            self.write(cfg, payload, rows, ["set", "x0", "ok"], VerifyPointSerializer)
        if not ok:
            raise ProvedBoundViolation("proved-bound verification failed; see the report", report=payload)
