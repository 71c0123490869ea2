from apps.asymptotics.services import check_alpha, default_ladder, rate_report, vt_check
from apps.toolkit.base import PotentiaCommand
from apps.toolkit.serializers import RateSerializer

RATE_COLUMN = "n^alpha_En"


class Command(PotentiaCommand):
    help = "n^alpha E_n по драбині степенів, екстраполяція границі та (--vt) порівняння з h(x0)^-alpha sigma_alpha"
    uses_alpha = True

    def add_command_arguments(self, parser):
        parser.add_argument("--degrees", help='Драбина степенів, напр. "20:120:even"')
        parser.add_argument("--vt", action="store_true", help="Додати перевірку lim = h(x0)^-alpha sigma_alpha")

    def handle(self, *args, **options):
        cfg = self.config(options).require("set", "x0", "alpha")
        check_alpha(cfg.alpha)
        degrees = cfg.degrees or default_ladder()
        vt = None
        if options["vt"]:
            vt = vt_check(cfg.set, cfg.x0, cfg.alpha, degrees)
            report = vt.lhs
        else:
            report = rate_report(cfg.set, cfg.x0, cfg.alpha, degrees)
        payload = {
            "set": cfg.set.to_spec(),
            "rate": report.to_dict(),
            "vt": vt.to_dict() if vt else None,
        }
        rows = [{"n": n, RATE_COLUMN: value} for n, value in report.samples]
        self.write(cfg, payload, rows, ["n", RATE_COLUMN], RateSerializer)
