from django.core.management.base import CommandError

from apps.equilibrium.services import green_at, solve_equilibrium
from apps.toolkit.base import PotentiaCommand
from apps.toolkit.serializers import GreenSerializer


def complex_point(text):
    try:
        return complex(str(text).replace(" ", ""))
    except ValueError:
        raise ValueError(f"--z {text!r} is not a complex number like 0.5+1j") from None


class Command(PotentiaCommand):
    help = "Функція Гріна g(z) для C \\ E в одній або кількох точках"
    uses_x0 = False

    def add_command_arguments(self, parser):
        parser.add_argument("--z", dest="z", action="append", type=complex_point,
                            help="Точка x+yj (можна повторювати)")
        parser.add_argument("--quad-points", dest="quad_points", type=int)

    def handle(self, *args, **options):
        cfg = self.config(options).require("set")
        if not options.get("z"):
            raise CommandError("missing required argument(s): --z")
        eq = solve_equilibrium(cfg.set, cfg.quad_points)
        rows = [{"re": z.real, "im": z.imag, "g": green_at(eq, z)} for z in options["z"]]
        payload = {
            "set": cfg.set.to_spec(),
            "points": [{"z": [r["re"], r["im"]], "g": r["g"]} for r in rows],
        }
        self.write(cfg, payload, rows, ["re", "im", "g"], GreenSerializer)
