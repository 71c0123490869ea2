from apps.comb.services import check_comb_identities, comb_geometry, h_at
from apps.equilibrium.services import solve_equilibrium
from apps.toolkit.base import PotentiaCommand
from apps.toolkit.serializers import CombSerializer


class Command(PotentiaCommand):
    help = "Геометрія гребінки (u_j, v_j, eta0) і перевірка тотожностей F"

    def add_command_arguments(self, parser):
        parser.add_argument("--samples", type=int, default=0,
                            help="Кількість випадкових точок для перевірки Im F = g (0 - без перевірки)")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--quad-points", dest="quad_points", type=int)

    def handle(self, *args, **options):
        cfg = self.config(options).require("set", "x0")
        eq = solve_equilibrium(cfg.set, cfg.quad_points)
        geom = comb_geometry(eq, cfg.x0)
        report = None
        if options["samples"]:
            report = check_comb_identities(eq, geom, options["samples"], options["seed"])
        payload = {
            "set": cfg.set.to_spec(),
            "h": h_at(eq, cfg.x0),
            **geom.to_dict(),
            "identities": report.to_dict() if report else None,
        }
        rows = [
            {"j": j, "u": u, "v": geom.v[j - 1] if 0 < j <= len(geom.v) else 0.0}
            for j, u in enumerate(geom.u)
        ]
        self.write(cfg, payload, rows, ["j", "u", "v"], CombSerializer)
