import math

from apps.comb.services import h_at
from apps.equilibrium.services import capacity_of, solve_equilibrium
from apps.toolkit.base import PotentiaCommand
from apps.toolkit.serializers import EqSerializer


class Command(PotentiaCommand):
    help = "Рівноважна міра: ємність, нулі q у лакунах, коефіцієнти q, маси смуг"

    def add_command_arguments(self, parser):
        parser.add_argument("--quad-points", dest="quad_points", type=int, help="Вузлів квадратури на смугу")

    def handle(self, *args, **options):
        cfg = self.config(options).require("set")
        eq = solve_equilibrium(cfg.set, cfg.quad_points)
        capacity = capacity_of(eq)
        masses = [math.fsum(w) for w in eq.band_weights]
        payload = {
            "set": cfg.set.to_spec(),
            "bands": [list(band) for band in cfg.set.bands],
            "capacity": capacity,
            "log_capacity": eq.log_capacity,
            "gap_zeros": list(eq.gap_zeros),
            "q_coeffs": [float(c) for c in eq.q_coeffs],
            "band_masses": masses,
            "quad_points": eq.quad_points,
            "x0": cfg.x0,
            "h": h_at(eq, cfg.x0) if cfg.x0 is not None else None,
        }
        rows = [
            {"band": k + 1, "a": a, "b": b, "mass": mass}
            for k, ((a, b), mass) in enumerate(zip(cfg.set.bands, masses))
        ]
        self.write(cfg, payload, rows, serializer_class=EqSerializer)
