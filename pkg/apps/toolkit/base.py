from django.core.management.base import BaseCommand

from .config import FORMATS, RunConfig
from .output import emit, render_csv, render_json


class PotentiaCommand(BaseCommand):
    """Спільні прапорці --set/--x0/--alpha/--out/--format і запис результату."""

    default_format = "json"
    uses_x0 = True
    uses_alpha = False

    def add_arguments(self, parser):
        parser.add_argument("--set", dest="set", help='Множина: "a1,b1;a2,b2;..."')
        if self.uses_x0:
            parser.add_argument("--x0", type=float, help="Точка x0 в E")
        if self.uses_alpha:
            parser.add_argument("--alpha", type=float, help="Показник alpha > 0")
        parser.add_argument("--out", help="Файл для результату (за замовчуванням stdout)")
        parser.add_argument("--format", choices=FORMATS, default=None,
                            help=f"csv або json (за замовчуванням {self.default_format})")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def config(self, options) -> RunConfig:
        return RunConfig.from_options(options, self.default_format)

    def write(self, cfg: RunConfig, payload: dict, rows=None, columns=None, serializer_class=None):
        if cfg.format == "csv":
            text = render_csv(rows if rows is not None else [payload], columns)
        else:
            text = render_json(payload, serializer_class)
        emit(self.stdout, text, cfg.out)
