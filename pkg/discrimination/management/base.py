from django.conf import settings
from django.core.management.base import BaseCommand, CommandError, CommandParser
import sys

from accinfo.utils import UNIT_CHOICES
from discrimination.runner import RunConfig, run


class UsageParser(CommandParser):
    """Argument errors print the usage text and exit with status 1."""

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(1, f"{self.prog}: error: {message}\n")
        raise CommandError(f"Error: {message}", returncode=1)


class RunCommand(BaseCommand):
    """Base for the verbs dispatched through ``discrimination.runner.run``."""
    command = None
    format_choices = ("json",)

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = UsageParser
        return parser

    def add_arguments(self, parser):
        parser.add_argument("--unit", choices=[choice[0] for choice in UNIT_CHOICES], default=settings.DEFAULT_UNIT, help="Information unit of the output")
        parser.add_argument("--output", dest="output_path", help="Write the result to this file instead of stdout")
        parser.add_argument("--format", choices=self.format_choices, help="Output format")

    def config_options(self, options):
        """Command-specific RunConfig fields."""
        return {}

    def handle(self, *args, **options):
        config = RunConfig(
            command=self.command,
            unit=options["unit"],
            output_path=options["output_path"],
            format=options["format"],
            **self.config_options(options),
        )
        result = run(config)
        if result.output and not config.output_path:
            self.stdout.write(result.output, ending="")
        if result.status:
            raise CommandError(result.message, returncode=result.status)
