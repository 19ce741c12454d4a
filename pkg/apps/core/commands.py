"""
Shared base for the engine management commands.

Adds the common engine flags, logs the configuration echo, writes the
optional timestamped header and maps domain errors to exit codes.
"""
import json
import logging

from django.core.management.base import BaseCommand, CommandError
from django.utils import timezone

from .conf import get_engine_settings
from .exceptions import EXIT_INCOMPLETE, HypsysError

logger = logging.getLogger(__name__)


class HypsysCommand(BaseCommand):
    formats = ('text', 'json', 'csv')

    def add_arguments(self, parser):
        parser.add_argument('--precision', type=int, default=None,
                            help='Precision ceiling in bits for exact comparisons')
        parser.add_argument('--threads', type=int, default=None,
                            help='Worker processes for the search')
        parser.add_argument('--max-depth', type=int, default=None,
                            help='Path length cap for the search')
        parser.add_argument('--time-budget', type=float, default=None,
                            help='Wall clock budget in seconds')
        parser.add_argument('--format', choices=self.formats, default=self.formats[0])
        parser.add_argument('--no-header', action='store_true',
                            help='Suppress the timestamped header line')
        self.add_engine_arguments(parser)

    def add_engine_arguments(self, parser):
        """Subcommand specific flags"""

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def handle(self, *args, **options):
        self.engine = get_engine_settings(
            precision_bits=options.get('precision'),
            threads=options.get('threads'),
            max_depth=options.get('max_depth'),
            time_budget=options.get('time_budget'),
        )
        echo = {
            key: value for key, value in options.items()
            if key not in ('stdout', 'stderr', 'skip_checks', 'traceback',
                           'settings', 'pythonpath', 'no_color', 'force_color')
        }
        logger.info(
            "%s config: %s engine: %s",
            self.command_name,
            json.dumps(echo, sort_keys=True, default=str),
            json.dumps(self.engine.as_dict(), sort_keys=True),
        )
        if not options.get('no_header') and options.get('format') != 'json':
            self.stdout.write(f"# hypsys {self.command_name} {timezone.now().isoformat()}")

        try:
            complete = self.handle_engine(**options)
        except HypsysError as exc:
            logger.error("%s failed: %s", self.command_name, exc)
            raise CommandError(str(exc), returncode=exc.exit_code) from exc

        if complete is False:
            logger.warning("%s: search incomplete, result is a lower bound only", self.command_name)
            raise CommandError("incomplete search", returncode=EXIT_INCOMPLETE)

    def handle_engine(self, **options):
        """
        Run the subcommand. Returning False marks the result as incomplete.
        """
        raise NotImplementedError

    def write_json(self, payload):
        self.stdout.write(json.dumps(payload, indent=2, sort_keys=True))
