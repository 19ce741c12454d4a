import csv

from django.core.management.base import CommandError

from apps.core.commands import HypsysCommand
from apps.matrices.transition import RauzyPath, path_matrix
from apps.permutations.permutation import LabeledPermutation
from apps.suspensions.eigen import path_eigen_data
from apps.suspensions.zrl import zrl_normalize, zrl_orbit_summary, zrl_trace


class Command(HypsysCommand):
    help = 'Normalize a symmetric path by ZRL steps until it starts on the central loop with a b move'

    def add_engine_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)
        start = parser.add_mutually_exclusive_group(required=True)
        start.add_argument('--start-k', type=int, help='Start at central(n).t^k')
        start.add_argument('--start', help="Explicit start, e.g. '1 2 3 4 / 4 1 3 2'")
        parser.add_argument('--word', required=True, help="Move word, e.g. 'b^2 t'")
        parser.add_argument('--trace', action='store_true', help='One line per ZRL step')
        parser.add_argument('--iterations', type=int, default=None,
                            help='ZRL step budget (defaults to HYPSYS_ZRL_BUDGET)')
        parser.add_argument('--eigen', action='store_true',
                            help='Also report lambda, tau and the height interval')

    def handle_engine(self, **options):
        if options['start'] is not None:
            start = LabeledPermutation.parse(options['start'])
            if start.n != options['n']:
                raise CommandError(f"--start has {start.n} letters, expected {options['n']}")
            path = RauzyPath.build(start, options['word'])
        else:
            path = RauzyPath.from_central(options['n'], options['start_k'], options['word'])

        orbit = zrl_normalize(
            path,
            max_iterations=options['iterations'] or self.engine.zrl_budget,
            precision_bits=self.engine.precision_bits,
        )
        summary = zrl_orbit_summary(orbit)
        polynomial = path_matrix(orbit.path, 'symmetric').charpoly()
        summary['polynomial'] = str(polynomial)
        summary['coefficients'] = list(polynomial.coeffs)
        if options['eigen']:
            summary['eigen'] = path_eigen_data(path, 'symmetric', self.engine.precision_bits).as_dict()
        if not options['trace']:
            summary.pop('steps')

        fmt = options['format']
        if fmt == 'json':
            self.write_json(summary)
        elif fmt == 'csv':
            writer = csv.writer(self.stdout)
            writer.writerow(['index', 'right_word', 'left_word', 'coordinates', 'swapped', 'digest'])
            for step in orbit.steps:
                writer.writerow(step.trace_line().split('\t'))
        else:
            self.stdout.write(f"path: {path.start} [{path.word}]")
            if options['trace']:
                for line in zrl_trace(orbit):
                    self.stdout.write(line)
            self.stdout.write(
                f"normalized after {orbit.iterations} steps: {orbit.path.start} [{orbit.path.word}]"
            )
            self.stdout.write(f"charpoly: {polynomial}")
            if options['eigen']:
                eigen = summary['eigen']
                self.stdout.write(f"theta: {eigen['theta']['root']}")
                self.stdout.write(f"lengths: {' '.join(f'{v:.12f}' for v in eigen['lengths'])}")
                self.stdout.write(f"tau: {' '.join(f'{v:.12f}' for v in eigen['tau'])}")
                self.stdout.write(f"heights: ({eigen['interval']['lo']:.12f}, {eigen['interval']['hi']:.12f})")
        return True
