import csv

from apps.core.commands import HypsysCommand
from apps.core.exceptions import MustReduceError, ReducibleCaseError
from apps.permutations.words import k_max, l_max
from apps.polynomials.families import family_polynomial, family_root


class Command(HypsysCommand):
    help = 'Closed-form polynomials P_{n,k} / P_{n,K_n,l} and their Perron roots'

    def add_engine_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)
        group = parser.add_mutually_exclusive_group()
        group.add_argument('--k', type=int, default=None, help='Start index (default K_n)')
        group.add_argument('--l', type=int, default=None, help='Index of the gamma_{n,K_n,l} family')
        parser.add_argument('--all', action='store_true',
                            help='Every k in 1..K_n, or every l in 1..L_n with --l 0')

    def _members(self, n, k, l, everything):
        if not everything:
            return [(k, l)]
        if l is not None:
            return [(None, value) for value in range(1, l_max(n) + 1)]
        return [(value, None) for value in range(1, k_max(n) + 1)]

    def handle_engine(self, **options):
        n = options['n']
        width = self.engine.display_width
        rows = []
        for k, l in self._members(n, options['k'], options['l'], options['all']):
            row = {'n': n, 'k': k if k is not None else k_max(n), 'l': l, 'reduced_to': None}
            try:
                polynomial = family_polynomial(n, k, l)
                row['coefficients'] = list(polynomial.coeffs)
                row['polynomial'] = str(polynomial)
            except (MustReduceError, ReducibleCaseError) as exc:
                row['coefficients'] = None
                row['polynomial'] = None
                row['reduced_to'] = exc.context
            row['root'] = family_root(n, k, l, width).decimal()
            rows.append(row)

        fmt = options['format']
        if fmt == 'json':
            self.write_json(rows)
        elif fmt == 'csv':
            writer = csv.writer(self.stdout)
            writer.writerow(['n', 'k', 'l', 'coefficients', 'root', 'reduced_to'])
            for row in rows:
                writer.writerow([
                    row['n'], row['k'], row['l'] or '',
                    ' '.join(map(str, row['coefficients'] or [])), row['root'],
                    ' '.join(f'{key}={value}' for key, value in (row['reduced_to'] or {}).items()),
                ])
        else:
            for row in rows:
                label = f"P_{{{row['n']},{row['k']}" + (f",{row['l']}}}" if row['l'] else '}')
                if row['reduced_to']:
                    reduced = ', '.join(f'{key}={value}' for key, value in row['reduced_to'].items())
                    self.stdout.write(f"{label}: reduces to ({reduced})  root {row['root']}")
                else:
                    self.stdout.write(f"{label} = {row['polynomial']}  root {row['root']}")
        return True
