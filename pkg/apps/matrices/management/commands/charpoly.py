import csv

from apps.core.commands import HypsysCommand
from apps.core.exceptions import NoDominantRootError
from apps.matrices.rome import rome_charpoly
from apps.matrices.transition import RauzyPath, path_matrix
from apps.polynomials.roots import perron_root


class Command(HypsysCommand):
    help = 'Matrix V(gamma) of a path from central(n).t^k and its characteristic polynomial'

    def add_engine_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--start-k', type=int, required=True, help='Start at central(n).t^k')
        parser.add_argument('--word', required=True, help="Move word, e.g. 'b^2 t'")
        parser.add_argument('--case', choices=('auto', 'closed', 'symmetric'), default='auto')
        parser.add_argument('--rome', default=None,
                            help='Comma separated rome; also computes the rome charpoly')

    def handle_engine(self, **options):
        path = RauzyPath.from_central(options['n'], options['start_k'], options['word'])
        matrix = path_matrix(path, options['case'])
        polynomial = matrix.charpoly()
        primitive = matrix.is_primitive()
        try:
            root = perron_root(polynomial, self.engine.display_width).decimal()
        except NoDominantRootError:
            root = None

        result = {
            'n': path.n,
            'start': str(path.start),
            'word': path.word,
            'end': str(path.end),
            'case': path.case(),
            'pure': path.is_pure(),
            'matrix': [list(row) for row in matrix.rows],
            'determinant': matrix.det(),
            'coefficients': list(polynomial.coeffs),
            'polynomial': str(polynomial),
            'reciprocal': polynomial.is_reciprocal(),
            'primitive': primitive,
            'min_column_sum': matrix.min_column_sum(),
            'root': root,
        }
        if options['rome']:
            rome = [int(v) for v in options['rome'].split(',') if v.strip()]
            result['rome'] = rome
            result['rome_agrees'] = rome_charpoly(matrix, rome) == polynomial

        fmt = options['format']
        if fmt == 'json':
            self.write_json(result)
        elif fmt == 'csv':
            writer = csv.writer(self.stdout)
            writer.writerow(['n', 'word', 'case', 'primitive', 'coefficients', 'root'])
            writer.writerow([result['n'], result['word'], result['case'], int(primitive),
                             ' '.join(map(str, result['coefficients'])), root or ''])
        else:
            self.stdout.write(f"path: {result['start']} --[{result['word']}]--> {result['end']} ({result['case']})")
            self.stdout.write(str(matrix))
            self.stdout.write(f"charpoly: {polynomial}")
            self.stdout.write(f"primitive: {primitive}  det: {result['determinant']}  delta: {result['min_column_sum']}")
            if root:
                self.stdout.write(f"root: {root}")
            if 'rome_agrees' in result:
                self.stdout.write(f"rome {rome}: {'agrees' if result['rome_agrees'] else 'DIFFERS'}")
        return True
