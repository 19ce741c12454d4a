from apps.core.commands import HypsysCommand
from apps.permutations.words import k_max
from apps.spectrum.census import second_length
from apps.spectrum.search import SearchConfig


class Command(HypsysCommand):
    help = 'Second least dilatation for even n >= 18 with n != 4 mod 6'

    def add_engine_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)

    def handle_engine(self, **options):
        n = options['n']
        config = SearchConfig.from_engine(n, self.engine, width=self.engine.display_width)
        result = second_length(n, config, self.engine.precision_bits)
        width = self.engine.display_width
        payload = {
            'n': n,
            'k': k_max(n) - 1,
            'complete': result.complete,
            'coefficients': list(result.polynomial.coeffs),
            'polynomial': str(result.polynomial),
            'predicted': result.predicted.as_dict(),
            'realizing_paths': result.realizing_paths,
            'entry': result.entry.as_dict(width) if result.entry else None,
        }

        if options['format'] == 'json':
            self.write_json(payload)
        else:
            self.stdout.write(f"n={n}: theta_{{n,K_n-1}} with K_n-1 = {payload['k']}")
            self.stdout.write(f"polynomial: {result.polynomial}")
            self.stdout.write(f"root: {result.predicted.decimal()}")
            if result.entry is not None:
                self.stdout.write(f"realized by: k={result.entry.k} [{result.entry.word}]")
        return result.complete
