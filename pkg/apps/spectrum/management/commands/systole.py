from apps.core.commands import HypsysCommand
from apps.spectrum.census import genus, stratum, systole
from apps.spectrum.search import SearchConfig


class Command(HypsysCommand):
    help = 'Least dilatation of the hyperelliptic component, cross-checked against its closed form'

    def add_engine_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)

    def handle_engine(self, **options):
        n = options['n']
        config = SearchConfig.from_engine(n, self.engine, width=self.engine.display_width)
        result = systole(n, config, self.engine.precision_bits)
        width = self.engine.display_width
        payload = {
            'n': n,
            'genus': genus(n),
            'stratum': stratum(n),
            'complete': result.complete,
            'coefficients': list(result.polynomial.coeffs),
            'polynomial': str(result.polynomial),
            'predicted': result.predicted.as_dict(),
            'realizing_paths': result.realizing_paths,
            'entry': result.entry.as_dict(width) if result.entry else None,
        }

        fmt = options['format']
        if fmt == 'json':
            self.write_json(payload)
        elif fmt == 'csv':
            self.stdout.write('n,coefficients,root,log_root,k,word,realizing_paths')
            entry = payload['entry'] or {}
            representative = entry.get('representative', {})
            self.stdout.write(','.join(map(str, [
                n, ' '.join(map(str, payload['coefficients'])), entry.get('root', ''),
                entry.get('log_root', ''), representative.get('k', ''),
                representative.get('word', ''), result.realizing_paths,
            ])))
        else:
            self.stdout.write(f"n={n} {stratum(n)} genus {genus(n)}")
            self.stdout.write(f"polynomial: {result.polynomial}")
            self.stdout.write(f"root: {result.predicted.decimal()}")
            if result.entry is not None:
                self.stdout.write(f"log: {result.entry.enclosure.log_decimal()}")
                self.stdout.write(f"realized by: k={result.entry.k} [{result.entry.word}]")
                self.stdout.write(
                    f"single dedup class at the minimum, {result.realizing_paths} realizing paths"
                )
        return result.complete
