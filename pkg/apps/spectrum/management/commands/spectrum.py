import csv
from fractions import Fraction

from apps.core.commands import HypsysCommand
from apps.spectrum.census import check_symmetric_construction, genus, spectrum, stratum
from apps.spectrum.models import SpectrumRun
from apps.spectrum.search import COMPLETENESS_BOUND, SearchConfig

COLUMNS = ['n', 'genus', 'stratum', 'rank', 'coefficients', 'root', 'root_lo', 'root_hi',
           'log_root', 'k', 'word', 'digest']


class Command(HypsysCommand):
    help = 'Every distinct dilatation below a bound realized by pure admissible symmetric paths'

    def add_engine_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--bound', type=Fraction, default=COMPLETENESS_BOUND,
                            help='Dilatation cutoff, e.g. 2 or 3/2 (complete only up to 2)')
        parser.add_argument('--save', action='store_true', help='Store the run in the database')
        parser.add_argument('--check-suspensions', action='store_true',
                            help='Build the weak suspension datum of every emitted path')

    def handle_engine(self, **options):
        n = options['n']
        config = SearchConfig.from_engine(n, self.engine, bound=options['bound'])
        census = spectrum(config, self.engine.precision_bits)
        if options['check_suspensions']:
            check_symmetric_construction(census, self.engine.precision_bits)
        if options['save']:
            run = SpectrumRun.from_result(census, self.engine.display_width)
            self.stderr.write(f"saved run {run.pk}")
        for warning in census.warnings:
            self.stderr.write(f"warning: {warning}")

        rows = census.as_dict(self.engine.display_width)
        fmt = options['format']
        if fmt == 'json':
            self.write_json(rows)
        elif fmt == 'csv':
            writer = csv.writer(self.stdout)
            writer.writerow(COLUMNS)
            for row in rows:
                writer.writerow([
                    row['n'], row['genus'], row['stratum'], row['rank'],
                    ' '.join(map(str, row['coefficients'])), row['root'], row['root_lo'],
                    row['root_hi'], row['log_root'], row['representative']['k'],
                    row['representative']['word'], row['digest'],
                ])
        else:
            self.stdout.write(
                f"n={n} {stratum(n)} genus {genus(n)}: {len(census)} lengths below {config.bound}"
            )
            for entry in census:
                self.stdout.write(
                    f"{entry.rank:>4}  {entry.enclosure.decimal()}  "
                    f"k={entry.k}  [{entry.word}]  {entry.defining}"
                )
        return census.complete
