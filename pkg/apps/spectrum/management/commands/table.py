import csv

from apps.core.commands import HypsysCommand
from apps.spectrum.census import theoremC_table
from apps.spectrum.search import SearchConfig


class Command(HypsysCommand):
    help = 'Number of distinct dilatations below 2 in H^hyp(2g-2) for a range of genera'

    def add_engine_arguments(self, parser):
        parser.add_argument('--g-min', type=int, default=2)
        parser.add_argument('--g-max', type=int, required=True)

    def handle_engine(self, **options):
        config = SearchConfig.from_engine(2 * options['g_min'], self.engine)
        rows = theoremC_table(options['g_min'], options['g_max'], config, self.engine.precision_bits)
        payload = [row.as_dict(self.engine.display_width) for row in rows]

        fmt = options['format']
        if fmt == 'json':
            self.write_json(payload)
        elif fmt == 'csv':
            writer = csv.writer(self.stdout)
            writer.writerow(['genus', 'n', 'stratum', 'count', 'complete', 'systole'])
            for row in payload:
                writer.writerow([row['genus'], row['n'], row['stratum'], row['count'],
                                 int(row['complete']), row['systole'] or ''])
        else:
            for row in payload:
                status = '' if row['complete'] else '  (incomplete)'
                self.stdout.write(
                    f"g={row['genus']:<3} {row['stratum']:<8} {row['count']:>6}  systole {row['systole']}{status}"
                )
        return all(row.complete for row in rows)
