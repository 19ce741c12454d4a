import csv

from apps.core.commands import HypsysCommand
from apps.permutations.diagram import build_diagram
from apps.permutations.words import format_word


class Command(HypsysCommand):
    help = 'Build the hyperelliptic Rauzy diagram D_n and report its size or vertices'

    def add_engine_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--stats', action='store_true', help='Vertex and edge counts')
        parser.add_argument('--vertices', action='store_true',
                            help='List vertices with their coordinates')

    def handle_engine(self, **options):
        diagram = build_diagram(options['n'])
        stats = diagram.stats()
        rows = []
        if options['vertices']:
            for i, permutation in enumerate(diagram.vertices):
                coords = diagram.coordinates(permutation)
                rows.append({
                    'index': i,
                    'permutation': str(permutation),
                    'word': format_word(diagram.words[i]),
                    'coordinates': list(coords.parts),
                    'first': coords.first.value,
                })

        fmt = options['format']
        if fmt == 'json':
            payload = dict(stats)
            if rows:
                payload['vertices_list'] = rows
            self.write_json(payload)
        elif fmt == 'csv':
            writer = csv.writer(self.stdout)
            if rows:
                writer.writerow(['index', 'permutation', 'word', 'coordinates', 'first'])
                for row in rows:
                    writer.writerow([row['index'], row['permutation'], row['word'],
                                     ' '.join(map(str, row['coordinates'])), row['first']])
            else:
                writer.writerow(list(stats))
                writer.writerow(list(stats.values()))
        else:
            if options['stats'] or not rows:
                for key, value in stats.items():
                    self.stdout.write(f"{key}: {value}")
            for row in rows:
                self.stdout.write(
                    f"{row['index']:>5}  {row['permutation']}  "
                    f"[{row['word'] or '-'}]  ({', '.join(map(str, row['coordinates']))})"
                )
        return True
