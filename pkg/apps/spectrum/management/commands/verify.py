from apps.core.commands import HypsysCommand
from apps.core.exceptions import InternalInconsistencyError
from apps.spectrum.inequalities import Suite, verify_inequalities


class Command(HypsysCommand):
    help = 'Check the root inequalities, closed forms, ZRL and rome computations instance by instance'

    def add_engine_arguments(self, parser):
        parser.add_argument('--suite', action='append', choices=Suite.values, default=None,
                            help='Repeatable; every suite when omitted')
        parser.add_argument('--n-max', type=int, default=30)
        parser.add_argument('--samples', type=int, default=20, help='Random paths per size for the ZRL suite')
        parser.add_argument('--seed', type=int, default=0)

    def handle_engine(self, **options):
        report = verify_inequalities(
            options['n_max'],
            suites=options['suite'],
            samples=options['samples'],
            seed=options['seed'],
            width=self.engine.display_width,
            precision_bits=self.engine.precision_bits,
        )

        if options['format'] == 'json':
            self.write_json(report.as_dict())
        else:
            for key, (passed, total) in report.counts().items():
                status = 'PASS' if passed == total else 'FAIL'
                self.stdout.write(f"{status}  {key}: {passed}/{total}")
            shown = report.checks if options['verbosity'] >= 2 else report.failures()
            for check in shown:
                self.stdout.write(str(check))

        if not report.passed:
            raise InternalInconsistencyError(f"{len(report.failures())} of {len(report.checks)} checks failed")
        return True
