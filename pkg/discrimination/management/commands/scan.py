from discrimination.management.base import RunCommand
from discrimination.oracle import DEFAULT_REFINE_ITERS


class Command(RunCommand):
    help = 'Brute-force search over the general 3-element real POVM for E_M'
    command = 'scan'
    format_choices = ('json', 'csv')

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--M', action='store', type=int, required=True, help='Number of signal states', dest='M')
        parser.add_argument('--grid', action='store', type=int, required=True, help='Lattice points per coordinate', dest='grid_n')
        parser.add_argument(
            '--refine-iters',
            action='store',
            type=int,
            default=DEFAULT_REFINE_ITERS,
            help='Maximum coordinate-descent rounds after the lattice search (0 disables refinement)',
            dest='refine_iters',
        )

    def config_options(self, options):
        return {'M': options['M'], 'grid_n': options['grid_n'], 'refine_iters': options['refine_iters']}
