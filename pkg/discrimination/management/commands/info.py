from discrimination.lookups import FAMILY_CHOICES, FAMILY_GENERAL_W, FAMILY_PAIRS
from discrimination.management.base import RunCommand


class Command(RunCommand):
    help = 'Accessible information, mutual information, error probability and lattice check of a strategy for E_M'
    command = 'info'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--M', action='store', type=int, required=True, help='Number of signal states', dest='M')
        parser.add_argument(
            '--family',
            action='store',
            choices=[c[0] for c in FAMILY_CHOICES if c[0] not in (FAMILY_PAIRS, FAMILY_GENERAL_W)],
            help='Strategy family (default: covariant)',
            dest='family',
        )
        parser.add_argument('--m', action='store', type=int, help='First index of W(m, n)', dest='m')
        parser.add_argument('--n', action='store', type=int, help='Second index of W(m, n)', dest='n')
        parser.add_argument('--k', action='store', type=int, help='Subgroup order', dest='k')
        parser.add_argument('--l', action='store', type=int, help='Subgroup offset', dest='l')
        parser.add_argument('--lambda', action='store', type=float, help='Mixing weight of the mu4 family', dest='lam')
        parser.add_argument('--eps', action='store', type=float, default=0.0, help='Depolarising noise of the source', dest='eps')
        parser.add_argument('--theta', action='store', type=float, help='Seed angle of the covariant family (default: pi/2)', dest='theta')
        parser.add_argument('--double', action='store_true', help='Evaluate the product measurement on the two-copy source', dest='double')
        parser.add_argument('--ensemble-file', action='store', help='JSON ensemble to use instead of E_M', dest='ensemble_file')
        parser.add_argument('--povm-file', action='store', help='JSON POVM to use instead of a family', dest='povm_file')

    def config_options(self, options):
        return {key: options[key] for key in ('M', 'family', 'm', 'n', 'k', 'l', 'lam', 'eps', 'theta', 'double', 'ensemble_file', 'povm_file')}
