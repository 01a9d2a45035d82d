from discrimination.lookups import FAMILY_CHOICES, FAMILY_GENERAL_W, FAMILY_PAIRS
from discrimination.management.base import RunCommand


class Command(RunCommand):
    help = 'Checks the minimum-error optimality conditions of a strategy for the (noisy) source E_M'
    command = 'pe-check'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--M', action='store', type=int, required=True, help='Number of signal states', dest='M')
        parser.add_argument(
            '--family',
            action='store',
            choices=[c[0] for c in FAMILY_CHOICES if c[0] not in (FAMILY_PAIRS, FAMILY_GENERAL_W)],
            help='Strategy family (default: state-directions)',
            dest='family',
        )
        parser.add_argument('--m', action='store', type=int, help='First index of W(m, n)', dest='m')
        parser.add_argument('--n', action='store', type=int, help='Second index of W(m, n)', dest='n')
        parser.add_argument('--k', action='store', type=int, help='Subgroup order', dest='k')
        parser.add_argument('--l', action='store', type=int, help='Subgroup offset', dest='l')
        parser.add_argument('--lambda', action='store', type=float, help='Mixing weight of the mu4 family', dest='lam')
        parser.add_argument('--eps', action='store', type=float, default=0.0, help='Depolarising noise of the source', dest='eps')

    def config_options(self, options):
        return {key: options[key] for key in ('M', 'family', 'm', 'n', 'k', 'l', 'lam', 'eps')}
