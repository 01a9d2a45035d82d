from discrimination.lookups import FAMILY_CHOICES, FAMILY_VON_NEUMANN
from discrimination.management.base import RunCommand


class Command(RunCommand):
    help = 'Builds a detection strategy for E_M and writes it as JSON'
    command = 'construct'
    format_choices = ('json', 'rank1')

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('family', choices=[c[0] for c in FAMILY_CHOICES if c[0] != FAMILY_VON_NEUMANN], help='Strategy family')
        parser.add_argument('--M', action='store', type=int, required=True, help='Number of signal states', dest='M')
        parser.add_argument('--m', action='store', type=int, help='First index of W(m, n)', dest='m')
        parser.add_argument('--n', action='store', type=int, help='Second index of W(m, n)', dest='n')
        parser.add_argument('--k', action='store', type=int, help='Subgroup order', dest='k')
        parser.add_argument('--l', action='store', type=int, help='Subgroup offset', dest='l')
        parser.add_argument('--lambda', action='store', type=float, help='Mixing weight of the mu4 family', dest='lam')
        parser.add_argument('--theta', action='store', type=float, help='Seed angle of the covariant family, or offset angle of the general 3-element POVM', dest='theta')
        parser.add_argument('--phi-a', action='store', type=float, help='First relative angle of the general 3-element POVM', dest='phi_a')
        parser.add_argument('--phi-b', action='store', type=float, help='Second relative angle of the general 3-element POVM', dest='phi_b')

    def config_options(self, options):
        return {key: options[key] for key in ('family', 'M', 'm', 'n', 'k', 'l', 'lam', 'theta', 'phi_a', 'phi_b')}
