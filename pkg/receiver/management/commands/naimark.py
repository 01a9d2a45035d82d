from django.conf import settings

from discrimination.management.base import RunCommand


class Command(RunCommand):
    help = 'Builds, verifies and simulates the optical receiver for W(m, m) on E_M (M odd)'
    command = 'naimark'
    format_choices = ('json', 'csv')

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--M', action='store', type=int, required=True, help='Number of signal states (odd)', dest='M')
        parser.add_argument('--m', action='store', type=int, required=True, help='Index m with M/4 < m < M/2', dest='m')
        parser.add_argument('--theta', action='store', type=float, default=0.0, help='Angle of the input signal', dest='theta')
        parser.add_argument('--shots', action='store', type=int, help='Draw this many photon counts from the detection statistics', dest='shots')
        parser.add_argument('--seed', action='store', type=int, default=settings.DEFAULT_SEED, help='Seed of the photon-count sampler', dest='seed')

    def config_options(self, options):
        return {key: options[key] for key in ('M', 'm', 'theta', 'shots', 'seed')}
