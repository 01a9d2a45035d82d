from discrimination.management.base import RunCommand


class Command(RunCommand):
    help = 'Samples the information curve I(theta) of the covariant strategy over [0, pi)'
    command = 'sweep'
    format_choices = ('csv', 'json')

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--M', action='store', type=int, required=True, help='Number of signal states', dest='M')
        parser.add_argument('--points', action='store', type=int, required=True, help='Number of theta samples', dest='points')
        parser.add_argument('--eps', action='store', type=float, default=0.0, help='Depolarising noise of the source', dest='eps')

    def config_options(self, options):
        return {'M': options['M'], 'points': options['points'], 'eps': options['eps']}
