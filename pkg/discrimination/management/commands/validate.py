from discrimination.management.base import RunCommand


class Command(RunCommand):
    help = 'Checks that a JSON POVM (full or rank-1 real form) is hermitian, positive and complete'
    command = 'validate'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('file', help='Path of the JSON POVM')

    def config_options(self, options):
        return {'file': options['file']}
