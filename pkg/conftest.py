import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "accinfo.settings_test")
django.setup()
