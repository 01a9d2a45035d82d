import logging
from .settings import *

# Modify project settings to speed up unit tests.
logging.disable(logging.CRITICAL)
DEBUG = False
SCAN_CHUNK = 16
