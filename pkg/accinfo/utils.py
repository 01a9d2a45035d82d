"""Helpers shared by the discrimination and receiver apps: information units,
number formatting and writing command output.
"""
from django.conf import settings
from django.core.exceptions import ValidationError
import math

UNIT_NATS = "nats"
UNIT_BITS = "bits"
UNIT_CHOICES = (
    (UNIT_NATS, "Natural-log information units"),
    (UNIT_BITS, "Base-2 information units"),
)


def convert_information(value_nats, unit=UNIT_NATS):
    """Convert an information value held in nats to the requested unit.
    Conversion only ever happens at the output boundary.
    """
    if unit == UNIT_NATS:
        return float(value_nats)
    if unit == UNIT_BITS:
        return float(value_nats) / math.log(2)
    raise ValidationError(f"Unknown information unit {unit!r}", code="invalid")


def format_number(value, digits=None):
    """Return a float formatted with the configured number of significant digits."""
    if digits is None:
        digits = settings.SIGNIFICANT_DIGITS
    return f"{float(value):.{digits}g}"


def float_format(digits=None):
    """printf-style format string for pandas ``to_csv``."""
    if digits is None:
        digits = settings.SIGNIFICANT_DIGITS
    return f"%.{digits}g"


def write_output(text, output_path=None, stream=None):
    """Write serialized output to a file, or to the stream when no path is given.
    OSError is left to the caller, which maps it to the I/O exit status.
    """
    if output_path:
        with open(output_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    elif stream is not None:
        stream.write(text)
