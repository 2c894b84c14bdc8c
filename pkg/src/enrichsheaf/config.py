import os

DEFAULT_CAP = 10**6
DEFAULT_COVERAGE_CAP = 2**20
DEFAULT_DMAX = 6
CAP_ENV = "ENRICHSHEAF_CAP"


class EnumerationTooLarge(RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


def sieve_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP
