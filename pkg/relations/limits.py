from django.conf import settings

from .exceptions import CombinatorialLimit

FALLBACK_CAP = 1_000_000


def default_cap():
    """The cap configured through ``GDPR_MAX_WORLDS``."""
    return getattr(settings, 'GDPR_MAX_WORLDS', FALLBACK_CAP)


def resolve_cap(cap):
    return default_cap() if cap is None else cap


def guard(what, produced, cap):
    """Raise ``CombinatorialLimit`` when ``produced`` exceeds ``cap``."""
    if produced > cap:
        raise CombinatorialLimit(what, produced, cap)
