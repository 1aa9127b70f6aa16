"""Human-in-the-loop review: persistence, REST service, and export."""

from .store import ReviewStore, ReviewItem
from .highlights import locate_spans
from .service import create_app

__all__ = ["ReviewStore", "ReviewItem", "locate_spans", "create_app"]
