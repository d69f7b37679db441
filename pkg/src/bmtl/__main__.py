"""Allow ``python -m bmtl`` as an alias for the ``bmtl`` console script."""

from .cli import entry

entry()
