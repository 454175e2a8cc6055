"""Shared error types."""

from __future__ import annotations


class CapExceeded(Exception):
    """A desk-scale budget was exhausted before the requested answer was found.

    This is an explicit error value, never a silent clamp: callers either
    handle it or surface it.  ``context`` identifies the offending search
    (for coefficient searches it carries the translation/index pair).
    """

    def __init__(self, what: str, **context):
        self.what = what
        self.context = dict(context)
        detail = ", ".join(f"{k}={v}" for k, v in sorted(self.context.items()))
        super().__init__(f"{what} ({detail})" if detail else what)


class UsageError(Exception):
    """Malformed command-line or API input."""
