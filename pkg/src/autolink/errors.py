"""Exception types shared across the package."""

from __future__ import annotations


class AutolinkError(Exception):
    """Base class for all errors raised by this package."""


class EmptyLabel(AutolinkError):
    """A concept label normalizes to nothing (all stopwords/punctuation)."""


class EmptyPhrase(AutolinkError):
    """A phrase has no content tokens left after normalization."""


class InvalidUrl(AutolinkError):
    """A concept URL is not an absolute or resolvable reference."""


class InvalidMscCode(AutolinkError):
    """A subject-classification code does not match the 5-character shape."""


class DuplicateConcept(AutolinkError):
    """A concept with the same (source, label, url) already exists."""


class UnknownId(AutolinkError):
    """No concept with the given id exists in the store."""


class DuplicateSource(AutolinkError):
    """An indexer rule is already registered for this source."""


class UnknownSource(AutolinkError):
    """No indexer rule is registered for this source."""


class SpanMismatch(AutolinkError):
    """A resolution's byte span no longer slices to its recorded surface."""
