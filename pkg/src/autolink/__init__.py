"""Concept indexing and automatic linking of mathematical HTML.

The pipeline: a ConceptStore holds linkable definitions, a ConceptIndex
matches their normalized phrases in documents (longest phrase wins),
the disambiguator picks one concept per mention using classification
distances, and the annotator emits embedded links or stand-off records.
A Linker ties the stages together behind a cache; the service and CLI
expose it over HTTP and the command line.
"""

from .annotate import ANCHOR_CLASS, POLICIES, Annotation, embed_links, standoff
from .cache import LinkCache
from .disambiguate import (
    DEFAULT_SOURCE_PRIORITY,
    Resolution,
    concept_distance,
    msc_distance,
    resolve,
)
from .discovery import Mention, discover_mentions, document_words, linkable_segments
from .errors import (
    AutolinkError,
    DuplicateConcept,
    DuplicateSource,
    EmptyLabel,
    EmptyPhrase,
    InvalidMscCode,
    InvalidUrl,
    SpanMismatch,
    UnknownId,
    UnknownSource,
)
from .harvest import (
    HarvestReport,
    IndexerRegistry,
    IndexerRule,
    NodeSelector,
    harvest_document,
    load_rules,
)
from .index import ConceptIndex, build_index, invalidation_keys
from .linker import Linker, LinkResult
from .normalize import (
    TokenSpan,
    default_stopwords,
    load_stopwords,
    normalize_phrase,
    normalize_token,
    tokenize_with_offsets,
)
from .service import ServiceConfig, create_app
from .store import (
    ChangeEvent,
    Concept,
    ConceptStore,
    MscCode,
    load_corpus,
    save_corpus,
    validate_corpus,
)

__version__ = "0.1.0"

__all__ = [
    "ANCHOR_CLASS",
    "Annotation",
    "AutolinkError",
    "ChangeEvent",
    "Concept",
    "ConceptIndex",
    "ConceptStore",
    "DEFAULT_SOURCE_PRIORITY",
    "DuplicateConcept",
    "DuplicateSource",
    "EmptyLabel",
    "EmptyPhrase",
    "HarvestReport",
    "IndexerRegistry",
    "IndexerRule",
    "InvalidMscCode",
    "InvalidUrl",
    "LinkCache",
    "LinkResult",
    "Linker",
    "Mention",
    "MscCode",
    "NodeSelector",
    "POLICIES",
    "Resolution",
    "ServiceConfig",
    "SpanMismatch",
    "TokenSpan",
    "UnknownId",
    "UnknownSource",
    "build_index",
    "concept_distance",
    "create_app",
    "default_stopwords",
    "discover_mentions",
    "document_words",
    "embed_links",
    "harvest_document",
    "invalidation_keys",
    "linkable_segments",
    "load_corpus",
    "load_rules",
    "load_stopwords",
    "msc_distance",
    "normalize_phrase",
    "normalize_token",
    "resolve",
    "save_corpus",
    "standoff",
    "tokenize_with_offsets",
    "validate_corpus",
]
