"""Exception types raised across the decisioning pipeline."""


class SocialCreditError(Exception):
    """Base class for every library-specific error."""


# --- profile ingestion ------------------------------------------------------

class MalformedDocument(SocialCreditError):
    """The input is not a syntactically valid profile document."""


class SchemaViolation(SocialCreditError):
    """The document parsed but violates the profile schema or an invariant."""


class MissingEgoNode(SchemaViolation):
    """The social graph does not contain a node matching the profile user_id."""


# --- feature extraction -----------------------------------------------------

class UnknownLexiconCategory(SocialCreditError):
    """A lexicon declares a category outside the fixed text-feature schema."""


class UnknownLabel(SocialCreditError):
    """An image label is absent from the loaded taxonomy (never skipped silently)."""


class DimensionTooSmall(SocialCreditError):
    """Embedding dimension cannot hold the structural seed features."""


class NonFiniteResult(SocialCreditError):
    """A propagation step produced NaN or infinity."""


class UnknownNode(SocialCreditError):
    """A graph operation referenced a node id that is not in the graph."""


# --- compliance / scoring ---------------------------------------------------

class InvalidRule(SocialCreditError):
    """A compliance rule references an undefined feature, category, or sector."""


class DimensionMismatch(SocialCreditError):
    """Vector lengths disagree between model weights and feature bundle."""


# --- knowledge base / explanation -------------------------------------------

class DuplicateDocId(SocialCreditError):
    """Two policy documents share a doc_id."""


class EmptyIndex(SocialCreditError):
    """Retrieval was attempted against an index with no documents."""


class MissingPolicyCoverage(SocialCreditError):
    """No policy document carries a tag required to ground an explanation."""


# --- service ----------------------------------------------------------------

class ConsentDenied(SocialCreditError):
    """Scoring was refused because the profile's consent is not granted."""


class UnknownApplication(SocialCreditError):
    """No application exists under the given id."""


class NotYetDecided(SocialCreditError):
    """The application has no decision to explain or act on."""


class NotInReview(SocialCreditError):
    """A review action was attempted on an application outside the review queue."""


class UnknownItemId(SocialCreditError):
    """A what-if request excluded an item id that does not exist in the profile."""


class InvalidReviewAction(SocialCreditError):
    """A review action violates its guard (e.g. band override without a note)."""
