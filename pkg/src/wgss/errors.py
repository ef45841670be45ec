"""Exception hierarchy shared by every stage of the summarizer."""


class WgssError(Exception):
    """Base class for all errors raised by this package."""


class ResourceError(WgssError):
    """A resource file (vectors, stop words, IDF table, dataset) is unusable."""


class EmbeddingFormatError(ResourceError):
    pass


class EmptyTableError(ResourceError):
    pass


class PipelineError(WgssError):
    """A document cannot be summarized."""


class EmptyDocumentError(PipelineError):
    pass


class NoContentError(PipelineError):
    """Every sentence of the document lacks embedded tokens."""


class IneligibleSentenceError(PipelineError):
    pass


class DegenerateDocumentError(PipelineError):
    """Fewer than two eligible sentences; no affinity matrix can be formed."""


class NumericalError(PipelineError):
    pass
