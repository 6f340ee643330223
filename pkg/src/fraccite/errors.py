"""Exception hierarchy shared by all stages."""


class FracciteError(Exception):
    """Base class; the CLI maps these to a nonzero exit status."""


class ParseError(FracciteError):
    """Malformed input stream (bad structure, truncated record, duplicate id)."""


class FieldError(ParseError):
    """A single field of a record could not be interpreted."""

    def __init__(self, record_id: str, field: str, value: str):
        self.record_id = record_id
        self.field = field
        self.value = value
        super().__init__(f"record {record_id}: field {field} has invalid value {value!r}")


class RegistryError(FracciteError):
    """Invalid unit registry, or a lookup of a unit not in the registry."""


class ZeroReferenceList(FracciteError):
    """A citing paper with an empty reference list cannot be weighted."""


class DomainError(FracciteError, ValueError):
    """Argument outside the domain of a distribution function."""


class DegenerateVariance(FracciteError):
    """Levene's statistic has a zero denominator."""


class NoVariation(FracciteError):
    """All observations identical; the ANOVA F ratio is undefined."""


class ConstantInput(FracciteError):
    """A rank correlation input has no variation."""


class PipelineError(FracciteError):
    """Orchestration-level failure (missing artifact, empty corpus, bad config)."""
