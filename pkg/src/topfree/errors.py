"""Exception taxonomy shared by all modules."""


class TopfreeError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(TopfreeError):
    """Malformed group configuration (syntax, parameters, or a broken group axiom)."""


class UnknownGroup(TopfreeError):
    """A group id that is not part of the loaded configuration."""


class GroupMismatch(TopfreeError):
    """Two values from different groups fed to a one-group operation."""


class ShapeMismatch(TopfreeError):
    """Neighborhood shapes that cannot be combined (or do not fit the group kind)."""


class EmptyIntersection(TopfreeError):
    """The requested intersection contains no points."""


class EmptyNeighborhood(TopfreeError):
    """A descriptor with no points left to sample (punctured singleton identity)."""


class ProductIsIdentity(TopfreeError):
    """Separation asked for a product that equals the identity."""


class CapExceeded(TopfreeError):
    """Word longer than the configured length cap."""


class LengthMismatch(TopfreeError):
    """Two words of different lengths where equal lengths are required."""


class IndexOutOfRange(TopfreeError):
    """A subterm position outside the word."""


class WordSyntaxError(TopfreeError):
    """Unparsable word text; carries the offending 0-based token index."""

    def __init__(self, message: str, token_index: int | None = None):
        super().__init__(message)
        self.token_index = token_index


class WordIsIdentity(TopfreeError):
    """The word reduces to the empty word, so there is nothing to separate."""


class PointsEqual(TopfreeError):
    """Asked to separate a word from its own value."""


class WitnessInExcluded(TopfreeError):
    """A witness word whose value lies in the excluded set."""


class VariantMismatch(TopfreeError):
    """Away-from-identity and around-identity descriptors cannot be intersected."""


class ConfigMismatch(TopfreeError):
    """Certificate digest does not match the loaded configuration."""


class FormatError(TopfreeError):
    """Unreadable or wrong-version certificate / report file."""


class ExhaustiveNotFinite(TopfreeError):
    """Exhaustive checking requested on a certificate with an infinite descriptor."""
