class NightdayError(Exception):
    """Base error. `reason` is the machine-parseable slug, `exit_code` what the CLI returns."""

    reason = "error"
    exit_code = 1


class InputError(NightdayError):
    reason = "input-error"
    exit_code = 1


class EmptyInputError(InputError):
    reason = "empty-input"


class MalformedInputError(InputError):
    reason = "malformed-input"


class TooShortError(InputError):
    reason = "too-short"

    def __init__(self, message: str, count: int = None):
        super().__init__(message)
        self.count = count


class NonPositivePriceError(InputError):
    reason = "nonpositive-price"


class NonFiniteValueError(InputError):
    reason = "non-finite"


class ConfigurationError(NightdayError):
    reason = "configuration-error"
    exit_code = 2


class MissingColumnError(ConfigurationError):
    reason = "missing-column"


class InvalidSpecError(ConfigurationError):
    reason = "invalid-config"


class UnsupportedFormatError(ConfigurationError):
    reason = "unsupported-format"


class DegenerateSampleError(NightdayError):
    reason = "degenerate-sample"
    exit_code = 3
