"""Errors raised by qbg-mobius.

Input and precondition problems are ``ValidationError`` subclasses so they carry a
``code`` and can be raised with per-field message dicts, the same way model ``clean()``
methods report problems. Broken internal invariants are ``RuntimeError`` subclasses:
they signal a bug, never bad input.
"""

from django.core.exceptions import ValidationError


class QBGValidationError(ValidationError):
    default_code = "invalid"

    def __init__(self, message, code=None, params=None):
        super().__init__(message, code=code or self.default_code, params=params)

    def __str__(self):
        return "; ".join(self.messages)


class InvalidInputError(QBGValidationError):
    default_code = "invalid"


class UnsupportedTypeError(QBGValidationError):
    default_code = "unsupported_type"


class UnsupportedProfileError(QBGValidationError):
    default_code = "unsupported_profile"


class PreconditionError(QBGValidationError):
    default_code = "precondition"


class RegularityError(QBGValidationError):
    """A translation is not regular enough for a superregular code path.

    ``bound`` is the bound that was required and ``pairing`` the smallest
    ``|<λ, αᵢ>|`` that was found, when known.
    """

    default_code = "regularity"

    def __init__(self, message, bound=None, pairing=None, code=None, params=None):
        super().__init__(message, code=code, params=params)
        self.bound = bound
        self.pairing = pairing


class InvariantViolationError(RuntimeError):
    """An identity that holds by theorem failed; indicates a bug in this package."""
