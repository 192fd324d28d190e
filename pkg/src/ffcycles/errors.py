"""Exception hierarchy.

Every error raised by the library derives from :class:`FFCyclesError`.
:class:`ResourceCap` marks errors caused by a size or length cap; the CLI
maps those to exit code 3.
"""


class FFCyclesError(Exception):
    pass


class NotPrime(FFCyclesError, ValueError):
    pass


class BadDimension(FFCyclesError, ValueError):
    pass


class LengthMismatch(FFCyclesError, ValueError):
    pass


class ZeroParameter(FFCyclesError, ValueError):
    """Raised when an operation needs ``t != 0``."""


class ResourceCap(FFCyclesError):
    pass


class TooLarge(ResourceCap):
    pass


class TooLong(ResourceCap):
    pass


class AsymmetricRelation(FFCyclesError, ValueError):
    pass


class NegativeInput(FFCyclesError, ValueError):
    pass


class OutOfRange(FFCyclesError, ValueError):
    pass


class MissingInput(FFCyclesError, ValueError):
    pass


class UnsupportedTheorem(FFCyclesError, ValueError):
    pass


class WrongRelation(FFCyclesError, ValueError):
    pass


class BadRecipe(FFCyclesError, ValueError):
    pass


class FileFormat(FFCyclesError, ValueError):
    pass


class ConfigError(FFCyclesError, ValueError):
    pass
