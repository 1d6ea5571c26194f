"""Error taxonomy shared by the library and the CLI.

Exit-code contract: domain errors map to 2, precision errors to 3,
parse errors to 4.  Everything else is a bug and surfaces as a normal
traceback.
"""

from __future__ import annotations


class DVError(Exception):
    """Base class for structured errors."""

    code = "error"
    exit_code = 2


class DomainError(DVError):
    """Input outside an operation's mathematical domain."""

    code = "domain"
    exit_code = 2


class StructuralError(DomainError):
    """Mixing values from different value groups or models."""

    code = "structure"


class UnsupportedGroupError(DomainError):
    """Operation requires a divisible value group (all coordinates rational)."""

    code = "unsupported-group"


class UnsupportedModelError(DomainError):
    """Model configuration cannot support the requested operation exactly."""

    code = "unsupported-model"


class NonUnitError(DomainError):
    """Inversion of a non-unit (vanishing leading part)."""

    code = "non-unit"


class NoNeutralizerError(DomainError):
    """Element lies in the derivation kernel; no neutralizer exists."""

    code = "no-neutralizer"


class UndeclaredGeneratorError(DomainError):
    """A coefficient symbol has no entry in the derivation table."""

    code = "undeclared-generator"


class HypothesisError(DomainError):
    """A stated precondition of a lemma-shaped operation fails.

    Distinct from an identity failing: the identity was never in play.
    """

    code = "hypothesis"


class PrecisionError(DVError):
    """The stored precision cannot resolve a needed sign or coefficient."""

    code = "precision"
    exit_code = 3


class ParseError(DVError):
    """Text input rejected; carries a byte offset."""

    code = "parse"
    exit_code = 4

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class SoundnessError(DVError):
    """An internal certificate was contradicted.  Never expected."""

    code = "soundness"
    exit_code = 1
