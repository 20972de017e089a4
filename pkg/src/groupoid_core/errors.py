"""
Error hierarchy for the whole lab.

Constructors raise; check_* functions return reports instead.
"""

from typing import Iterable, Optional


class GroupoidLabError(Exception):
    """Base class for every error raised by the lab"""

    def __init__(self, message: str, witness: Iterable = ()):
        super().__init__(message)
        self.witness = tuple(witness)

    def describe(self) -> str:
        if not self.witness:
            return str(self)
        return f"{self} [witness: {', '.join(str(w) for w in self.witness)}]"


class ValidationError(GroupoidLabError):
    """A named axiom failed on a concrete witness"""

    axiom = "validation"

    def __init__(self, message: str, witness: Iterable = (), axiom: Optional[str] = None):
        super().__init__(message, witness)
        if axiom is not None:
            self.axiom = axiom


# groupoid axioms

class MissingUnitAxiom(ValidationError):
    axiom = "unit"


class NonAssociative(ValidationError):
    axiom = "associativity"


class BadInverse(ValidationError):
    axiom = "inverse"


class CompositionDomainMismatch(ValidationError):
    axiom = "composition-domain"


class NotComposable(GroupoidLabError):
    pass


class NotAUnit(GroupoidLabError):
    pass


class UnknownElement(GroupoidLabError):
    pass


# measures

class NonPositiveWeight(ValidationError):
    axiom = "positivity"


class NotQuasiInvariant(ValidationError):
    axiom = "quasi-invariance"


class GroupoidMismatch(GroupoidLabError):
    pass


# actions and morphisms

class DomainMismatch(ValidationError):
    axiom = "action-domain"


class MorphismAxiomError(ValidationError):
    """One of conditions (1)-(6) failed"""

    def __init__(self, condition: str, message: str, witness: Iterable = ()):
        super().__init__(message, witness, axiom=f"condition-{condition}")
        self.condition = condition


class ImageNotSaturated(ValidationError):
    axiom = "saturated-image"


class NotAHomomorphism(ValidationError):
    axiom = "homomorphism"


class UnitsNotBijective(ValidationError):
    axiom = "unit-bijection"


class ChainMismatch(GroupoidLabError):
    pass


# algebra and spectra

class AlgebraMismatch(GroupoidLabError):
    pass


class MorphismMismatch(GroupoidLabError):
    pass


class UnitNotFound(GroupoidLabError):
    pass


# files

class ParseError(GroupoidLabError):
    """Malformed definition file; carries the position when known"""

    def __init__(self, message: str, path: str = "", line: int = 0, column: int = 0):
        where = f"{path}:{line}:{column}" if line else path
        super().__init__(f"{where}: {message}" if where else message)
        self.path = path
        self.line = line
        self.column = column
