"""Exception types shared across the package."""


class SemicommError(Exception):
    """Base class for every error raised by this package."""


class AxiomViolation(SemicommError):
    """A table pair fails one of the semiring laws.

    ``axiom`` names the law, ``witness`` is the tuple of elements falsifying it.
    """

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"{axiom} fails at {self.witness}")


class ParseError(SemicommError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class TermIndexError(SemicommError, IndexError):
    """A variable reference lies outside the declared group arities."""


class SizeError(SemicommError):
    """A configured budget (order, tuple count, dimension) was exceeded."""


class ArityError(SemicommError, ValueError):
    pass


class HypothesisError(SemicommError, ValueError):
    pass


class InternalError(SemicommError):
    """Two constructions that must coincide disagreed."""


class FalsificationError(SemicommError):
    """A checked statement failed on a concrete algebra.

    ``claim`` names the statement and ``witness`` carries whatever data
    reproduces the failure.
    """

    def __init__(self, claim, witness=None):
        self.claim = claim
        self.witness = witness
        super().__init__(f"{claim} falsified: {witness!r}")
