"""Exception types shared across the package.

Collected in one module so the CLI can map them to exit codes uniformly.
"""


class GspForgeError(Exception):
    """Base class for all package-specific errors."""


# arith
class NonCoprimeModuli(GspForgeError):
    def __init__(self, m1, m2):
        self.pair = (m1, m2)
        super().__init__(f"moduli {m1} and {m2} share a common factor")


class ZeroInput(GspForgeError):
    pass


class FactorizationTimeout(GspForgeError):
    def __init__(self, n, budget):
        self.remaining = n
        self.budget = budget
        super().__init__(f"work budget {budget} exhausted with unfactored part {n}")


# finitefield
class NoSupersingularParam(GspForgeError):
    pass


class DegreeMismatch(GspForgeError):
    pass


# igusa
class MultipleRoot(GspForgeError):
    pass


class NonIntegralExponent(GspForgeError):
    pass


# hypercurve
class BadReduction(GspForgeError):
    pass


class DegenerateLeading(GspForgeError):
    pass


class SingularCurve(GspForgeError):
    pass


class ParityViolation(GspForgeError):
    pass


# weilselect
class SelectionExhausted(GspForgeError):
    pass


class NotFound(GspForgeError):
    pass


class BudgetExceeded(GspForgeError):
    pass


class InconsistentTarget(GspForgeError):
    pass


# sympgroup
class NotSymplectic(GspForgeError):
    pass


class MultiplierNotOne(GspForgeError):
    pass


class CapExceeded(GspForgeError):
    pass


# synth / verify
class VerificationFailed(GspForgeError):
    pass


class OutOfContract(GspForgeError):
    pass
