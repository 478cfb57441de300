"""Exception types shared across the package."""


class VirtwistError(Exception):
    pass


class DivisionByZero(VirtwistError, ZeroDivisionError):
    pass


class EvalAtPole(VirtwistError):
    pass


class GeneratorMismatch(VirtwistError, TypeError):
    pass


class NonUnitLeadingCoeff(VirtwistError, ValueError):
    pass


class NotInSubmodule(VirtwistError, ValueError):
    pass


class UnsupportedAction(VirtwistError, TypeError):
    """The module family has no action of the requested kind."""


class NotEigenvector(VirtwistError, ValueError):
    pass


class TwistDegenerate(VirtwistError, ValueError):
    """b(b-1) vanishes, so the t-action cannot be recovered from Vir."""


class ConstraintViolated(VirtwistError, ValueError):
    def __init__(self, index, pole, got, want):
        self.index = index
        self.pole = pole
        self.got = got
        self.want = want
        super().__init__(f"pole #{index} (a={pole}): h(a)={got}, required {want}")


class DuplicatePoles(VirtwistError, ValueError):
    pass


class ZeroPole(VirtwistError, ValueError):
    pass


class ConstantPolynomial(VirtwistError, ValueError):
    pass


class BudgetExceeded(VirtwistError, RuntimeError):
    def __init__(self, tried, budget):
        self.tried = tried
        self.budget = budget
        super().__init__(f"search budget of {budget} candidates exhausted")


class ParseError(VirtwistError, ValueError):
    """Syntax error; ``pos`` is the 0-based offset into the source."""

    def __init__(self, msg, pos=None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at position {pos})")


class LoweringError(VirtwistError, ValueError):
    pass
