"""Exception types shared across the package."""


class PreconditionViolated(ValueError):
    """An operation was called outside the parameter range where it applies."""


class InfeasibleWitness(RuntimeError):
    """No witness point x0 exists for the requested column groups."""


class DegenerateConstant(RuntimeError):
    """A column-group constant K_s vanished, so v_s = e/K_s is undefined."""

    def __init__(self, s, value):
        super().__init__(f"column group s={s} has |K_s| = {abs(value):.3e}")
        self.s = s
        self.value = value
