class LCRigidityError(Exception):
    """Base class for errors raised by this package."""


class UnknownElement(LCRigidityError, KeyError):
    pass


class DuplicateEdge(LCRigidityError, ValueError):
    pass


class BudgetExceeded(LCRigidityError, RuntimeError):
    pass


class HypothesisViolated(LCRigidityError, ValueError):
    pass


class PreconditionViolated(LCRigidityError, ValueError):
    pass


class InvalidCover(LCRigidityError, ValueError):
    pass


class ParamsInvalid(LCRigidityError, ValueError):
    pass


class MalformedStep(LCRigidityError, ValueError):
    pass
