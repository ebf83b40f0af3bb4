"""Exception hierarchy shared by all modules."""


class GraphBraidError(Exception):
    """Base class for engine errors (the CLI maps these to exit code 1)."""


class NotConnected(GraphBraidError):
    pass


class InvalidGraph(GraphBraidError):
    pass


class NotSubdivided(GraphBraidError):
    pass


class UnknownFixture(GraphBraidError):
    pass


class BaseNotValencyOne(GraphBraidError):
    pass


class TooFewVertices(GraphBraidError):
    pass


class VertexNotInCell(GraphBraidError):
    pass


class EdgeNotInCell(GraphBraidError):
    pass


class InconsistentNotation(GraphBraidError):
    pass


class NonStabilizing(GraphBraidError):
    pass


class EmbeddingConditionViolated(GraphBraidError):
    def __init__(self, condition, message=""):
        super().__init__(f"condition ({condition}) violated: {message}")
        self.condition = condition


class NotAChainComplex(GraphBraidError):
    pass


class NoSolution(GraphBraidError):
    pass


class NotInCommutatorSubgroup(GraphBraidError):
    pass


class NotTwoCell(GraphBraidError):
    pass


class ScriptStepInapplicable(GraphBraidError):
    pass


class NotCommutatorRelated(GraphBraidError):
    pass


class NotLinearStarBouquet(GraphBraidError):
    pass


class PreconditionS0(GraphBraidError):
    pass


class BasisExpressionFailed(GraphBraidError):
    pass


class BudgetExceeded(GraphBraidError):
    pass
