"""Exception hierarchy shared by the library and the command line."""


class CubeChainError(Exception):
    """Base class for every domain error raised by cubechains."""


class UnboundVariableError(CubeChainError):
    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__("unbound variable(s): " + ", ".join(self.names))


class PolynomialSyntaxError(CubeChainError):
    pass


class NotDivisibleError(CubeChainError):
    pass


class UnverifiedChainError(CubeChainError):
    pass


class CertificationError(CubeChainError):
    pass


class DegenerateError(CubeChainError):
    pass


class NotCoprimeError(CubeChainError):
    pass


class PreconditionError(CubeChainError):
    pass
