"""Exception types shared across the toolkit."""


class ComcatError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(ComcatError):
    pass


class NotPointed(ComcatError):
    pass


class NotGenerating(ComcatError):
    pass


class MixedKindUnsupported(ComcatError):
    pass


class KindMismatch(ComcatError):
    pass


class NotNonsignalingState(ComcatError):
    pass


class ZeroProbabilityCondition(ComcatError):
    pass


class RemoteEvalMismatch(ComcatError):
    """Both-sides evaluation disagreed; indicates an internal coordinate bug."""


class NotAMorphism(ComcatError):
    pass


class ZeroMap(ComcatError):
    pass


class UnsupportedKind(ComcatError):
    pass


class InvalidStructure(ComcatError):
    pass


class DegenerateTriple(ComcatError):
    pass


class SingularMatrix(ComcatError):
    pass
