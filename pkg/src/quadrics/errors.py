"""Exception hierarchy shared by all modules."""


class QuadricsError(ValueError):
    """Base class for every error raised by this package."""


class NotWeaklyHyperbolic(QuadricsError):
    def __init__(self, violation):
        self.violation = tuple(violation)
        super().__init__(f"origin lies in the convex hull of vectors {list(self.violation)}")


class EmptyManifold(QuadricsError):
    pass


class Disconnected(QuadricsError):
    def __init__(self, empty_facets):
        self.empty_facets = tuple(empty_facets)
        super().__init__(f"Disconnected: facets {list(self.empty_facets)} are empty")


class InvalidFace(QuadricsError):
    pass


class GroundSetTooLarge(QuadricsError):
    pass


class DimensionMismatch(QuadricsError):
    pass


class ParseError(QuadricsError):
    def __init__(self, position, expected, text=""):
        self.position = position
        self.expected = expected
        super().__init__(f"parse error at position {position}: expected {expected}"
                         + (f" in {text!r}" if text else ""))


class InvalidStep(QuadricsError):
    def __init__(self, stage, reason):
        self.stage = stage
        self.reason = reason
        super().__init__(f"step {stage}: {reason}")


class InconsistentCut(QuadricsError):
    """The realized configuration disagrees with the combinatorial cut."""
