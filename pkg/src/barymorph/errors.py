"""Exception taxonomy for the package.

Callers care about three failure classes: text that cannot be parsed
(ParseError), input that parses but breaks a structural or geometric
invariant (ValidationError subclasses), and numerical trouble inside a
solve (SolverError subclasses).  The CLI maps these to exit codes 2, 3
and 4 respectively.
"""


class BarymorphError(Exception):
    """Base class for every error raised by this package."""


class ParseError(BarymorphError):
    """Malformed graph, drawing, coefficient or schedule text."""


class ValidationError(BarymorphError):
    """An input violates a structural or geometric invariant."""


class SolverError(BarymorphError):
    """A linear solve or search failed numerically."""


# --- plane graph construction -------------------------------------------

class NotTriangulated(ValidationError):
    """A face is not a cycle of three distinct vertices."""


class EulerViolation(ValidationError):
    """Edge or face counts are off for a maximal plane graph."""


class NonSimple(ValidationError):
    """The face list encodes a loop or a multi-edge."""


class InconsistentEmbedding(ValidationError):
    """Face tracing does not close into a single sphere embedding."""


class DegreeTooLow(ValidationError):
    """Some vertex has degree below three."""


class UnknownVertex(ValidationError):
    """A vertex id outside 0..n-1 was referenced."""


# --- geometry ------------------------------------------------------------

class DegenerateDrawing(ValidationError):
    """Two vertices coincide, so separation distances are meaningless."""


class DegenerateTriangle(ValidationError):
    """Triangle corners are collinear or ordered clockwise."""


class WitnessNotFound(ValidationError):
    """No internal-face witness exists (drawing failed a precondition)."""


# --- coefficients --------------------------------------------------------

class GraphMismatch(ValidationError):
    """Two coefficient matrices live on different graphs."""


class NonStarShaped(ValidationError):
    """A neighbor polygon is not star-shaped around its vertex."""


class InvalidCoefficients(ValidationError):
    """A coefficient matrix fails validation (support, sign or row sums)."""


# --- embedder ------------------------------------------------------------

class SingularSystem(SolverError):
    """The barycentric system could not be factored."""


class ResidualTooLarge(SolverError):
    """A solve finished but its residual exceeds the tolerance."""


# --- morph ---------------------------------------------------------------

class StepStalled(SolverError):
    """Discretization cannot advance by min_step within the safe radius."""


# --- families / cli ------------------------------------------------------

class ParameterOutOfRange(ValidationError):
    """A family parameter is outside its admissible interval."""


class OuterMismatch(ValidationError):
    """Two drawings meant to share an outer triangle do not."""
