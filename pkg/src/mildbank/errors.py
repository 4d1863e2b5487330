"""Exception hierarchy shared by all modules."""


class MildbankError(Exception):
    """Base class for every error raised by the package."""


class NonCommensurateSpacing(MildbankError, ValueError):
    """Grid spacing h does not satisfy 1/(2h) integral."""


class BadCount(MildbankError, ValueError):
    """Sample count is not a power of two >= 8, or another grid field is invalid."""


class BadGrid(MildbankError, ValueError):
    """The grid cannot support the requested operation."""


class UnknownGenerator(MildbankError, KeyError):
    """No closed-form generator with that name."""


class BadParams(MildbankError, ValueError):
    """Parameters do not fit the requested generator or operator."""


class GridMismatch(MildbankError, ValueError):
    """Two sampled objects live on different grids."""


class NonCommensurateShift(MildbankError, ValueError):
    """A shift or evaluation point is not a multiple of the grid spacing."""


class SingularMatrix(MildbankError, ValueError):
    """A dilation or lattice matrix is not invertible."""


class NotAPartition(MildbankError, ValueError):
    """Translates of the base window do not sum to one."""


class NegativeWindow(MildbankError, ValueError):
    """Partition-of-unity base takes negative values."""


class BadDelta(MildbankError, ValueError):
    """Oscillation radius is smaller than the grid spacing or not positive."""


class BadAxis(MildbankError, ValueError):
    """Requested axis or dimension is not available."""


class BadKind(MildbankError, ValueError):
    """Unknown operation kind."""


class TailTooFat(MildbankError, ValueError):
    """A truncated sum or integral has not converged within the window."""


class EmptyBattery(MildbankError, ValueError):
    """A weak-* comparison was requested against no test functions."""


class NoTransitionRoom(MildbankError, ValueError):
    """The passband leaves no room for a transition band below beta/2."""


class NyquistViolation(MildbankError, ValueError):
    """Input spectrum has energy outside the reconstructable band."""


class PathDisagreement(MildbankError, ValueError):
    """Time-domain and frequency-domain system paths disagree."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class UnknownSuite(MildbankError, KeyError):
    """No verification suite with that name."""


class UnknownDemo(MildbankError, KeyError):
    """No demo with that name."""


class ToleranceExceeded(MildbankError, RuntimeError):
    """A verification check measured a residual above its tolerance."""


class PhaseResolution(TailTooFat):
    """Chirp phase is not resolved by the grid (alpha * h * radius > 1/4)."""
