"""Exception types shared across the package."""


class KinvError(Exception):
    """Base class for all package-specific errors."""


class AllZero(KinvError):
    """Every form in a tuple is zero; no content can be extracted."""


class ZeroSeries(KinvError):
    """A series that must be nonzero is zero to its working precision."""


class SingularSeries(KinvError):
    """A series matrix whose determinant vanishes to working precision."""


class ExactDivisionFailure(KinvError):
    """An exact division left a remainder; indicates an internal bug."""


class ZeroEntry(KinvError):
    """Entrywise reciprocal hit a zero entry."""

    def __init__(self, i, j):
        super().__init__(f"zero entry at ({i}, {j})")
        self.position = (i, j)


class SingularJ(KinvError):
    """The reciprocal matrix is singular; the map is not defined here."""


class ResourceBound(KinvError):
    """The requested computation exceeds the supported symbolic range."""


class UnsupportedQ(KinvError):
    """Matrix size below the supported range of this operation."""


class InadmissibleParams(KinvError):
    """Chart parameters violate the chart's admissibility constraints."""


class DegenerateSample(KinvError):
    """A sampled configuration failed a genericity guard."""


class PrecisionExhausted(KinvError):
    """Series precision insufficient even after adaptive doubling."""


class DegenerateLine(KinvError):
    """A sampled line is unusable (zero entry or identically singular)."""


class IndeterminateLine(KinvError):
    """The iterate collapsed on this line; the caller should resample."""


class NoConsensus(KinvError):
    """Witnesses disagree on a degree after the configured retries."""

    def __init__(self, n, witnesses):
        super().__init__(f"witnesses disagree at n={n}: {witnesses}")
        self.n = n
        self.witnesses = witnesses
