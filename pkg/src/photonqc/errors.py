"""Exception hierarchy shared by every photonqc module."""


class PhotonQCError(Exception):
    """Base class for all library errors."""


class TruncationExceeded(PhotonQCError):
    """An operation produced an occupation outside the configured Fock truncation."""


class LayoutMismatch(PhotonQCError):
    """Two states live on different mode layouts."""


class ZeroProbabilityBranch(PhotonQCError):
    """A requested measurement branch has no support."""


class InvalidSpec(PhotonQCError):
    """An optical element specification is malformed."""


class NotUnitary(PhotonQCError):
    """A matrix expected to be unitary is not."""


class PhotonNumberMismatch(PhotonQCError):
    """Input and output occupations carry different total photon numbers."""


class InvalidEncoding(PhotonQCError):
    """A state does not hold a valid qubit encoding."""


class LabelOverflow(PhotonQCError):
    """A coherent-state phase label left the allowed set {-1, 0, +1}."""


class InvalidParams(PhotonQCError):
    """Experiment configuration failed validation."""


class UnknownExperiment(InvalidParams):
    """The requested experiment name is not registered."""
