"""Exception types raised by the library."""


class ChannelError(ValueError):
    """Base class for rejected channel specifications."""


class NotSymmetric(ChannelError):
    pass


class NotPSD(ChannelError):
    pass


class NotCompletelyPositive(ChannelError):
    pass


class SingularX(ChannelError):
    pass


class ZeroNoiseChannel(ValueError):
    """The vacuum output carries no thermal noise, so the requested CPC diverges."""


class DegenerateThreshold(ValueError):
    pass


class AbsoluteContinuityViolation(ValueError):
    pass
