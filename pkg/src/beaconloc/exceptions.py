"""Exception hierarchy for beaconloc."""


class BeaconLocError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrix(BeaconLocError, ValueError):
    pass


class RankDeficient(BeaconLocError, ValueError):
    pass


class InvalidGeometry(BeaconLocError, ValueError):
    pass


class CoincidentPoints(InvalidGeometry):
    """The LED sits exactly on an estimator, so no direction exists."""


class DegenerateGeometry(BeaconLocError, ValueError):
    """The two rays are (nearly) parallel or the estimators coincide."""


class NegativeTrace(BeaconLocError, ValueError):
    pass


class AllTrialsDegenerate(BeaconLocError, RuntimeError):
    pass


class ConfigError(BeaconLocError):
    pass


class ParseError(ConfigError):
    pass


class ValidationError(ConfigError, ValueError):
    """A configuration value violates an invariant.

    Attributes:
        key: dotted key path of the first offending entry, e.g. ``optics.pd_area_mm2``.
        reason: human readable explanation.
    """

    def __init__(self, key, reason):
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason
