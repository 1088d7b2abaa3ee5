"""Exceptions raised by the KL Galois twist verifier."""

from __future__ import annotations


class KLGaloisError(Exception):
    """Base class for everything this package raises on purpose."""


class InvalidRootDatum(KLGaloisError, ValueError):
    """The root datum description is inconsistent or not of finite type."""


class GuardExceeded(KLGaloisError):
    """A size guard (rank, Weyl group order, enumeration size) was hit."""


class DimensionMismatch(KLGaloisError, ValueError):
    """A weight or torus point does not have the rank of the root datum."""


class NotDominant(KLGaloisError, ValueError):
    """A dominant weight was required."""


class NotSemisimple(KLGaloisError, ValueError):
    """
    The operation needs a semisimple root datum.

    Formula-style sums over dominant weights are infinite along central
    directions, so callers should project to the semisimple quotient first
    (see kl_parameters.project_to_semisimple).
    """


class InvalidGaloisAutomorphism(KLGaloisError, ValueError):
    """Exponent not a unit mod the level, or levels that cannot be matched."""


class PoleError(KLGaloisError, ZeroDivisionError):
    """A rational function was evaluated at one of its poles."""


class NonRegularParameter(KLGaloisError):
    """Some root is identically 1 on the torus point, so per-term poles appear."""

    def __init__(self, root, message: str | None = None) -> None:
        self.root = tuple(root)
        super().__init__(message or f"root {self.root} is trivial on the torus point")


class InvalidParameter(KLGaloisError, ValueError):
    """Malformed partition/torsion data, or an invalid certificate where validity is required."""


class NotInvariant(KLGaloisError, ValueError):
    """A central function was expected to be W-invariant and is not."""


class EngineDefect(KLGaloisError, AssertionError):
    """
    A runtime self-check inside an engine failed.

    These are bugs, not mathematical verdicts, and the CLI reports them with
    their own exit code.
    """


class InvalidConfig(KLGaloisError, ValueError):
    """A campaign configuration or command line that does not validate."""
