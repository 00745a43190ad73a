"""Exception types and structured validation reports."""

from __future__ import annotations

from dataclasses import dataclass


class ProlongError(Exception):
    """Base class for every error raised by this package."""


# ---------------------------------------------------------------------------
# Cayley table validation
# ---------------------------------------------------------------------------

class IdentityNotAtZero(ProlongError):
    pass


class NotLatinSquare(ProlongError):
    pass


class NotAssociative(ProlongError):
    pass


class MissingInverse(ProlongError):
    pass


class NotHomomorphism(ProlongError):
    pass


class NotSubgroup(ProlongError):
    pass


class NotAbelian(ProlongError):
    pass


class NotNormal(ProlongError):
    pass


class ImageNotNormal(ProlongError):
    pass


class OrderBoundExceeded(ProlongError):
    pass


# ---------------------------------------------------------------------------
# Short exact sequences and ladders
# ---------------------------------------------------------------------------

class NotInjective(ProlongError):
    pass


class NotSurjective(ProlongError):
    pass


class NotExact(ProlongError):
    pass


class ValueOutsideExpectedSubgroup(ProlongError):
    pass


class InvalidProlongation(ProlongError):
    """Raised when an operation needs a valid ladder but validation failed."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("invalid prolongation: " + "; ".join(
            f"{item.name}: {item.detail or 'failed'}" for item in report.failures()))
        self.report = report


# ---------------------------------------------------------------------------
# Cochain complex
# ---------------------------------------------------------------------------

class DegreeOutOfRange(ProlongError):
    pass


class NotNormalized(ProlongError):
    pass


class SizeBoundExceeded(ProlongError):
    pass


class NotCocycle(ProlongError):
    pass


# ---------------------------------------------------------------------------
# Crossed modules
# ---------------------------------------------------------------------------

class InvalidCrossedModule(ProlongError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("invalid crossed module: " + "; ".join(
            f"{item.name}: {item.detail or 'failed'}" for item in report.failures()))
        self.report = report


class FiberInconsistency(ProlongError):
    pass


class KernelNotPreserved(ProlongError):
    pass


class FiberDependentAction(ProlongError):
    pass


# ---------------------------------------------------------------------------
# Obstruction and crossed products
# ---------------------------------------------------------------------------

class PreconditionFailed(ProlongError):
    """A crossed-product precondition failed; carries the violating tuple."""

    def __init__(self, which: str, witness: tuple):
        super().__init__(f"crossed product precondition {which!r} fails at {witness}")
        self.which = which
        self.witness = witness


class PairingNotAssociative(ProlongError):
    def __init__(self, witness: tuple):
        super().__init__(f"crossed product pairing not associative at {witness}")
        self.witness = witness


class NotCentralValue(ProlongError):
    pass


class NotInKernel(ProlongError):
    pass


class ObstructionNonzero(ProlongError):
    """The obstruction class does not vanish; carries its coordinates."""

    def __init__(self, coordinates: tuple[int, ...], invariant_factors: tuple[int, ...]):
        super().__init__(
            f"obstruction class {list(coordinates)} is nonzero in H^3 "
            f"with invariant factors {list(invariant_factors)}")
        self.coordinates = tuple(coordinates)
        self.invariant_factors = tuple(invariant_factors)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

class MismatchedFrame(ProlongError):
    pass


class MismatchedBase(ProlongError):
    pass


class SearchBoundExceeded(ProlongError):
    pass


# ---------------------------------------------------------------------------
# Scenario ingestion
# ---------------------------------------------------------------------------

class ScenarioError(ProlongError):
    pass


# ---------------------------------------------------------------------------
# Validation reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckItem:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a structural validation: one item per checked invariant.

    Reports never raise; callers that need strictness test `.ok` themselves.
    """

    items: tuple[CheckItem, ...]

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def failures(self) -> tuple[CheckItem, ...]:
        return tuple(item for item in self.items if not item.ok)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": item.name, "ok": item.ok, "detail": item.detail}
                for item in self.items
            ],
        }

    def __str__(self) -> str:
        lines = []
        for item in self.items:
            mark = "ok  " if item.ok else "FAIL"
            suffix = f" ({item.detail})" if item.detail else ""
            lines.append(f"{mark} {item.name}{suffix}")
        return "\n".join(lines)
