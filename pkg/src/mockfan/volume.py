"""Formal integer combinations of stable-birational class labels.

Only the additive group is needed: the volume skeleton sums labels of the
strata attached to bounded cones with sign (-1)^(dim - 1).  Geometric facts
(component counts, which stratum is a point, which is a hypersurface) enter
as annotations and are never computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional

from .cones import Cone
from .fans import Fan


@dataclass(frozen=True, order=True)
class ClassLabel:
    """A symbolic stable-birational class: a point, a very general hypersurface
    of given degree in a projective space of given dimension, or a named class."""
    kind: str
    name: str = ""
    ambient_dim: int = 0
    degree: int = 0

    POINT = "point"
    HYPERSURFACE = "hypersurface"
    SYMBOLIC = "symbolic"

    @staticmethod
    def point() -> "ClassLabel":
        return ClassLabel(ClassLabel.POINT)

    @staticmethod
    def hypersurface(ambient_dim: int, degree: int) -> "ClassLabel":
        return ClassLabel(ClassLabel.HYPERSURFACE, ambient_dim=ambient_dim, degree=degree)

    @staticmethod
    def symbolic(name: str) -> "ClassLabel":
        return ClassLabel(ClassLabel.SYMBOLIC, name=name)

    def render(self) -> str:
        if self.kind == ClassLabel.POINT:
            return "pt"
        if self.kind == ClassLabel.HYPERSURFACE:
            return f"Hyp(P^{self.ambient_dim},d={self.degree})"
        return self.name


class FormalSum:
    """Finite integer combination of class labels; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[ClassLabel, int]] = None):
        clean = {}
        if terms:
            for label, coeff in terms.items():
                if coeff:
                    clean[label] = coeff
        self.terms: dict[ClassLabel, int] = clean

    @staticmethod
    def zero() -> "FormalSum":
        return FormalSum()

    @staticmethod
    def of(label: ClassLabel, coeff: int = 1) -> "FormalSum":
        return FormalSum({label: coeff})

    def coefficient(self, label: ClassLabel) -> int:
        return self.terms.get(label, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self.terms)
        for label, coeff in other.terms.items():
            out[label] = out.get(label, 0) + coeff
        return FormalSum(out)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __neg__(self) -> "FormalSum":
        return FormalSum({l: -c for l, c in self.terms.items()})

    def __rmul__(self, scalar: int) -> "FormalSum":
        return FormalSum({l: scalar * c for l, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def render(self) -> str:
        """Deterministic text form, e.g. '+2*pt -1*Hyp(P^5,d=3)'."""
        if not self.terms:
            return "0"
        parts = []
        for label in sorted(self.terms):
            coeff = self.terms[label]
            sign = "+" if coeff > 0 else "-"
            parts.append(f"{sign}{abs(coeff)}*{label.render()}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"FormalSum({self.render()})"


@dataclass(frozen=True)
class StratumAnnotation:
    """Connected components of the stratum over one cone: r labels."""
    cone_id: str
    component_count: int
    labels: tuple[ClassLabel, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != self.component_count:
            raise ValueError("annotation needs exactly component_count labels")
        if self.component_count < 1:
            raise ValueError("component count must be positive")


def default_annotation(cone_id: str) -> StratumAnnotation:
    return StratumAnnotation(cone_id, 1, (ClassLabel.symbolic(f"E({cone_id})"),))


def vol_skeleton(fan: Fan,
                 annotations: Mapping[Cone, StratumAnnotation],
                 active_filter: Optional[Callable[[Cone], bool]] = None,
                 cone_ids: Optional[Mapping[Cone, str]] = None) -> FormalSum:
    """Signed sum over bounded cones passing the filter.

    Each contributing cone adds (-1)^(dim - 1) times the sum of its
    annotation labels; cones without an annotation get one symbolic label
    E(<cone id>) with component count 1.
    """
    total = FormalSum.zero()
    for cone in fan.bounded_cones():
        if active_filter is not None and not active_filter(cone):
            continue
        ann = annotations.get(cone)
        if ann is None:
            cid = cone_ids[cone] if cone_ids and cone in cone_ids else _fallback_id(fan, cone)
            ann = default_annotation(cid)
        sign = 1 if cone.dim() % 2 == 1 else -1
        for label in ann.labels:
            total = total + FormalSum.of(label, sign)
    return total


def _fallback_id(fan: Fan, cone: Cone) -> str:
    return f"c{fan.cones.index(cone)}"
