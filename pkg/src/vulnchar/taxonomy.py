"""Label taxonomy: the 19 vulnerability characterizations used for classification.

Characterizations come from the NIST Vulnerability Description Ontology and
are grouped into five categories.  Canonical identifiers are lowercase
snake_case; ``index`` fixes a total order (0..18) used everywhere a
deterministic tie-break is needed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Category(enum.Enum):
    MITIGATION = "Mitigation"
    IMPACT_METHOD = "ImpactMethod"
    LOGICAL_IMPACT = "LogicalImpact"
    LOCATION = "Location"
    SCOPE = "Scope"


@dataclass(frozen=True)
class Characterization:
    """One vulnerability characterization attribute.

    ``index`` is unique across the taxonomy and orders the 19 values.
    """

    name: str
    category: Category
    index: int

    def __repr__(self) -> str:
        return f"Characterization({self.name!r})"


_TABLE = (
    ("aslr", Category.MITIGATION),
    ("multi_factor_authentication", Category.MITIGATION),
    ("sandboxed", Category.MITIGATION),
    ("hpkp", Category.MITIGATION),
    ("hsts", Category.MITIGATION),
    ("physical_security", Category.MITIGATION),
    ("context_escape", Category.IMPACT_METHOD),
    ("trust_failure", Category.IMPACT_METHOD),
    ("man_in_the_middle", Category.IMPACT_METHOD),
    ("write", Category.LOGICAL_IMPACT),
    ("read", Category.LOGICAL_IMPACT),
    ("service_interrupt", Category.LOGICAL_IMPACT),
    ("indirect_disclosure", Category.LOGICAL_IMPACT),
    ("privilege_escalation", Category.LOGICAL_IMPACT),
    ("memory", Category.LOCATION),
    ("file_system", Category.LOCATION),
    ("network_traffic", Category.LOCATION),
    ("limited", Category.SCOPE),
    ("unlimited", Category.SCOPE),
)

CHARACTERIZATIONS: tuple[Characterization, ...] = tuple(
    Characterization(name, category, i) for i, (name, category) in enumerate(_TABLE)
)

_BY_NAME = {c.name: c for c in CHARACTERIZATIONS}


class UnknownLabelError(ValueError):
    """Raised when a label name is not one of the 19 canonical identifiers."""

    def __init__(self, label: str):
        super().__init__(
            f"unknown characterization label {label!r}; "
            f"expected one of: {', '.join(sorted(_BY_NAME))}"
        )
        self.label = label


def characterization(name: str) -> Characterization:
    """Look up a characterization by its canonical snake_case name."""
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownLabelError(name) from None


def by_category(category: Category) -> tuple[Characterization, ...]:
    return tuple(c for c in CHARACTERIZATIONS if c.category is category)
