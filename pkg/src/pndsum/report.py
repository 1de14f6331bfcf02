"""Bound report tree and its JSON/CSV serializations."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, Decimal


@dataclass
class BoundReport:
    """A named tree of bound components.

    At additive nodes the parent value dominates the sum of the children
    (the children are raw, the parent may carry presentation rounding).
    `additive=False` marks grouping nodes exempt from that invariant.
    """

    name: str
    value: float
    formula_id: str
    slack_note: str = ""
    children: list["BoundReport"] = field(default_factory=list)
    additive: bool = True

    def validate(self) -> None:
        if self.additive and self.children:
            total = math.fsum(c.value for c in self.children)
            if self.value < total - 1e-12 * max(1.0, abs(total)):
                raise ValueError(
                    f"additive node {self.name!r}: value {self.value} < children sum {total}"
                )
        for c in self.children:
            c.validate()

    def find(self, name: str) -> "BoundReport | None":
        if self.name == name:
            return self
        for c in self.children:
            hit = c.find(name)
            if hit is not None:
                return hit
        return None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "formula_id": self.formula_id,
            "slack_note": self.slack_note,
            "additive": self.additive,
            "children": [c.to_dict() for c in self.children],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        return cls(
            name=d["name"],
            value=d["value"],
            formula_id=d["formula_id"],
            slack_note=d.get("slack_note", ""),
            children=[cls.from_dict(c) for c in d.get("children", [])],
            additive=d.get("additive", True),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "BoundReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["component", "formula_id", "value", "slack_note"])
        for node in self.walk():
            writer.writerow([node.name, node.formula_id, repr(node.value), node.slack_note])
        return buf.getvalue()

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def render(self, indent: int = 0) -> str:
        lines = ["%s%s = %.10g  [%s]" % ("  " * indent, self.name, self.value, self.formula_id)]
        for c in self.children:
            lines.append(c.render(indent + 1))
        return "\n".join(lines)


def ceil_at(x: float, places: int = 6) -> float:
    """Round x up at the given decimal place (presentation rounding)."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_CEILING))
