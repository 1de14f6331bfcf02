"""Externally sourced constants with provenance, loaded from an INI file.

The shipped ``constants.ini`` can be overridden per run (CLI flag) so
that updated external computations never require code changes.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from importlib import resources
from types import MappingProxyType

_FLOAT_FIELDS = (
    "gamma",
    "eps_theta",
    "delta_lo",
    "delta_hi",
    "kobayashi_partial",
    "silva_sum_1e14",
    "partial_sum_4e10",
)


@dataclass(frozen=True)
class ConstantsBundle:
    lambda_: float
    gamma: float
    eps_theta: float
    delta_lo: float
    delta_hi: float
    kobayashi_partial: float
    silva_sum_1e14: float
    silva_count_1e14: int
    partial_sum_4e10: float
    provenance: MappingProxyType = field(repr=False)

    def __post_init__(self):
        # 0.24760444 is the weaker of the two published lower bounds for
        # the abundant density, so it sits at or below delta_lo.
        if not self.kobayashi_partial <= self.delta_lo < self.delta_hi:
            raise ValueError("expected kobayashi_partial <= delta_lo < delta_hi")
        if not self.lambda_ > 1:
            raise ValueError("lambda must exceed 1")
        for name in (*_FLOAT_FIELDS, "lambda_", "silva_count_1e14"):
            if name not in self.provenance:
                raise ValueError(f"missing provenance for {name}")


def load_constants(path=None, lambda_value: float | None = None) -> ConstantsBundle:
    """Read the bundle from `path` (default: packaged constants.ini).

    `lambda_value` supplies the computed square-full density constant when
    the file does not pin a [lambda] section.
    """
    parser = configparser.ConfigParser()
    if path is None:
        text = resources.files("pndsum").joinpath("constants.ini").read_text()
        parser.read_string(text)
    else:
        with open(path) as fh:
            parser.read_file(fh)

    values = {}
    provenance = {}
    for name in _FLOAT_FIELDS:
        values[name] = parser.getfloat(name, "value")
        provenance[name] = parser.get(name, "provenance")
    count = parser.getint("silva_count_1e14", "value")
    provenance["silva_count_1e14"] = parser.get("silva_count_1e14", "provenance")

    if parser.has_section("lambda"):
        lam = parser.getfloat("lambda", "value")
        provenance["lambda_"] = parser.get("lambda", "provenance")
    else:
        if lambda_value is None:
            raise ValueError("no [lambda] section and no computed value supplied")
        lam = lambda_value
        provenance["lambda_"] = (
            "computed: zeta(3/2)/(2 zeta(3)) by direct series with "
            "Euler-Maclaurin tail bracket, rounded up"
        )

    return ConstantsBundle(
        lambda_=lam,
        gamma=values["gamma"],
        eps_theta=values["eps_theta"],
        delta_lo=values["delta_lo"],
        delta_hi=values["delta_hi"],
        kobayashi_partial=values["kobayashi_partial"],
        silva_sum_1e14=values["silva_sum_1e14"],
        silva_count_1e14=count,
        partial_sum_4e10=values["partial_sum_4e10"],
        provenance=MappingProxyType(provenance),
    )
