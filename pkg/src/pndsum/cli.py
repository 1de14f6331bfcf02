"""Command-line reproduction harness.

Subcommands: enumerate (segmented pnd enumeration into a checkpoint),
sum (partial reciprocal sum from a checkpoint), bounds (individual bound
components), verify (cross-module invariant suites), assemble (the full
interval). Exit status is 0 exactly when every requested check or bound
meets its documented threshold.
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass
from math import log
from pathlib import Path

import click

from pndsum import bounds
from pndsum.constants import ConstantsBundle, load_constants
from pndsum.enumeration import (
    Checkpoint,
    backend_name,
    enumerate_range,
    merge,
    partial_sum,
)
from pndsum.errors import NotApplicableError, ValidationError
from pndsum.report import BoundReport
from pndsum.verify import SUITES

UPPER_TARGET = 0.37937


def _default_threads() -> int:
    env = os.environ.get("PNDSUM_THREADS")
    return max(1, int(env)) if env else 1


@dataclass
class RunConfig:
    command: str
    lo: int = 1
    hi: int = 0
    segment_size: int = 10**7
    checkpoint: str | None = None
    constants_path: str | None = None
    output_format: str = "human"
    threads: int = 1
    slack: bool = True
    smooth_const: float = 0.35

    def __post_init__(self):
        if self.hi and self.lo > self.hi:
            raise ValidationError("lo must not exceed hi")
        if self.threads < 1:
            raise ValidationError("thread count must be >= 1")
        if self.smooth_const not in (0.35, 0.38):
            raise ValidationError("smooth additive constant must be 0.35 or 0.38")

    def bundle(self) -> ConstantsBundle:
        if self.constants_path:
            return load_constants(self.constants_path, lambda_value=bounds.lambda_const())
        return bounds.default_constants()


@click.group()
def main():
    """Primitive nondeficient numbers: enumeration, sums, and explicit bounds."""


@main.command("enumerate")
@click.option("--from", "lo", type=int, default=1, show_default=True)
@click.option("--to", "hi", type=int, required=True)
@click.option("--segment-size", type=int, default=10**7, show_default=True)
@click.option("--checkpoint", type=click.Path(), default=None, help="JSON-lines checkpoint to write/extend.")
@click.option("--threads", type=int, default=None, help="Worker threads (default: PNDSUM_THREADS or 1).")
def cmd_enumerate(lo, hi, segment_size, checkpoint, threads):
    """Enumerate pnds in [--from, --to], printing count, sum, throughput."""
    cfg = RunConfig(
        command="enumerate",
        lo=lo,
        hi=hi,
        segment_size=segment_size,
        checkpoint=checkpoint,
        threads=threads if threads is not None else _default_threads(),
    )
    existing = None
    if cfg.checkpoint and Path(cfg.checkpoint).exists():
        existing = Checkpoint.load(cfg.checkpoint)
        if existing.segments and existing.hi >= cfg.hi and existing.lo <= cfg.lo:
            click.echo(f"checkpoint already covers [{existing.lo}, {existing.hi}]; nothing to do")
            _print_summary(existing, 0.0)
            return
        if existing.segments:
            if existing.hi + 1 > cfg.hi:
                raise click.ClickException(
                    f"checkpoint already covers [{existing.lo}, {existing.hi}], "
                    f"disjoint from the requested range ending at {cfg.hi}"
                )
            cfg = RunConfig(
                command="enumerate",
                lo=existing.hi + 1,
                hi=cfg.hi,
                segment_size=existing.segment_size,
                checkpoint=cfg.checkpoint,
                threads=cfg.threads,
            )
            click.echo(f"resuming after {existing.hi}")
    t0 = time.perf_counter()
    try:
        cp = enumerate_range(cfg.lo, cfg.hi, segment_size=cfg.segment_size, threads=cfg.threads)
    except (ValueError, MemoryError) as exc:
        raise click.ClickException(str(exc)) from exc
    elapsed = time.perf_counter() - t0
    if existing and existing.segments:
        cp = merge(existing, cp)
    if cfg.checkpoint:
        cp.save(cfg.checkpoint)
        click.echo(f"checkpoint written to {cfg.checkpoint}")
    _print_summary(cp, elapsed)


def _print_summary(cp: Checkpoint, elapsed: float) -> None:
    principal, compensation = cp.recip_pair
    click.echo(f"backend: {backend_name()}")
    click.echo(f"range: [{cp.lo}, {cp.hi}]")
    click.echo(f"pnd count: {cp.pnd_count}")
    click.echo(f"reciprocal sum: {principal!r} (compensation {compensation!r})")
    click.echo(f"largest pnd: {cp.largest_pnd}")
    if elapsed > 0:
        click.echo(f"throughput: {(cp.hi - cp.lo + 1) / elapsed / 1e6:.1f} M n/s ({elapsed:.2f}s)")


@main.command("sum")
@click.option("--checkpoint", type=click.Path(exists=True), required=True)
@click.option("--to", "x", type=int, required=True)
def cmd_sum(checkpoint, x):
    """Partial reciprocal sum over pnds <= --to from a checkpoint."""
    cp = Checkpoint.load(checkpoint)
    try:
        value = partial_sum(cp, x)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"sum of 1/n over pnds <= {x}: {value!r}")


@main.command("bounds")
@click.argument(
    "component",
    type=click.Choice(["tail", "intermediate", "bridge", "naive-diagnostic", "heuristic"]),
)
@click.option("--log2x", type=float, default=700.0 + log(2.0), show_default="ln(2 e^700)")
@click.option("--k-min", type=int, default=700, show_default=True)
@click.option("--k-max", type=int, default=5000, show_default=True)
@click.option("--smooth-const", type=click.Choice(["0.35", "0.38"]), default="0.35", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "human"]), default="human", show_default=True)
@click.option("--output", type=click.Path(), default=None, help="Write the report here as well.")
@click.option("--no-slack", is_flag=True, help="Disable the directed-rounding surrogate.")
@click.option("--constants", "constants_path", type=click.Path(exists=True), default=None)
def cmd_bounds(component, log2x, k_min, k_max, smooth_const, fmt, output, no_slack, constants_path):
    """Evaluate one bound component and emit its report."""
    cfg = RunConfig(
        command="bounds",
        constants_path=constants_path,
        output_format=fmt,
        slack=not no_slack,
        smooth_const=float(smooth_const),
    )
    bounds.set_slack_enabled(cfg.slack)
    try:
        report = _component_report(component, cfg, log2x, k_min, k_max)
    except NotApplicableError as exc:
        raise click.ClickException(f"bound not applicable: {exc}") from exc
    except ValidationError as exc:
        raise click.ClickException(str(exc)) from exc
    finally:
        bounds.set_slack_enabled(True)
    _emit_report(report, fmt, output)


def _component_report(component, cfg: RunConfig, log2x, k_min, k_max) -> BoundReport:
    c = cfg.bundle()
    if component == "tail":
        tail = bounds.tail_total()
        return BoundReport(
            name="tail-e5000",
            value=tail.total,
            formula_id="tail cases (i)+(ii)+(iii) past e^5000",
            children=[
                BoundReport("tail-case-i", tail.case_i, "(1/24) sum (k+5)^4 k^(-4 ln 4), integral comparison"),
                BoundReport(
                    "tail-case-ii",
                    tail.case_ii.value,
                    "2 * direct bracket sum + 4.2 * integral exp(-t^0.4)",
                    slack_note=f"direct sum {tail.case_ii.direct_sum!r}, integral {tail.case_ii.integral_upper!r}",
                ),
                BoundReport("tail-case-iii", tail.case_iii, "2.1 * integral exp(-t/(8 ln t)) from 5000"),
            ],
        )
    if component == "intermediate":
        inter = bounds.intermediate_sum(k_min, k_max, smooth_const=cfg.smooth_const, constants=c)
        return BoundReport(
            name=f"intermediate-{k_min}-{k_max}",
            value=inter.total,
            formula_id="sum over k of nonsmooth + smooth columns",
            slack_note=f"smooth additive constant {cfg.smooth_const}",
            children=[
                BoundReport("intermediate-nonsmooth", inter.nonsmooth, "2[(lambda+1) y^(-b/3) + 2 y^(-4b/9)] summed over k"),
                BoundReport("intermediate-smooth", inter.smooth, "Rankin smooth bound summed over k"),
            ],
        )
    if component == "bridge":
        f1, f2 = bounds.bridge_forms(log2x, c)
        return BoundReport(
            name="bridge",
            value=min(f1, f2),
            formula_id="abundant-density bridge at ln(2x) = %.6g" % log2x,
            slack_note="min of both forms",
            children=[
                BoundReport("bridge-product-form", f1, "(delta_hi - kobayashi) e^gamma (L/2 + 4/L^3)"),
                BoundReport("bridge-linear-form", f2, "3.835e-5 * L"),
            ],
            additive=False,
        )
    if component == "naive-diagnostic":
        v = bounds.naive_nonsmooth_from_1e14()
        return BoundReport(
            name="naive-nonsmooth-from-1e14",
            value=v,
            formula_id="nonsmooth bracket summed from k = ceil(14 ln 10), b unchecked",
            slack_note="diagnostic only: shows the distribution estimates alone blow up",
        )
    if component == "heuristic":
        v = bounds.heuristic_tail()
        return BoundReport(
            name="heuristic-tail",
            value=v,
            formula_id="integral exp(-sqrt(t ln t)) from 14 ln 10",
            slack_note="informational; never enters the assembly",
        )
    raise ValidationError(f"unknown component {component}")


def _emit_report(report: BoundReport, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = report.to_json()
    elif fmt == "csv":
        text = report.to_csv()
    else:
        text = report.render() + "\n"
    click.echo(text, nl=False)
    if output:
        Path(output).write_text(text)


@main.command("verify")
@click.argument("suites", nargs=-1)
@click.option("--to", "n_max", type=int, default=None, help="Range cap for enumeration-backed suites.")
@click.option("--y", type=int, default=None, help="Cap for the square-full count bracket.")
def cmd_verify(suites, n_max, y):
    """Run invariant suites (default: all). Nonzero exit on any failure."""
    names = list(suites) or ["all"]
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise click.ClickException(f"unknown suites: {', '.join(unknown)}; available: {', '.join(SUITES)}")
    failures = []
    for name in names:
        result = SUITES[name](n_max=n_max, y=y)
        click.echo(result.line())
        if not result.passed:
            failures.append(name)
    if failures:
        raise click.ClickException(f"failing suites: {', '.join(failures)}")


@main.command("assemble")
@click.option("--constants", "constants_path", type=click.Path(exists=True), default=None)
@click.option("--smooth-const", type=click.Choice(["0.35", "0.38"]), default="0.35", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "human"]), default="human", show_default=True)
@click.option("--output", type=click.Path(), default=None)
def cmd_assemble(constants_path, smooth_const, fmt, output):
    """Assemble the interval; nonzero exit if the upper bound misses 0.37937."""
    cfg = RunConfig(
        command="assemble",
        constants_path=constants_path,
        output_format=fmt,
        smooth_const=float(smooth_const),
    )
    c = cfg.bundle()
    report = bounds.assemble_upper(c, smooth_const=cfg.smooth_const)
    _emit_report(report, fmt, output)
    upper = report.find("upper-bound").value
    click.echo(f"interval: ({c.silva_sum_1e14}, {upper:.6f})")
    if upper > UPPER_TARGET:
        click.echo(f"FAIL: upper bound {upper:.6f} exceeds {UPPER_TARGET}", err=True)
        sys.exit(1)
    click.echo(f"upper bound {upper:.6f} <= {UPPER_TARGET}")


if __name__ == "__main__":
    main()
