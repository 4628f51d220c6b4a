# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Console script for qclaw.

Exit codes: 0 on success, 2 when a witness was required but not found, 1 on
error.
"""

from __future__ import annotations

import csv
import json
import math
import statistics
import sys

from dataclasses import dataclass, field
from typing import IO, Any, Callable, Iterable, Sequence

import click
import numpy as np

from scipy import stats

from . import adversary, claw, oracle, triangle
from ._config import configure, configure_logging, get_logger, make_rng
from .exceptions import DomainError, QClawError
from .reports import CSV_COLUMNS, RunReport, Verdict
from .typing import MODES, Rng


__all__ = [
    "ALGORITHMS",
    "ExperimentConfig",
    "FitResult",
    "fit_exponent",
    "main",
    "run_experiment",
    "summarize",
    "write_reports",
]

log = get_logger(__name__)

NOT_FOUND_EXIT = 2
ERROR_EXIT = 1


@dataclass
class ExperimentConfig:
    """
    Everything that determines a run: identical configs give identical
    analytic numbers and identical sampled streams.
    """

    algorithm: str
    sizes: list[int]
    trials: int = 1
    mode: str = "analytic"
    seed: int = 0
    m: int | None = None
    ell: int | None = None
    r: int | None = None
    k: int | None = None
    cutoff: int | None = None
    fmt: str = "csv"
    out: str | None = None

    def second_size(self, n: int) -> int:
        return self.m if self.m is not None else n


@dataclass
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    points: list[tuple[float, float]] = field(default_factory=list)


Runner = Callable[[ExperimentConfig, int, Rng, Rng], RunReport]


def _ed_instance(n: int, rng: Rng) -> oracle.FunctionInstance:
    return oracle.gen_k_repeated(n, 2, rng)


def _run_claw(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    f, g = oracle.gen_planted_claw(n, c.second_size(n), gen)
    return claw.generic_claw_finder(f, g, c.ell, c.mode, rng, c.cutoff)  # type: ignore[arg-type]


def _run_claw_classical(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    f, g = oracle.gen_planted_claw(n, c.second_size(n), gen)
    return claw.classical_claw(f, g)


def _run_ed(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    return claw.element_distinctness(
        _ed_instance(n, gen), c.mode, rng, c.ell, c.cutoff  # type: ignore[arg-type]
    )


def _run_ed_classical(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    return claw.classical_sort_ed(_ed_instance(n, gen))


def _run_two_to_one(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    return claw.collision_two_to_one(oracle.gen_two_to_one(n, gen), c.mode, rng)  # type: ignore[arg-type]


def _run_k_repeated(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    k = c.k if c.k is not None else max(2, n // 8)
    return claw.collision_k_repeated(oracle.gen_k_repeated(n, k, gen), k, c.mode, rng)  # type: ignore[arg-type]


def _run_ordered(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    f, g = oracle.gen_ordered_pair(n, c.second_size(n), True, gen)
    return claw.ordered_claw(f, g, c.mode, rng, c.cutoff)  # type: ignore[arg-type]


def _run_ordered_collision(
    c: ExperimentConfig, n: int, gen: Rng, rng: Rng
) -> RunReport:
    f = oracle.FunctionInstance.of(sorted(_ed_instance(n, gen).values), ordered=True)
    return claw.ordered_collision(f, c.mode, rng, c.cutoff)  # type: ignore[arg-type]


def _run_both_ordered(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    f, g = oracle.gen_ordered_pair(n, c.second_size(n), True, gen)
    return claw.both_ordered_claw(f, g, c.mode, rng, c.cutoff, c.r)  # type: ignore[arg-type]


def _triangle_graph(c: ExperimentConfig, n: int, gen: Rng) -> oracle.GraphInstance:
    return triangle.gen_planted_triangle(n, c.m if c.m is not None else 2 * n, gen)


def _run_triangle(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    return triangle.find_triangle(_triangle_graph(c, n, gen), c.mode, rng, c.cutoff)  # type: ignore[arg-type]


def _run_all_triples(c: ExperimentConfig, n: int, gen: Rng, rng: Rng) -> RunReport:
    return triangle.grover_all_triples(
        _triangle_graph(c, n, gen), c.mode, rng, c.cutoff  # type: ignore[arg-type]
    )


def _run_triangle_classical(
    c: ExperimentConfig, n: int, gen: Rng, rng: Rng
) -> RunReport:
    return triangle.classical_triangle(_triangle_graph(c, n, gen))


ALGORITHMS: dict[str, Runner] = {
    "claw": _run_claw,
    "claw-classical": _run_claw_classical,
    "ed": _run_ed,
    "ed-classical": _run_ed_classical,
    "two-to-one": _run_two_to_one,
    "k-repeated": _run_k_repeated,
    "ordered": _run_ordered,
    "ordered-collision": _run_ordered_collision,
    "both-ordered": _run_both_ordered,
    "triangle": _run_triangle,
    "triangle-all-triples": _run_all_triples,
    "triangle-classical": _run_triangle_classical,
}

# Divisors applied to costs before fitting; the predicted log factor.
NORMALIZERS: dict[str, Callable[[float], float] | None] = {
    "none": None,
    "log2": math.log2,
}


def run_experiment(config: ExperimentConfig) -> list[RunReport]:
    """
    Run every trial of every size and write the reports if ``config.out``
    is set.

    Trial ``i`` at size ``n`` draws its instance from stream
    ``(seed, n, i, 0)`` and its randomness from ``(seed, n, i, 1)``, so the
    order in which trials run does not matter.

    Raises:
        DomainError: for an unknown algorithm or a bad mode.
    """
    runner = ALGORITHMS.get(config.algorithm)
    if runner is None:
        msg = f"unknown algorithm {config.algorithm!r}; pick one of {sorted(ALGORITHMS)}"
        raise DomainError(msg)
    if config.mode not in MODES:
        msg = f"mode must be one of {MODES}, got {config.mode!r}"
        raise DomainError(msg)

    reports = []
    for n in config.sizes:
        for trial in range(config.trials):
            report = runner(
                config,
                n,
                make_rng(config.seed, n, trial, 0),
                make_rng(config.seed, n, trial, 1),
            )
            report.seed = config.seed
            report.trial = trial
            reports.append(report)
        log.debug("size_finished", algorithm=config.algorithm, n=n)

    if config.out is not None:
        with open(config.out, "w", encoding="utf-8", newline="") as fp:
            write_reports(reports, config.fmt, fp)
        log.info("experiment_written", path=config.out, reports=len(reports))

    return reports


def summarize(reports: Iterable[RunReport]) -> list[dict[str, Any]]:
    """
    Median and mean cost per size.
    """
    by_size: dict[int, list[float]] = {}
    for report in reports:
        by_size.setdefault(report.n, []).append(float(report.cost))

    return [
        {
            "n": n,
            "trials": len(costs),
            "median": statistics.median(costs),
            "mean": statistics.fmean(costs),
        }
        for n, costs in sorted(by_size.items())
    ]


def write_reports(reports: Sequence[RunReport], fmt: str, fp: IO[str]) -> None:
    if fmt == "json":
        json.dump([r.to_dict() for r in reports], fp, sort_keys=True, indent=2)
        fp.write("\n")
        return

    writer = csv.DictWriter(fp, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    for report in reports:
        writer.writerow(report.csv_row())


def fit_exponent(
    points: Iterable[tuple[float, float]],
    normalize: Callable[[float], float] | None = None,
) -> FitResult:
    """
    Least-squares line through ``(log₂ size, log₂(cost / normalize(size)))``.

    Raises:
        DomainError: for fewer than two points, non-positive values, or a
            single distinct size.
    """
    pts = list(points)
    if len(pts) < 2:
        msg = f"need at least two points to fit, got {len(pts)}"
        raise DomainError(msg)
    xs, ys = [], []
    for size, cost in pts:
        divisor = normalize(size) if normalize is not None else 1.0
        if size <= 0 or cost <= 0 or divisor <= 0:
            msg = f"sizes and costs must be positive, got ({size}, {cost})"
            raise DomainError(msg)
        xs.append(math.log2(size))
        ys.append(math.log2(cost / divisor))
    if len(set(xs)) < 2:
        msg = "all points share one size"
        raise DomainError(msg)

    fit = stats.linregress(np.array(xs), np.array(ys))
    return FitResult(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=min(1.0, float(fit.rvalue) ** 2),
        points=list(zip(xs, ys)),
    )


# Command line.


def _emit(reports: Sequence[RunReport], fmt: str, out: str | None) -> None:
    if out is None:
        write_reports(reports, fmt, sys.stdout)
        return
    with open(out, "w", encoding="utf-8", newline="") as fp:
        write_reports(reports, fmt, fp)
    log.info("experiment_written", path=out, reports=len(reports))


def _exit_for(reports: Sequence[RunReport], witness_required: bool = True) -> None:
    missing = [r for r in reports if r.verdict is Verdict.NOT_FOUND]
    if witness_required and missing:
        raise SystemExit(NOT_FOUND_EXIT)


def _common(fn: Callable[..., Any]) -> Callable[..., Any]:
    options = [
        click.option("--n", "n", type=int, default=64, show_default=True, help="Size N (or node count n)."),
        click.option("--m", "m", type=int, default=None, help="Second size M (edge count for graphs)."),
        click.option("--ell", type=int, default=None, help="Subset size ℓ."),
        click.option("--mode", type=click.Choice(MODES), default="sampled", show_default=True),
        click.option("--trials", type=int, default=1, show_default=True),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--cutoff", type=int, default=None, help="Applications before giving up."),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True),
        click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None),
        click.option("--instance", type=click.Path(exists=True, dir_okay=False), default=None, help="JSON instance file."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _guarded(fn: Callable[..., Any]) -> Callable[..., Any]:
    """
    Turn library errors into exit code 1 with a message on standard error.
    """

    def wrapper(*args: Any, **kw: Any) -> Any:
        try:
            return fn(*args, **kw)
        except (QClawError, OSError) as e:
            click.echo(f"error: {e}", err=True)
            raise SystemExit(ERROR_EXIT) from e

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _trials(
    kw: dict[str, Any],
    run: Callable[[Rng], RunReport],
) -> list[RunReport]:
    reports = []
    for trial in range(kw["trials"]):
        report = run(make_rng(kw["seed"], kw["n"], trial, 1))
        report.seed = kw["seed"]
        report.trial = trial
        reports.append(report)
    return reports


def _functions(kw: dict[str, Any], count: int) -> list[oracle.FunctionInstance]:
    loaded = oracle.load_instances(kw["instance"])
    if len(loaded) != count or not all(
        isinstance(i, oracle.FunctionInstance) for i in loaded
    ):
        msg = f"{kw['instance']}: expected {count} function instance(s)"
        raise DomainError(msg)
    return loaded  # type: ignore[return-value]


def _gen(kw: dict[str, Any]) -> Rng:
    return make_rng(kw["seed"], kw["n"], 0, 0)


@click.group()
@click.option("--verbose", is_flag=True, help="Log every run at debug level.")
@click.option("--json-logs", is_flag=True, help="Render logs as JSON.")
@click.version_option(package_name="qclaw")
def main(verbose: bool, json_logs: bool) -> None:
    """Desk-scale laboratory for comparison-model quantum search algorithms."""
    if json_logs:
        configure(json_logs=True)
    configure_logging(10 if verbose else 20)


@main.command("claw")
@_common
@click.option("--classical", is_flag=True, help="Run the sort-and-search baseline.")
@_guarded
def claw_cmd(classical: bool, **kw: Any) -> None:
    """Find a claw between two unordered functions."""
    if kw["instance"]:
        f, g = _functions(kw, 2)
    else:
        f, g = oracle.gen_planted_claw(kw["n"], kw["m"] or kw["n"], _gen(kw))
    if classical:
        reports = [claw.classical_claw(f, g)]
    else:
        reports = _trials(
            kw,
            lambda rng: claw.generic_claw_finder(
                f, g, kw["ell"], kw["mode"], rng, kw["cutoff"]
            ),
        )
    _emit(reports, kw["fmt"], kw["out"])
    _exit_for(reports)


@main.command("ed")
@_common
@click.option("--k", type=int, default=None, help="Multiplicity for --variant k-repeated.")
@click.option(
    "--variant",
    type=click.Choice(["generic", "two-to-one", "k-repeated", "classical"]),
    default="generic",
    show_default=True,
)
@_guarded
def ed_cmd(k: int | None, variant: str, **kw: Any) -> None:
    """Element distinctness and its collision-finding variants."""
    if kw["instance"]:
        (f,) = _functions(kw, 1)
    elif variant == "two-to-one":
        f = oracle.gen_two_to_one(kw["n"], _gen(kw))
    elif variant == "k-repeated":
        f = oracle.gen_k_repeated(kw["n"], k or 2, _gen(kw))
    else:
        f = _ed_instance(kw["n"], _gen(kw))

    if variant == "classical":
        reports = [claw.classical_sort_ed(f)]
    elif variant == "two-to-one":
        reports = _trials(kw, lambda rng: claw.collision_two_to_one(f, kw["mode"], rng))
    elif variant == "k-repeated":
        reports = _trials(
            kw, lambda rng: claw.collision_k_repeated(f, k or 2, kw["mode"], rng)
        )
    else:
        reports = _trials(
            kw,
            lambda rng: claw.element_distinctness(
                f, kw["mode"], rng, kw["ell"], kw["cutoff"]
            ),
        )
    _emit(reports, kw["fmt"], kw["out"])
    # Distinct is an answer, not a missing witness.
    _exit_for(reports, witness_required=variant != "generic")


@main.command("ordered")
@_common
@click.option("--collision", is_flag=True, help="Search neighbouring pairs of one ordered f.")
@_guarded
def ordered_cmd(collision: bool, **kw: Any) -> None:
    """Claw or collision finding with an ordered f."""
    if collision:
        if kw["instance"]:
            (f,) = _functions(kw, 1)
        else:
            f = oracle.FunctionInstance.of(
                sorted(_ed_instance(kw["n"], _gen(kw)).values), ordered=True
            )
        reports = _trials(
            kw, lambda rng: claw.ordered_collision(f, kw["mode"], rng, kw["cutoff"])
        )
    else:
        if kw["instance"]:
            f, g = _functions(kw, 2)
        else:
            f, g = oracle.gen_ordered_pair(kw["n"], kw["m"] or kw["n"], True, _gen(kw))
        reports = _trials(
            kw, lambda rng: claw.ordered_claw(f, g, kw["mode"], rng, kw["cutoff"])
        )
    _emit(reports, kw["fmt"], kw["out"])
    _exit_for(reports)


@main.command("both-ordered")
@_common
@click.option("--r", type=int, default=None, help="Pin the top-level block length.")
@click.option("--no-claw", is_flag=True, help="Generate a claw-free pair.")
@_guarded
def both_ordered_cmd(r: int | None, no_claw: bool, **kw: Any) -> None:
    """Claw finding with both functions ordered."""
    if kw["instance"]:
        f, g = _functions(kw, 2)
    else:
        f, g = oracle.gen_ordered_pair(kw["n"], kw["m"] or kw["n"], not no_claw, _gen(kw))
    if r is not None:
        for cell in claw.subproblems(f, g, r):
            log.debug("subproblem", **cell._asdict())
    reports = _trials(
        kw, lambda rng: claw.both_ordered_claw(f, g, kw["mode"], rng, kw["cutoff"], r)
    )
    _emit(reports, kw["fmt"], kw["out"])
    _exit_for(reports)


@main.command("triangle")
@_common
@click.option(
    "--variant",
    type=click.Choice(["two-stage", "all-triples", "classical"]),
    default="two-stage",
    show_default=True,
)
@_guarded
def triangle_cmd(variant: str, **kw: Any) -> None:
    """Find a triangle with edge-slot queries."""
    if kw["instance"]:
        (g,) = oracle.load_instances(kw["instance"])
        if not isinstance(g, oracle.GraphInstance):
            msg = f"{kw['instance']}: expected a graph instance"
            raise DomainError(msg)
    else:
        g = triangle.gen_planted_triangle(kw["n"], kw["m"] or 2 * kw["n"], _gen(kw))

    if variant == "classical":
        reports: list[RunReport] = [triangle.classical_triangle(g)]
    else:
        finder = (
            triangle.find_triangle if variant == "two-stage" else triangle.grover_all_triples
        )
        reports = _trials(kw, lambda rng: finder(g, kw["mode"], rng, kw["cutoff"]))
    _emit(reports, kw["fmt"], kw["out"])
    _exit_for(reports)


@main.command("adversary")
@click.option(
    "--kind",
    type=click.Choice([k.value for k in adversary.FamilyKind]),
    multiple=True,
    required=True,
)
@click.option("--n", "sizes", type=int, multiple=True, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@_guarded
def adversary_cmd(kind: tuple[str, ...], sizes: tuple[int, ...], fmt: str, out: str | None) -> None:
    """Relation parameters (m, m′, l, l′) and bound per family and size."""
    rows = adversary.relation_table([(k, n) for k in kind for n in sizes])
    fp = open(out, "w", encoding="utf-8", newline="") if out else sys.stdout
    try:
        if fmt == "json":
            json.dump(rows, fp, indent=2)
            fp.write("\n")
        else:
            writer = csv.DictWriter(fp, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
    finally:
        if out:
            fp.close()
            log.info("experiment_written", path=out, reports=len(rows))


def _parse_sizes(_ctx: Any, _param: Any, value: str) -> list[int]:
    try:
        return [int(s) for s in value.split(",") if s.strip()]
    except ValueError as e:
        raise click.BadParameter(f"not a comma-separated list of sizes: {value}") from e


@main.command("scale")
@click.argument("algorithm")
@click.option("--sizes", callback=_parse_sizes, required=True, help="Comma-separated sizes.")
@click.option("--m", "m", type=int, default=None)
@click.option("--ell", type=int, default=None)
@click.option("--r", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--mode", type=click.Choice(MODES), default="analytic", show_default=True)
@click.option("--trials", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cutoff", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--normalize", type=click.Choice(sorted(NORMALIZERS)), default="none", show_default=True)
@_guarded
def scale_cmd(algorithm: str, normalize: str, **kw: Any) -> None:
    """Sweep sizes, write per-trial rows and print the fitted exponent."""
    config = ExperimentConfig(algorithm=algorithm, **kw)
    reports = run_experiment(config)
    if config.out is None:
        write_reports(reports, config.fmt, sys.stdout)
    summary = summarize(reports)
    for row in summary:
        log.info("size_summary", **row)
    if len(summary) >= 2:
        fit = fit_exponent(
            [(row["n"], row["median"]) for row in summary], NORMALIZERS[normalize]
        )
        click.echo(
            f"slope={fit.slope:.4f} intercept={fit.intercept:.4f} "
            f"r_squared={fit.r_squared:.4f}",
            err=True,
        )


@main.command("fit")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--column", default="comparisons", show_default=True)
@click.option("--normalize", type=click.Choice(sorted(NORMALIZERS)), default="none", show_default=True)
@_guarded
def fit_cmd(path: str, column: str, normalize: str) -> None:
    """Fit the exponent of median COLUMN against n in a CSV from `scale`."""
    by_size: dict[int, list[float]] = {}
    with open(path, encoding="utf-8", newline="") as fp:
        for row in csv.DictReader(fp):
            by_size.setdefault(int(row["n"]), []).append(float(row[column]))
    fit = fit_exponent(
        [(n, statistics.median(v)) for n, v in sorted(by_size.items())],
        NORMALIZERS[normalize],
    )
    click.echo(json.dumps({"slope": fit.slope, "intercept": fit.intercept, "r_squared": fit.r_squared}))


if __name__ == "__main__":
    sys.exit(main())  # pragma: no cover
