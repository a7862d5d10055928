"""``partition-stats`` command line.

Exit codes: 0 success, 1 a verification check failed, 2 bad command line,
3 bad input data or I/O failure.
"""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import estimators as est
from . import information as info
from . import verify as mc
from .distributions import parse_distribution
from .errors import (
    ConfigError,
    MalformedDistribution,
    MalformedValue,
    MissingRequired,
    PartitionStatsError,
    UnknownFlag,
)
from .partition import build_partition, sorted_sample_new
from .report import Report, Table, parse_inline, read_values

COMMANDS = ("estimate", "compare", "verify", "entropy", "quantile", "sample")
DEFAULT_SEED = 0
DEFAULT_REPS = 100_000

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DATA = 3


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    data: list[float] | None = None
    column: int | None = None
    dist: str | None = None
    n: int | None = None
    reps: int = DEFAULT_REPS
    seed: int = DEFAULT_SEED
    tail: str = "none"
    format: str = "json"
    output: str | None = None
    q: list[float] = field(default_factory=list)
    m: int | None = None
    base: str = "bits"
    density: bool = True
    spacings: bool = False
    beta_mean: bool = False
    conditional_share: bool = False
    z_max: float = mc.DEFAULT_Z_MAX

    def tail_policy(self) -> est.TailPolicy:
        return parse_tail(self.tail)


def parse_tail(text: str) -> est.TailPolicy:
    """``trunc:a,b``, ``exp`` or ``none``."""
    t = text.strip().lower()
    if t == "exp":
        return est.ExponentialMatched()
    if t == "none":
        return est.Excluded()
    if t.startswith("trunc:"):
        try:
            lo, hi = (float(p) for p in t[len("trunc:"):].split(","))
        except ValueError:
            raise MalformedValue(f"--tail trunc expects trunc:a,b, got {text!r}", "--tail") from None
        return est.Truncated(lo, hi)
    raise MalformedValue(f"--tail must be trunc:a,b, exp or none, got {text!r}", "--tail")


def _tail_text(policy: est.TailPolicy) -> str:
    if isinstance(policy, est.Truncated):
        return f"trunc:{policy.lower!r},{policy.upper!r}"
    return "exp" if isinstance(policy, est.ExponentialMatched) else "none"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        flag = None
        m = re.search(r"argument (\S+?):", message)
        if m:
            flag = m.group(1).split("/")[0]
        if "unrecognized arguments" in message:
            flag = message.rsplit(":", 1)[-1].split()[0]
            raise UnknownFlag(message, flag)
        if "required" in message:
            m = re.search(r"required: (.*)$", message)
            if m:
                flag = m.group(1).split(",")[0].split("/")[0].strip()
            raise MissingRequired(message, flag)
        raise MalformedValue(message, flag)


def _probs(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="partition-stats", description="Equal-probability partition estimators and Monte Carlo checks.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp, data=True):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", help="write here instead of stdout")
        if data:
            src = sp.add_mutually_exclusive_group()
            src.add_argument("--input", help="file with one value per line, or - for stdin")
            src.add_argument("--data", help="inline comma-separated values")
            sp.add_argument("--column", type=int, help="1-based column of a comma-separated file")

    sp = sub.add_parser("estimate", help="plotting positions, density table and entropy for a sample")
    common(sp)
    sp.add_argument("--tail", default="none", help="trunc:a,b | exp | none (default none)")
    sp.add_argument("--no-density", dest="density", action="store_false", help="skip the density table")

    sp = sub.add_parser("compare", help="ECDF versus partition CDF at the order statistics")
    common(sp)

    sp = sub.add_parser("verify", help="Monte Carlo check that every segment has mean mass 1/(n+1)")
    common(sp, data=False)
    sp.add_argument("--dist", required=True, help="uniform:a,b | exp:lambda | normal:mu,sigma")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--reps", type=int, default=DEFAULT_REPS)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--z-max", dest="z_max", type=float, default=mc.DEFAULT_Z_MAX)
    sp.add_argument("--spacings", action="store_true", help="also simulate uniform spacings")
    sp.add_argument("--beta-mean", dest="beta_mean", action="store_true", help="also check E[F(x_(i))] = i/(n+1)")
    sp.add_argument("--conditional-share", dest="conditional_share", action="store_true",
                    help="also check the conditional share 1/(n-i+1)")

    sp = sub.add_parser("entropy", help="partition entropy log(n+1)")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--base", choices=("bits", "nats"), default="bits")

    sp = sub.add_parser("quantile", help="invert the partition CDF")
    common(sp)
    sp.add_argument("--q", type=_probs, required=True, help="comma-separated probabilities in (0, 1)")
    sp.add_argument("--tail", default="exp", help="trunc:a,b | exp (default exp)")

    sp = sub.add_parser("sample", help="draw from the partition CDF")
    common(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--tail", default="exp", help="trunc:a,b | exp (default exp)")
    return p


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = vars(build_parser().parse_args(list(argv)))
    if ns.get("data") is not None:
        ns["data"] = parse_inline(ns["data"])
    cfg = RunConfig(**ns)
    cmd = cfg.command

    if cmd in ("estimate", "compare", "quantile", "sample") and cfg.input is None and cfg.data is None:
        raise MissingRequired(f"{cmd} needs --input or --data", "--input")
    if cmd == "entropy" and cfg.n is None and cfg.input is None and cfg.data is None:
        raise MissingRequired("entropy needs --n, --input or --data", "--n")
    if cfg.column is not None and cfg.column < 1:
        raise MalformedValue("--column is 1-based", "--column")
    if cmd == "verify":
        if cfg.n < 1:
            raise MalformedValue("--n must be >= 1", "--n")
        if cfg.reps < mc.MIN_REPS:
            raise MalformedValue(f"--reps must be >= {mc.MIN_REPS}", "--reps")
        try:
            parse_distribution(cfg.dist)
        except MalformedDistribution as e:
            raise MalformedValue(str(e), "--dist") from None
    if cmd == "entropy" and cfg.n is not None and cfg.n < 0:
        raise MalformedValue("--n must be >= 0", "--n")
    if cmd == "sample" and cfg.m < 1:
        raise MalformedValue("--m must be >= 1", "--m")
    if cmd == "quantile" and (not cfg.q or not all(0.0 < q < 1.0 for q in cfg.q)):
        raise MalformedValue("--q values must lie in (0, 1)", "--q")
    if cmd in ("estimate", "quantile", "sample"):
        parse_tail(cfg.tail)
    return cfg


def _load(cfg: RunConfig):
    vals = cfg.data if cfg.data is not None else read_values(cfg.input, cfg.column)
    return sorted_sample_new(vals)


def _source(cfg: RunConfig) -> dict:
    if cfg.data is not None:
        return {"data": list(cfg.data)}
    return {"input": cfg.input, "column": cfg.column}


# -- commands ----------------------------------------------------------------------

def cmd_estimate(cfg: RunConfig) -> tuple[int, Report]:
    s = _load(cfg)
    policy = cfg.tail_policy()
    n = s.n
    pos = est.plotting_positions(n)
    order = [
        {"rank": i + 1, "value": float(s.values[i]), "plotting_position": float(pos[i]), "ecdf": (i + 1) / n}
        for i in range(n)
    ]
    anchors = [[r["value"], r["plotting_position"]] for r in order]
    est.build_cdf(s, policy)  # rejects bad truncation bounds even without a density table
    density = []
    # n = 1 with excluded tails has empty support: an empty table, not an error
    if cfg.density and not (isinstance(policy, est.Excluded) and n < 2):
        d = est.build_density(build_partition(s), policy)
        density = [
            {"lower": pc.lower, "upper": pc.upper, "mass": pc.mass, "height": pc.height} for pc in d.pieces()
        ]
    entropy = info.partition_entropy(n).value
    results = {
        "n": n,
        "ties": [list(t) for t in s.ties],
        "order_statistics": order,
        "plotting_positions": [float(x) for x in pos],
        "cdf_anchors": anchors,
        "segment_mass": 1.0 / (n + 1),
        "density": density,
        "entropy_bits": entropy,
    }
    tables = [
        Table("order_statistics", ["rank", "value", "plotting_position", "ecdf"],
              [[r["rank"], r["value"], r["plotting_position"], r["ecdf"]] for r in order]),
        Table("density", ["lower", "upper", "mass", "height"],
              [[r["lower"], r["upper"], r["mass"], r["height"]] for r in density]),
        Table("summary", ["n", "segment_mass", "entropy_bits"], [[n, 1.0 / (n + 1), entropy]]),
    ]
    params = {**_source(cfg), "tail": _tail_text(policy), "density": cfg.density}
    return EXIT_OK, Report("estimate", params, results, tables)


def cmd_compare(cfg: RunConfig) -> tuple[int, Report]:
    s = _load(cfg)
    rep = est.compare_cdfs(s)
    rows = [
        {"rank": i + 1, "value": rep.values[i], "ecdf": rep.ecdf[i], "partition": rep.partition[i],
         "difference": rep.ecdf[i] - rep.partition[i]}
        for i in range(rep.n)
    ]
    results = {
        "n": rep.n,
        "pairs": rows,
        "sup_difference": rep.sup_difference,
        "tail_mass_above_max": dict(rep.tail_mass_above_max),
    }
    tables = [
        Table("pairs", ["rank", "value", "ecdf", "partition", "difference"],
              [[r[k] for k in ("rank", "value", "ecdf", "partition", "difference")] for r in rows]),
        Table("summary", ["n", "sup_difference", "tail_mass_above_max_ecdf", "tail_mass_above_max_partition"],
              [[rep.n, rep.sup_difference, rep.tail_mass_above_max["ecdf"], rep.tail_mass_above_max["partition"]]]),
    ]
    return EXIT_OK, Report("compare", _source(cfg), results, tables)


def _estimate_rows(label: str, items: list[tuple[int, mc.MeanEstimate]]) -> tuple[list[dict], Table]:
    rows = [{"index": i, **e.to_dict()} for i, e in items]
    keys = ["index", "estimate", "se", "target", "z", "passed"]
    return rows, Table(label, keys, [[r[k] for k in keys] for r in rows])


def cmd_verify(cfg: RunConfig) -> tuple[int, Report]:
    dist = parse_distribution(cfg.dist)
    n, reps, seed, z_max = cfg.n, cfg.reps, cfg.seed, cfg.z_max
    rep = mc.verify_expected_masses(dist, n, reps, seed, z_max)
    results: dict = {"expected_masses": rep.to_dict()}
    tables = [
        Table("expected_masses", ["segment", "mean", "se", "z", "variance", "expected"],
              [[i, rep.mean[i], rep.se[i], rep.z[i], rep.variance[i], rep.expected] for i in range(n + 1)]),
    ]
    checks = [rep.passed]
    if cfg.spacings:
        sp = mc.simulate_spacings(n, reps, seed, z_max)
        results["spacings"] = sp.to_dict()
        checks.append(sp.passed)
        tables.append(Table("spacings", ["segment", "mean", "se", "z", "variance", "q025", "q500", "q975"],
                            [[i, sp.mean[i], sp.se[i], sp.z[i], sp.variance[i], sp.q025[i], sp.q500[i], sp.q975[i]]
                             for i in range(n + 1)]))
    if cfg.beta_mean:
        items = [(i, mc.verify_beta_mean(dist, n, i, reps, seed, z_max)) for i in range(1, n + 1)]
        rows, table = _estimate_rows("beta_mean", items)
        results["beta_mean"] = rows
        tables.append(table)
        checks.extend(e.passed for _, e in items)
    if cfg.conditional_share:
        items = [(i, mc.conditional_share_check(dist, n, i, reps, seed, z_max)) for i in range(n)]
        rows, table = _estimate_rows("conditional_share", items)
        results["conditional_share"] = rows
        tables.append(table)
        checks.extend(e.passed for _, e in items)
    passed = all(checks)
    results["passed"] = passed
    tables.append(Table("summary", ["passed"], [[passed]]))
    params = {"dist": dist.to_text(), "n": n, "reps": reps, "seed": seed, "z_max": z_max,
              "spacings": cfg.spacings, "beta_mean": cfg.beta_mean, "conditional_share": cfg.conditional_share}
    return (EXIT_OK if passed else EXIT_CHECK_FAILED), Report("verify", params, results, tables)


def cmd_entropy(cfg: RunConfig) -> tuple[int, Report]:
    n = cfg.n if cfg.n is not None else _load(cfg).n
    h = info.partition_entropy(n, cfg.base)
    gain = info.marginal_information(n)
    results = {"n": n, "base": h.base.value, "entropy": h.value, "segments": n + 1,
               "marginal_information_bits": gain}
    tables = [Table("entropy", ["n", "base", "entropy", "segments", "marginal_information_bits"],
                    [[n, h.base.value, h.value, n + 1, gain]])]
    params = {"n": n, "base": cfg.base} if cfg.n is not None else {**_source(cfg), "base": cfg.base}
    return EXIT_OK, Report("entropy", params, results, tables)


def cmd_quantile(cfg: RunConfig) -> tuple[int, Report]:
    c = est.build_cdf(_load(cfg), cfg.tail_policy())
    rows = [{"q": q, "x": est.quantile(c, q)} for q in cfg.q]
    params = {**_source(cfg), "tail": _tail_text(c.tail_policy), "q": list(cfg.q)}
    return EXIT_OK, Report("quantile", params, {"quantiles": rows},
                           [Table("quantiles", ["q", "x"], [[r["q"], r["x"]] for r in rows])])


def cmd_sample(cfg: RunConfig) -> tuple[int, Report]:
    c = est.build_cdf(_load(cfg), cfg.tail_policy())
    draws = [float(x) for x in est.sample_from(c, cfg.seed, cfg.m)]
    params = {**_source(cfg), "tail": _tail_text(c.tail_policy), "m": cfg.m, "seed": cfg.seed}
    return EXIT_OK, Report("sample", params, {"samples": draws},
                           [Table("samples", ["index", "value"], [[i, x] for i, x in enumerate(draws)])])


HANDLERS = {
    "estimate": cmd_estimate,
    "compare": cmd_compare,
    "verify": cmd_verify,
    "entropy": cmd_entropy,
    "quantile": cmd_quantile,
    "sample": cmd_sample,
}


def run(cfg: RunConfig) -> tuple[int, Report]:
    return HANDLERS[cfg.command](cfg)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except ConfigError as e:
        print(f"partition-stats: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, report = run(cfg)
    except (PartitionStatsError, OSError) as e:
        print(f"partition-stats: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DATA
    text = report.render(cfg.format)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
