"""``qinfo (measure|figure|verify)``: measures, figure data and the acceptance table.

Exit codes: 0 ok, 1 a verification check failed, 2 invalid input,
3 numerical failure (non-convergence or a divergent measure).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

from . import analytic
from .config import load_config, quadrature_spec
from .ddim import CircularStateD, lmc_circular_analytic, lmc_circular_numeric
from .hydrogenic import BoundState, DivergenceError
from .kleingordon import PionicState, kg_fisher_shannon, schrodinger_fisher_shannon
from .measures import (
    MeasureReport,
    QuadratureSpec,
    cramer_rao_complexity,
    disequilibrium,
    entropic_moment,
    entropy_power,
    fisher_information,
    fisher_shannon_complexity,
    lmc_complexity,
    radial_moment,
    renyi_entropy,
    shannon_entropy,
    variance,
)
from .specfun import NumericalError

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3

# measure name -> parameter it takes (None for plain names)
MEASURES = {
    "r": "k",
    "v": None,
    "f": None,
    "s": None,
    "w": "q",
    "d": None,
    "renyi": "q",
    "j": None,
    "clmc": None,
    "cfs": None,
    "ccr": None,
}
DDIM_MEASURES = {"clmc"}

FIGURE_COLUMNS = {
    "fig1": ("n", "c_fs"),
    "fig2": ("Z", "c_fs_kg", "c_fs_schrodinger"),
    "fig3": ("n", "D", "c_lmc"),
}


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class MeasureSpec:
    name: str
    param: float | None = None

    @property
    def label(self) -> str:
        key = MEASURES[self.name]
        return self.name if key is None else f"{self.name}:{key}={_fmt_param(self.param)}"


def _fmt_param(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def parse_measures(text: str) -> list[MeasureSpec]:
    """Parse ``"cfs,w:q=2,r:k=-1"`` into measure specs; unknown names are rejected."""
    out = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        name, _, arg = token.partition(":")
        if name not in MEASURES:
            raise InvalidInput(f"unknown measure {name!r}; choose from {', '.join(MEASURES)}")
        key = MEASURES[name]
        if key is None:
            if arg:
                raise InvalidInput(f"measure {name!r} takes no parameter")
            out.append(MeasureSpec(name))
            continue
        k, _, v = arg.partition("=")
        if k != key or not v:
            raise InvalidInput(f"measure {name!r} needs a parameter written {name}:{key}=<value>")
        try:
            val = float(v)
        except ValueError:
            raise InvalidInput(f"{name}:{key} must be a number, got {v!r}") from None
        if not math.isfinite(val):
            raise InvalidInput(f"{name}:{key} must be finite")
        if name in ("w", "renyi") and val <= 0:
            raise InvalidInput(f"{name}:q must satisfy q > 0")
        if name == "renyi" and val == 1:
            raise InvalidInput("renyi:q must satisfy q ≠ 1 (q = 1 is the Shannon entropy, measure s)")
        out.append(MeasureSpec(name, val))
    if not out:
        raise InvalidInput("no measures requested")
    return out


@dataclass
class RunConfig:
    """Everything a ``measure`` run needs, validated before any computation."""

    system: str
    n: int
    l: int = 0
    m: int = 0
    Z: float = 1.0
    dim: int | None = None
    alpha: float | None = None
    kg_density: str = "charge"
    measures: list[MeasureSpec] = field(default_factory=list)
    spec: QuadratureSpec = field(default_factory=QuadratureSpec)

    def state(self) -> dict:
        d = {"system": self.system, "n": self.n, "Z": self.Z}
        if self.system == "ddim":
            d.update(D=self.dim, l=self.n - 1, m=self.n - 1)
        else:
            d.update(l=self.l, m=self.m)
        if self.system == "kleingordon":
            d.update(alpha=self.alpha, density=self.kg_density)
        return d


# ---------------------------------------------------------------------------
# measure


def _hydrogenic_analytic(ms: MeasureSpec, n: int, l: int, m: int, Z: float):
    ground = n == 1
    if ms.name == "r":
        return analytic.moment_analytic(n, l, int(ms.param), Z) if float(ms.param).is_integer() else None
    if ms.name == "v":
        return analytic.variance_analytic(n, l, Z).value
    if ms.name == "f":
        return analytic.fisher_analytic(n, m, Z).value
    if ms.name == "ccr":
        return analytic.cramer_rao_analytic(n, l, m).value
    if not ground:
        return None
    s0 = analytic.shannon_ground(Z)
    return {
        "s": lambda: s0,
        "w": lambda: analytic.entropic_moment_ground(ms.param, Z),
        "d": lambda: analytic.entropic_moment_ground(2.0, Z),
        "renyi": lambda: math.log(analytic.entropic_moment_ground(ms.param, Z)) / (1.0 - ms.param),
        "j": lambda: entropy_power(s0),
        "clmc": lambda: analytic.ground_state_constants()["c_lmc"],
        "cfs": lambda: analytic.ground_state_constants()["c_fs"],
    }[ms.name]()


def _numeric(ms: MeasureSpec, rho, spec: QuadratureSpec) -> float:
    return {
        "r": lambda: radial_moment(rho, ms.param, spec),
        "v": lambda: variance(rho, spec),
        "f": lambda: fisher_information(rho, spec),
        "s": lambda: shannon_entropy(rho, spec),
        "w": lambda: entropic_moment(rho, ms.param, spec),
        "d": lambda: disequilibrium(rho, spec),
        "renyi": lambda: renyi_entropy(rho, ms.param, spec),
        "j": lambda: entropy_power(rho, spec),
        "clmc": lambda: lmc_complexity(rho, spec),
        "cfs": lambda: fisher_shannon_complexity(rho, spec),
        "ccr": lambda: cramer_rao_complexity(rho, spec),
    }[ms.name]()


def validate(cfg: RunConfig):
    """Build the physical state; raises ValueError naming the violated constraint."""
    if cfg.system == "ddim":
        if cfg.l != cfg.n - 1 or cfg.m != cfg.n - 1:
            raise InvalidInput("D-dimensional states are circular: l and m must equal n−1")
        bad = [ms.label for ms in cfg.measures if ms.name not in DDIM_MEASURES]
        if bad:
            raise InvalidInput(f"D-dimensional circular states support only {sorted(DDIM_MEASURES)}; got {bad}")
        return CircularStateD(cfg.n, cfg.dim, cfg.Z)
    if cfg.system == "kleingordon":
        if cfg.kg_density not in ("charge", "probability"):
            raise InvalidInput("kg density must be 'charge' or 'probability'")
        return PionicState(cfg.n, cfg.l, cfg.m, cfg.Z, cfg.alpha)
    return BoundState(cfg.n, cfg.l, cfg.m, cfg.Z)


def run_measure(cfg: RunConfig) -> MeasureReport:
    state = validate(cfg)
    report = MeasureReport(cfg.state())
    if cfg.system == "ddim":
        report.add("clmc", lmc_circular_numeric(state), lmc_circular_analytic(state.n, state.D))
        return report
    if cfg.system == "kleingordon":
        rho = state.charge() if cfg.kg_density == "charge" else state.probability()
        for ms in cfg.measures:
            report.add(ms.label, _numeric(ms, rho, cfg.spec))
        return report
    rho = state.density
    for ms in cfg.measures:
        report.add(ms.label, _numeric(ms, rho, cfg.spec), _hydrogenic_analytic(ms, cfg.n, cfg.l, cfg.m, cfg.Z))
    return report


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def report_to_json(report: MeasureReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def report_to_csv(report: MeasureReport) -> str:
    cols = ("name", "numeric", "analytic", "abs_dev", "rel_dev")
    return to_csv(cols, ([getattr(r, c) for c in cols] for r in report.records))


# ---------------------------------------------------------------------------
# figure


def _fig1_point(n: int, spec: QuadratureSpec):
    return (n, fisher_shannon_complexity(BoundState(n, n - 1, n - 1).density, spec))


def _fig2_point(Z: float, alpha: float, density: str, spec: QuadratureSpec):
    return (Z, kg_fisher_shannon(Z, alpha=alpha, density=density, spec=spec), schrodinger_fisher_shannon(Z, spec=spec))


def _fig3_point(nd: tuple[int, int]):
    n, D = nd
    return (n, D, lmc_circular_analytic(n, D))


def _map(fn, items, jobs: int):
    # executor.map preserves order, so parallel runs produce the same bytes
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def figure_rows(fig: str, fcfg: dict, spec: QuadratureSpec, alpha: float, jobs: int = 1) -> list[tuple]:
    """Validate the figure ranges, then compute the rows in a fixed order."""
    if fig == "fig1":
        n_max = int(fcfg["n_max"])
        if n_max < 1:
            raise InvalidInput("n_max must satisfy n_max ≥ 1")
        return _map(partial(_fig1_point, spec=spec), list(range(1, n_max + 1)), jobs)
    if fig == "fig2":
        zs = [float(z) for z in fcfg["z_values"]]
        density = fcfg.get("kg_density", "charge")
        if density not in ("charge", "probability"):
            raise InvalidInput("kg density must be 'charge' or 'probability'")
        for Z in zs:
            PionicState(1, 0, 0, Z, alpha)  # rejects Z alpha >= 1/2 before any quadrature
        return _map(partial(_fig2_point, alpha=alpha, density=density, spec=spec), zs, jobs)
    if fig == "fig3":
        ns = [int(n) for n in fcfg["ns"]]
        d_max = int(fcfg["d_max"])
        if d_max < 2:
            raise InvalidInput("d_max must satisfy D_max ≥ 2")
        if any(n < 1 for n in ns):
            raise InvalidInput("n must satisfy n ≥ 1")
        return _map(_fig3_point, [(n, D) for n in ns for D in range(2, d_max + 1)], jobs)
    raise InvalidInput(f"unknown figure {fig!r}")


PLOT_TEMPLATE = '''"""Plot {csv_name}; generated by qinfo figure {fig}."""
import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt

with open({csv_path!r}) as fh:
    rows = list(csv.DictReader(fh))
x, ys, group = {x!r}, {ys!r}, {group!r}
curves = defaultdict(list)
for row in rows:
    for y in ys:
        key = y if group is None else f"{{group}}={{row[group]}}"
        curves[key].append((float(row[x]), float(row[y])))
for key, pts in curves.items():
    plt.plot(*zip(*pts), marker="o", label=key)
plt.xlabel(x)
plt.ylabel(", ".join(ys))
plt.legend()
plt.savefig(sys.argv[1] if len(sys.argv) > 1 else {png!r})
'''


def plot_script(fig: str, csv_path: str) -> str:
    import os

    x, group = {"fig1": ("n", None), "fig2": ("Z", None), "fig3": ("D", "n")}[fig]
    ys = [c for c in FIGURE_COLUMNS[fig] if c not in (x, group)]
    base = os.path.splitext(os.path.basename(csv_path))[0]
    return PLOT_TEMPLATE.format(
        csv_name=os.path.basename(csv_path), fig=fig, csv_path=csv_path, x=x, ys=ys, group=group, png=base + ".png"
    )


# ---------------------------------------------------------------------------
# argument parsing


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _add_quadrature(p):
    g = p.add_argument_group("quadrature")
    g.add_argument("--nodes-radial", type=int, help="Gauss-Laguerre nodes (default from config)")
    g.add_argument("--nodes-angular", type=int, help="Gauss-Legendre nodes (default from config)")
    g.add_argument("--tol", type=float, help="adaptive quadrature tolerance")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qinfo", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON defaults file (overrides $QINFO_CONFIG)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("measure", help="measures of one state")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--l", type=int, default=None)
    m.add_argument("--m", type=int, default=None)
    m.add_argument("--Z", type=float, default=1.0)
    m.add_argument("--dim", type=int, help="D-dimensional circular state (l = m = n-1)")
    m.add_argument("--alpha", type=float, help="Klein-Gordon state with this coupling constant")
    m.add_argument("--kg", action="store_true", help="Klein-Gordon state with the configured alpha")
    m.add_argument("--kg-density", choices=("charge", "probability"), default="charge")
    m.add_argument("--measures", help="comma list, e.g. cfs,clmc,w:q=2,r:k=-1 (default from config)")
    m.add_argument("--format", choices=("json", "csv"), default="json")
    m.add_argument("--out", help="output file (default stdout)")
    _add_quadrature(m)

    f = sub.add_parser("figure", help="figure data as CSV")
    f.add_argument("figure", choices=tuple(FIGURE_COLUMNS))
    f.add_argument("--n-max", type=int, help="fig1: largest n")
    f.add_argument("--z-values", type=_float_list, help="fig2: comma list of Z")
    f.add_argument("--alpha", type=float, help="fig2: coupling constant")
    f.add_argument("--kg-density", choices=("charge", "probability"), help="fig2: KG density")
    f.add_argument("--ns", type=_int_list, help="fig3: comma list of n")
    f.add_argument("--d-max", type=int, help="fig3: largest D")
    f.add_argument("--jobs", type=int, default=1, help="worker processes for the scan")
    f.add_argument("--out", help="output CSV (default stdout)")
    f.add_argument("--plot-script", help="also write a matplotlib script for the CSV here (needs --out)")
    _add_quadrature(f)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("level", nargs="?", choices=("fast", "full"), default="fast")
    return p


def _spec(cfg: dict, args) -> QuadratureSpec:
    return quadrature_spec(cfg, radial_nodes=args.nodes_radial, angular_nodes=args.nodes_angular, tol=args.tol)


def _cmd_measure(args, cfg: dict) -> int:
    system = "hydrogenic"
    if args.dim is not None:
        system = "ddim"
    if args.alpha is not None or args.kg:
        if system == "ddim":
            raise InvalidInput("choose either --dim or a Klein-Gordon state, not both")
        system = "kleingordon"
    default_lm = args.n - 1 if system == "ddim" else 0
    rc = RunConfig(
        system=system,
        n=args.n,
        l=default_lm if args.l is None else args.l,
        m=default_lm if args.m is None else args.m,
        Z=args.Z,
        dim=args.dim,
        alpha=args.alpha if args.alpha is not None else (cfg["alpha"] if system == "kleingordon" else None),
        kg_density=args.kg_density,
        measures=parse_measures(args.measures or ",".join(cfg["measures"] if system != "ddim" else DDIM_MEASURES)),
        spec=_spec(cfg, args),
    )
    report = run_measure(rc)
    _write(report_to_json(report) if args.format == "json" else report_to_csv(report), args.out)
    return EXIT_OK


def _cmd_figure(args, cfg: dict) -> int:
    fcfg = dict(cfg[args.figure])
    overrides = {"n_max": args.n_max, "z_values": args.z_values, "kg_density": args.kg_density, "ns": args.ns, "d_max": args.d_max}
    fcfg.update({k: v for k, v in overrides.items() if v is not None})
    if args.plot_script and not args.out:
        raise InvalidInput("--plot-script needs --out so the script can find the CSV")
    if args.jobs < 1:
        raise InvalidInput("--jobs must satisfy jobs ≥ 1")
    alpha = args.alpha if args.alpha is not None else cfg["alpha"]
    rows = figure_rows(args.figure, fcfg, _spec(cfg, args), alpha, args.jobs)
    _write(to_csv(FIGURE_COLUMNS[args.figure], rows), args.out)
    if args.plot_script:
        _write(plot_script(args.figure, args.out), args.plot_script)
    return EXIT_OK


def _cmd_verify(args, cfg: dict) -> int:
    from .verify import format_table, run_checks

    checks = run_checks(args.level)
    print(format_table(checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        handler = {"measure": _cmd_measure, "figure": _cmd_figure, "verify": _cmd_verify}[args.command]
        return handler(args, cfg)
    except (DivergenceError, NumericalError) as exc:
        print(f"qinfo: numerical failure: {exc}", file=sys.stderr)
        if args.command == "figure" and args.figure == "fig2" and isinstance(exc, DivergenceError):
            print("qinfo: hint: --kg-density probability gives a finite Fisher information", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"qinfo: error: {msg}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
