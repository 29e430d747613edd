"""Write the three figure CSVs (and plotting scripts) into an output directory."""
import argparse
import sys
from pathlib import Path

from qinfo.cli import main


def run(out_dir: Path, kg_density: str, jobs: int) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    status = 0
    for fig in ("fig1", "fig2", "fig3"):
        argv = ["figure", fig, "--out", str(out_dir / f"{fig}.csv"), "--plot-script", str(out_dir / f"plot_{fig}.py"), "--jobs", str(jobs)]
        if fig == "fig2":
            argv += ["--kg-density", kg_density]
        code = main(argv)
        print(f"{fig}: exit {code}")
        status = max(status, code)
    return status


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out-dir", type=Path, default=Path("results"))
    p.add_argument("--kg-density", choices=("charge", "probability"), default="probability",
                   help="fig2 density; the l = 0 charge density has divergent Fisher information")
    p.add_argument("--jobs", type=int, default=1)
    a = p.parse_args()
    sys.exit(run(a.out_dir, a.kg_density, a.jobs))
