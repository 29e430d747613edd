"""Shannon entropy of high (n, 0, 0) states against the two large-n forms."""
import math
from dataclasses import dataclass

import numpy as np

from qinfo.analytic import shannon_rydberg_ns, shannon_rydberg_ns_semiclassical
from qinfo.hydrogenic import BoundState
from qinfo.measures import shannon_entropy


@dataclass(frozen=True)
class ProbeConfig:
    ns: tuple = (30, 50, 100, 200, 400, 800)


def main(cfg: ProbeConfig = ProbeConfig()):
    rows = []
    print("n      S numeric      S - printed   S - semiclassical")
    for n in cfg.ns:
        s = shannon_entropy(BoundState(n, 0, 0).density)
        d1, d2 = s - shannon_rydberg_ns(n), s - shannon_rydberg_ns_semiclassical(n)
        rows.append((n, d2))
        print(f"{n:<6d} {s:<14.8f} {d1:<13.5f} {d2:.5f}")
    n, d = np.array(rows).T
    slope, _ = np.polyfit(np.log(n), np.log(d), 1)
    print(f"\nresidual against the semiclassical form decays like n^{slope:.3f}")
    print(f"printed form differs from it by 2 ln 2 = {2 * math.log(2):.5f}")


if __name__ == "__main__":
    main()
