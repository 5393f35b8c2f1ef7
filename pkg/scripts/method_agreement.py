"""Agreement matrix of the three spherical-function evaluators on t in [0.5, 3].

    python3 scripts/method_agreement.py --rhos -2,-3/2,0,1/2,2
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from _config import parse_config  # noqa: E402

import numpy as np

from superhyp.spherical import PFAFF_MARGIN, EvalMethod, MethodRangeError, phi


@dataclass
class Config:
    rhos: tuple = ("-2", "-3/2", "-1", "-1/2", "0", "1/2", "1", "2")
    lams: tuple = ("0.7", "1.3j", "2.1+0.4j")
    points: int = 11


def _rel(a, b):
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def main(cfg: Config):
    t = np.linspace(0.5, 3.0, cfg.points)
    pf = np.tanh(t) ** 2 <= 1 - PFAFF_MARGIN
    print(f"{'rho':>5} {'lambda':>10} {'rec vs hc':>10} {'pfaff vs hc':>12}")
    for r in cfg.rhos:
        for ls in cfg.lams:
            lam = complex(ls)
            hc = np.asarray(phi(r, lam, t, EvalMethod.HC))
            try:
                rec = f"{_rel(np.asarray(phi(r, lam, t, EvalMethod.RECURSION)), hc):10.2e}"
            except MethodRangeError:
                rec = f"{'n/a':>10}"
            p = _rel(np.asarray(phi(r, lam, t[pf], EvalMethod.PFAFF)), hc[pf])
            print(f"{r:>5} {ls:>10} {rec} {p:12.2e}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
