"""Compare the routes to J(1)(t): jet closed form, residue sum, half-integral
closed form, and the direct spectral integral of the Plancherel density.

    python3 scripts/j_one_routes.py --rhos -1/2,-1,-3/2 --ts 0.5,1,2
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from _config import parse_config  # noqa: E402

import numpy as np

from superhyp import transforms as tr
from superhyp.spherical import as_rho


@dataclass
class Config:
    rhos: tuple = ("-1/2", "-1", "-3/2", "-2", "-5/2")
    ts: tuple = ("0.5", "1", "2")
    spectral: bool = True


def main(cfg: Config):
    one = lambda lam: np.ones(np.shape(lam))
    print(f"{'rho':>5} {'t':>4} {'jet':>16} {'residue-jet':>12} {'halfint-jet':>12} {'spectral rel':>13}")
    for r in cfg.rhos:
        rho = as_rho(r)
        for ts in cfg.ts:
            t = float(ts)
            jet = float(tr.j_one(rho, t))
            res = float(tr.j_one(rho, t, "residue"))
            half = float(tr.j_one(rho, t, "halfint")) if not rho.is_integral else float("nan")
            line = f"{r:>5} {t:4g} {jet:16.10f} {abs(res - jet):12.2e} {abs(half - jet):12.2e}"
            if cfg.spectral:
                sp = tr.wave_packet(rho, one, t).value
                line += f" {abs(sp - jet) / abs(jet):13.2e}"
            print(line)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
