"""Inversion at the origin across rho, with timing and kernel counts.

    python3 scripts/inversion_sweep.py --rhos 1,1/2,0,-1/2,-1 --s-max 80
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from _config import parse_config  # noqa: E402

from superhyp import transforms as tr
from superhyp.profiles import parse_profile
from superhyp.quadrature import QuadratureSpec


@dataclass
class Config:
    rhos: tuple = ("5/2", "2", "3/2", "1", "1/2", "0", "-1/2", "-1", "-3/2", "-2")
    profile: str = "bump:0.64:1"
    s_max: float = 80.0


def main(cfg: Config):
    f = parse_profile(cfg.profile)
    quad = QuadratureSpec(s_max=cfg.s_max)
    print(f"{'rho':>5} {'lhs':>14} {'rhs':>14} {'rel_err':>10} {'kernels':>9} {'time':>7}")
    for r in cfg.rhos:
        t0 = time.perf_counter()
        rep = tr.invert_at_origin(r, f, quad)
        dt = time.perf_counter() - t0
        n = rep.diagnostics.get("kernel_evaluations", 0)
        print(f"{r:>5} {rep.lhs:14.8f} {rep.rhs:14.8f} {rep.rel_err:10.2e} {n:9d} {dt:6.2f}s")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
