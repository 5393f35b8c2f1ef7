"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py --ids A1,A7 --json out.json
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from _config import parse_config  # noqa: E402

from superhyp.acceptance import ACCEPTANCE


@dataclass
class Config:
    ids: tuple = tuple(ACCEPTANCE)
    json: str = ""


def main(cfg: Config) -> int:
    results = []
    for cid in cfg.ids:
        crit = ACCEPTANCE[cid]()
        print(crit.line(), flush=True)
        results.append(crit)
    if cfg.json:
        Path(cfg.json).write_text(json.dumps([c.to_dict() for c in results], indent=2) + "\n")
    return 0 if all(c.passed for c in results) else 1


if __name__ == "__main__":
    sys.exit(main(parse_config(Config, __doc__)))
