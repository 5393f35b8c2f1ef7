"""Dataclass configs with argparse overrides, shared by the scripts."""
from __future__ import annotations

import argparse
import dataclasses
import re
import sys


def _default(f):
    return f.default if f.default is not dataclasses.MISSING else f.default_factory()


def _bool(text) -> bool:
    return str(text).lower() in ("1", "true", "yes", "on")


def parse_config(cls, description: str, argv=None):
    """Build ``cls`` from command-line flags named after its fields.

    Tuple fields take comma separated values; values starting with '-' (such
    as '-3/2') are attached to the preceding flag.
    """
    ap = argparse.ArgumentParser(description=description,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    for f in dataclasses.fields(cls):
        d = _default(f)
        flag = f"--{f.name.replace('_', '-')}"
        if isinstance(d, (list, tuple)):
            ap.add_argument(flag, default=",".join(map(str, d)))
        elif isinstance(d, bool):
            ap.add_argument(flag, type=_bool, default=d)
        else:
            ap.add_argument(flag, type=type(d), default=d)
    args = []
    for tok in (sys.argv[1:] if argv is None else argv):
        if args and args[-1].startswith("--") and "=" not in args[-1] and re.match(r"^-[0-9.]", tok):
            args[-1] += "=" + tok
        else:
            args.append(tok)
    ns = ap.parse_args(args)
    kw = {}
    for f in dataclasses.fields(cls):
        v = getattr(ns, f.name)
        if isinstance(_default(f), (list, tuple)):
            v = tuple(x.strip() for x in str(v).split(",") if x.strip())
        kw[f.name] = v
    return cls(**kw)
