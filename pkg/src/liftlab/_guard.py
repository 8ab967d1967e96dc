from __future__ import annotations

import os
import sys

from .errors import GuardExceeded

ENV_OVERRIDE = "LIFTLAB_GUARD_OVERRIDE"


def overridden(force: bool = False) -> bool:
    return force or os.environ.get(ENV_OVERRIDE) == "1"


def check(what: str, cost: int, limit: int, force: bool = False) -> None:
    """Raise GuardExceeded when ``cost`` exceeds ``limit`` unless overridden.

    An override prints the cost estimate to stderr before proceeding.
    """
    if cost <= limit:
        return
    if overridden(force):
        print(f"liftlab: guard override for {what}: estimated cost {cost} (limit {limit})",
              file=sys.stderr)
        return
    raise GuardExceeded(f"{what}: estimated cost {cost} exceeds limit {limit}")
