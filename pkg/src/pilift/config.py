"""Size guards shared by every module.

The defaults can be overridden by the ``PILIFT_GUARD_ORDER`` environment
variable or the CLI's ``--guard-order`` flag.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, asdict


class GuardError(RuntimeError):
    """A computation was refused because it exceeds a configured size guard."""


@dataclass
class Guards:
    order: int = 10 ** 6
    classes: int = 400
    module_dimension: int = 8
    module_prime: int = 5

    def as_dict(self) -> dict:
        return asdict(self)


GUARDS = Guards(order=int(os.environ.get("PILIFT_GUARD_ORDER", 10 ** 6)))


def check_order(order: int, what: str) -> None:
    if order > GUARDS.order:
        raise GuardError(f"{what}: group order {order} exceeds guard-order {GUARDS.order}")
