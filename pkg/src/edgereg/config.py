"""Desk-scale budgets and thread configuration.

Only ``EDGEREG_THREADS`` and ``EDGEREG_BUDGET_<NAME>`` environment variables are
read; explicit arguments always win over the environment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import BudgetExceeded


@dataclass(frozen=True)
class Budgets:
    vertices: int = 32            # exhaustive graph searches
    iso_vertices: int = 10        # brute-force canonical forms
    vwc_h: int = 4                # generate_vwc_family
    power_terms: int = 100_000    # raw products before minimalization
    polarized_vars: int = 24      # Hochster path
    lcm_gens: int = 24            # lcm-lattice path
    homology_vertices: int = 64   # reduced_homology_ranks on explicit complexes
    matrix_entries: int = 40_000_000

    def check(self, name: str, actual: int) -> None:
        limit = getattr(self, name)
        if actual > limit:
            raise BudgetExceeded(name, limit, actual)

    def with_env(self, environ=None) -> "Budgets":
        environ = os.environ if environ is None else environ
        updates = {}
        for f in fields(self):
            key = f"EDGEREG_BUDGET_{f.name.upper()}"
            if key in environ:
                updates[f.name] = int(environ[key])
        return replace(self, **updates)


DEFAULT_BUDGETS = Budgets()

_active = DEFAULT_BUDGETS.with_env()


def budgets() -> Budgets:
    return _active


def set_budgets(b: Budgets) -> Budgets:
    """Install ``b`` globally and return the previous value."""
    global _active
    old, _active = _active, b
    return old


_threads_override: int | None = None


def set_threads(n: int | None) -> None:
    """Process-wide worker count; ``None`` falls back to ``EDGEREG_THREADS``."""
    global _threads_override
    _threads_override = None if n is None else max(1, int(n))


def threads(explicit: int | None = None) -> int:
    if explicit is not None:
        return max(1, explicit)
    if _threads_override is not None:
        return _threads_override
    try:
        return max(1, int(os.environ.get("EDGEREG_THREADS", "1")))
    except ValueError:
        return 1
