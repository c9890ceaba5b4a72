"""Budget caps and debug switches.

The defaults are module level so that library calls pick them up without
threading a config object through every signature; the CLI overrides them
from its flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

MAX_ELEMENTS = 512          # saturation cap (associative closure, tensor)
MAX_STATES = 100_000        # rewrite states per word-problem query
MAX_CANDIDATES = 2_000_000  # exhaustive map / tuple enumeration
MAX_NODES = 5_000_000       # solver search nodes

# re-validate derived structures (quotients, localizations, closures)
DEBUG_VALIDATE = os.environ.get("PRING_NO_VALIDATE", "") == ""


@dataclass
class WorkspaceConfig:
    budget_elems: int = MAX_ELEMENTS
    budget_states: int = MAX_STATES
    budget_candidates: int = MAX_CANDIDATES
    budget_nodes: int = MAX_NODES
    output_format: str = "text"
    search_paths: list[str] = field(default_factory=list)
    seed: int = 0

    def __post_init__(self):
        for name in ("budget_elems", "budget_states", "budget_candidates", "budget_nodes"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.output_format not in ("text", "doc"):
            raise ValueError("output format must be 'text' or 'doc'")

    def apply(self):
        """Install these caps as the process-wide defaults."""
        global MAX_ELEMENTS, MAX_STATES, MAX_CANDIDATES, MAX_NODES
        MAX_ELEMENTS = self.budget_elems
        MAX_STATES = self.budget_states
        MAX_CANDIDATES = self.budget_candidates
        MAX_NODES = self.budget_nodes
