#!/usr/bin/env python3
"""
Entropy Sweep Command
Handles: beam-splitter linear entropy over models x z grid
"""

import logging
from dataclasses import asdict
from typing import Any, Dict, List, Optional, Sequence

from config import SPOT_CHECK_EVERY
from entanglement import BeamSplitterConfig, SweepRow, entropy_sweep
from fock_core import HARMONIC, QUADRATIC
from models import RunConfig
from schema import ENTROPY_COLUMNS

logger = logging.getLogger(__name__)


def find_crossover(z_values: Sequence[float], lower: Sequence[float], upper: Sequence[float]) -> Optional[float]:
    """
    Smallest grid z from which `upper` stays strictly above `lower`

    Returns:
        That z, or None when `upper` never overtakes for good
    """
    crossover = None
    for z, low, high in zip(z_values, lower, upper):
        if high > low:
            if crossover is None:
                crossover = z
        else:
            crossover = None
    return crossover


class EntropySweepCommand:
    """
    Linear entropy of the reduced output mode for every (model, z)
    Partial trace by default, with series-path spot checks every SPOT_CHECK_EVERY points
    """

    COLUMNS = ENTROPY_COLUMNS

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.reset()

    def reset(self):
        """Reset sweep results"""
        self.rows: List[SweepRow] = []

    def build_rows(self) -> List[Dict[str, Any]]:
        cfg = self.cfg
        splitter = BeamSplitterConfig(cfg.theta, cfg.phi)
        self.rows = entropy_sweep(cfg.models, cfg.z_grid, cfg.gamma, splitter, levels=cfg.levels,
                                  method=cfg.method, spot_check_every=SPOT_CHECK_EVERY,
                                  max_workers=cfg.workers)
        out = []
        for row in self.rows:
            record = asdict(row)
            record["S"] = record.pop("entropy")
            out.append(record)
        return out

    def _curve(self, label: str) -> List[SweepRow]:
        return [row for row in self.rows if row.model == label]

    def metadata(self) -> Dict[str, Any]:
        """
        Quadratic vs harmonic crossover, when both curves were swept

        Records the smallest z beyond which the quadratic entropy stays above the
        harmonic one, and whether the quadratic entropy is lower at the first nonzero z.
        """
        harmonic = self._curve(HARMONIC.label)
        quadratic = self._curve(QUADRATIC.label)
        if not harmonic or not quadratic:
            return {}

        z_values = [row.z for row in harmonic]
        crossover = find_crossover(z_values, [row.entropy for row in harmonic], [row.entropy for row in quadratic])
        meta: Dict[str, Any] = {"crossover_z": crossover}
        first = next((i for i, z in enumerate(z_values) if z > 0), None)
        if first is not None:
            meta["quadratic_lower_at_small_z"] = quadratic[first].entropy < harmonic[first].entropy
        logger.info(f"Quadratic/harmonic entropy crossover at z={crossover}")
        return meta

    def get_stats(self) -> Dict[str, int]:
        """Get statistics about the sweep"""
        return {
            "points": len(self.rows),
            "unconverged": sum(1 for row in self.rows if not row.converged),
            "failed": sum(1 for row in self.rows if row.error),
            "spot_checks": sum(1 for row in self.rows if row.spot_check_drift is not None)
        }
