#!/usr/bin/env python3
"""
Density Command
Handles: |psi(x)|^2 on the (z, x) grid for heat-map plotting
"""

import logging
from typing import Any, Dict, List

from models import RunConfig
from observables import density_fwhm, position_density
from schema import DENSITY_COLUMNS
from states import build_state

logger = logging.getLogger(__name__)


class DensityCommand:
    """
    Position densities of every model, one slice per z
    """

    COLUMNS = DENSITY_COLUMNS

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.reset()

    def reset(self):
        """Reset per-run tracking"""
        self.slices = 0
        self.widths = {}

    def build_rows(self) -> List[Dict[str, Any]]:
        """
        Build one row per (model, z, x), model-major then z then x

        Returns:
            Rows keyed by DENSITY_COLUMNS
        """
        cfg = self.cfg
        x_grid = cfg.x_grid
        rows = []
        for model in cfg.models:
            for z in cfg.z_grid:
                state = build_state(float(z), cfg.gamma, model, cfg.levels)
                density = position_density(state, x_grid)
                self.slices += 1
                try:
                    self.widths[f"fwhm_{model.label}_z{float(z):g}"] = density_fwhm(state, x_grid)
                except ValueError as e:
                    logger.warning(f"⚠️ no FWHM for {model.label} at z={float(z):g}: {e}")
                rows.extend(
                    {"model": model.label, "A": model.A, "B": model.B, "z": float(z), "x": float(x), "density": float(d)}
                    for x, d in zip(x_grid, density)
                )
        logger.debug(f"Built {len(rows)} density rows over {self.slices} slices")
        return rows

    def metadata(self) -> Dict[str, Any]:
        """Full width at half maximum of each slice"""
        return dict(self.widths)

    def get_stats(self) -> Dict[str, int]:
        return {
            "slices": self.slices
        }
