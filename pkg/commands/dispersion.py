#!/usr/bin/env python3
"""
Dispersion Command
Handles: quadrature variances of every model over the z grid
"""

import logging
from typing import Any, Dict, List

from models import RunConfig
from observables import quadrature_report
from schema import DISPERSION_COLUMNS
from states import build_state

logger = logging.getLogger(__name__)


class DispersionCommand:
    """
    (dx)^2, (dp)^2 and their product for coherent (gamma = 0) or squeezed inputs
    """

    COLUMNS = DISPERSION_COLUMNS

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.reset()

    def reset(self):
        """Reset counters for a new run"""
        self.points = 0
        self.unconverged = 0
        self.min_product = float("inf")

    def build_rows(self) -> List[Dict[str, Any]]:
        """
        Build one row per (model, z)

        Returns:
            Rows keyed by DISPERSION_COLUMNS
        """
        cfg = self.cfg
        rows = []
        for model in cfg.models:
            for z in cfg.z_grid:
                state = build_state(float(z), cfg.gamma, model, cfg.levels)
                report = quadrature_report(state, cfg.convention)
                self.points += 1
                self.unconverged += 0 if state.converged else 1
                self.min_product = min(self.min_product, report.product)
                rows.append({
                    "model": model.label,
                    "A": model.A,
                    "B": model.B,
                    "z": float(z),
                    "var_x": report.var_x,
                    "var_p": report.var_p,
                    "product": report.product,
                    "convention": cfg.convention.value,
                })

        floor = cfg.convention.minimal_product
        if self.min_product < floor - 1e-9:
            logger.warning(f"⚠️ dispersion product {self.min_product:.6g} below the uncertainty floor {floor:g}")
        logger.debug(f"Built {len(rows)} dispersion rows")
        return rows

    def metadata(self) -> Dict[str, Any]:
        return {"uncertainty_floor": self.cfg.convention.minimal_product}

    def get_stats(self) -> Dict[str, int]:
        """Get statistics about the evaluated points"""
        return {
            "points": self.points,
            "unconverged": self.unconverged
        }
