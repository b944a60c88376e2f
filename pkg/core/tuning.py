#!/usr/bin/env python3
"""
Tuning Loader
Reads the per-component tuning/config.yaml files
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

import yaml

logger = logging.getLogger(__name__)

COMPONENTS_DIR = Path(__file__).resolve().parent.parent / "components"


@lru_cache(maxsize=None)
def load_tuning(component: str) -> Dict[str, Any]:
    """Load tuning/config.yaml for a component"""
    path = COMPONENTS_DIR / component / "tuning" / "config.yaml"
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle) or {}
    except FileNotFoundError:
        logger.warning(f"No tuning file for {component} at {path}")
        return {}
    logger.debug(f"Loaded tuning for {component}: {sorted(data)}")
    return data
