# appeal/stats/palettes.py
from __future__ import annotations

from typing import Dict

GSTAR_PALETTE: Dict[str, str] = {
    "hot": "#d7191c",
    "cold": "#2c7bb6",
    "ns": "#000000",
}

LISA_PALETTE: Dict[str, str] = {
    "HH": "#d7191c",
    "LL": "#2c7bb6",
    "LH": "#abd9e9",
    "HL": "#fdae61",
    "NS": "#bababa",
}

LISA_DESCRIPTIONS: Dict[str, str] = {
    "HH": "high value surrounded by high values",
    "LL": "low value surrounded by low values",
    "HL": "high value surrounded by low values",
    "LH": "low value surrounded by high values",
    "NS": "not significant",
}

GSTAR_DESCRIPTIONS: Dict[str, str] = {
    "hot": "model rates higher than participants, clustered",
    "cold": "model rates lower than participants, clustered",
    "ns": "not significant",
}


def palette_metadata() -> Dict[str, Dict[str, Dict[str, str]]]:
    return {
        "gstar": {k: {"color": v, "meaning": GSTAR_DESCRIPTIONS[k]} for k, v in GSTAR_PALETTE.items()},
        "lisa": {k: {"color": v, "meaning": LISA_DESCRIPTIONS[k]} for k, v in LISA_PALETTE.items()},
    }
