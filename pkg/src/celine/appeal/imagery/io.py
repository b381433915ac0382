# appeal/imagery/io.py
from __future__ import annotations

from pathlib import Path
from typing import List, Sequence

import pandas as pd

from celine.appeal.core.errors import DataValidationError
from celine.appeal.imagery.panorama import LuminosityRecord

LUMINOSITY_COLUMNS = ["point_id", "L"]


def luminosity_table(records: Sequence[LuminosityRecord]) -> pd.DataFrame:
    rows = sorted(((r.point_id, r.L) for r in records), key=lambda r: r[0])
    return pd.DataFrame(rows, columns=LUMINOSITY_COLUMNS)


def write_luminosity_csv(records: Sequence[LuminosityRecord], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    luminosity_table(records).to_csv(path, index=False, lineterminator="\n", float_format="%.6f")


def read_luminosity_csv(path: Path) -> List[LuminosityRecord]:
    df = pd.read_csv(path, dtype={"point_id": str})
    missing = set(LUMINOSITY_COLUMNS) - set(df.columns)
    if missing:
        raise DataValidationError(f"{path}: missing columns {sorted(missing)}")
    return [LuminosityRecord(point_id=row.point_id, L=float(row.L)) for row in df.itertuples()]
