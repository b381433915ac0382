from celine.appeal.imagery.panorama import (
    LuminosityRecord,
    Panorama,
    PanoramaFile,
    compose_panorama,
    green_fraction,
    mean_luminosity,
    pixel_luminosity,
)
from celine.appeal.imagery.io import luminosity_table, read_luminosity_csv, write_luminosity_csv
from celine.appeal.imagery.sources import (
    LocalTileSource,
    PanoramaBuildResult,
    RemoteTileSource,
    TileSource,
    build_panoramas,
    discover_panoramas,
)
from celine.appeal.imagery.tiles import FOV, HEADINGS, PITCH, TILE_SIZE, TileSpec, tile_requests

__all__ = [
    "FOV",
    "HEADINGS",
    "PITCH",
    "TILE_SIZE",
    "TileSpec",
    "tile_requests",
    "LuminosityRecord",
    "Panorama",
    "PanoramaFile",
    "compose_panorama",
    "green_fraction",
    "mean_luminosity",
    "pixel_luminosity",
    "luminosity_table",
    "read_luminosity_csv",
    "write_luminosity_csv",
    "LocalTileSource",
    "PanoramaBuildResult",
    "RemoteTileSource",
    "TileSource",
    "build_panoramas",
    "discover_panoramas",
]
