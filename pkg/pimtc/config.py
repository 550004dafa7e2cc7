import logging
import os
import platform
import sys
from collections.abc import Mapping
from pathlib import Path
from typing import Final

TOOL_VERSION: Final[str] = "0.1.0"

# Slice geometry used throughout the evaluation: 64-bit slices, 32-bit indices
DEFAULT_SLICE_LENGTH: Final[int] = 64
DEFAULT_INDEX_WIDTH: Final[int] = 32

# Computational array sizes offered as --capacity-mb presets
CAPACITY_PRESETS_MB: Final[tuple[int, ...]] = (8, 16)

# Dense cubic multiply guard for the trace(A^3)/6 oracle
TRACE_ORACLE_MAX_VERTICES: Final[int] = 2048

# Largest replacement reduction of PRIORITY over LRU expected on big SNAP graphs
REPLACEMENT_REDUCTION_BAND: Final[tuple[float, float]] = (0.15, 0.45)


def get_log_dir(
    environ: Mapping[str, str] | None = None, system: str | None = None
) -> Path:
    """
    Directory for the debug log of benchmark runs. PIMTC_LOG_DIR wins;
    otherwise the platform's per-user log or state location is used.
    """
    env = os.environ if environ is None else environ
    system = system or platform.system()
    home = Path.home()

    if override := env.get("PIMTC_LOG_DIR"):
        log_dir = Path(override)
    elif system == "Darwin":
        log_dir = home / "Library" / "Logs" / "pimtc"
    elif system == "Windows":
        local = env.get("LOCALAPPDATA")
        base = Path(local) if local else home / "AppData" / "Local"
        log_dir = base / "pimtc" / "Logs"
    else:
        # Logs are state, not data, under the XDG layout
        state = env.get("XDG_STATE_HOME")
        log_dir = (Path(state) if state else home / ".local" / "state") / "pimtc"

    log_dir.mkdir(parents=True, exist_ok=True)
    return log_dir


LOG_DIR = get_log_dir()
LOG_FILE = LOG_DIR / "pimtc.log"

CONSOLE_LOG_LEVEL = os.environ.get("PIMTC_LOG_LEVEL", "INFO").upper()


def setup_logger() -> logging.Logger:
    logger = logging.getLogger("pimtc")
    logger.setLevel(logging.DEBUG)

    c_handler = logging.StreamHandler(sys.stdout)
    f_handler = logging.FileHandler(LOG_FILE)
    c_handler.setLevel(getattr(logging, CONSOLE_LOG_LEVEL, logging.INFO))
    f_handler.setLevel(logging.DEBUG)

    # Console format without timestamp
    console_format = logging.Formatter("%(name)s - %(levelname)s - %(message)s")
    # File format keeps timestamp for benchmark audits
    file_format = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    c_handler.setFormatter(console_format)
    f_handler.setFormatter(file_format)

    logger.addHandler(c_handler)
    logger.addHandler(f_handler)

    return logger


LOGGER: Final[logging.Logger] = setup_logger()
