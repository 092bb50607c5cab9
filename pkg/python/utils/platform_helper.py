"""
Platform detection and path utilities for cross-platform compatibility

Resolves where modkernel keeps its user configuration, log file and cache
on each platform.
"""
import os
import platform
import sys
from pathlib import Path
import logging

logger = logging.getLogger(__name__)

APP_DIR_NAME = "modkernel"


class PlatformHelper:
    """Platform detection and path resolution utilities"""

    @staticmethod
    def is_windows() -> bool:
        return platform.system() == "Windows"

    @staticmethod
    def is_linux() -> bool:
        return platform.system() == "Linux"

    @staticmethod
    def is_macos() -> bool:
        return platform.system() == "Darwin"

    @staticmethod
    def get_platform_name() -> str:
        """Get human-readable platform name"""
        system = platform.system()
        if system == "Darwin":
            return "macOS"
        return system

    @staticmethod
    def get_config_dir() -> Path:
        r"""
        Get appropriate configuration directory for current platform

        Follows platform conventions:
        - Windows: %USERPROFILE%\.modkernel
        - Linux: $XDG_CONFIG_HOME/modkernel or ~/.config/modkernel
        - macOS: ~/Library/Application Support/modkernel
        """
        if PlatformHelper.is_windows():
            return Path.home() / f".{APP_DIR_NAME}"
        elif PlatformHelper.is_linux():
            xdg_config = os.environ.get("XDG_CONFIG_HOME")
            if xdg_config:
                return Path(xdg_config) / APP_DIR_NAME
            return Path.home() / ".config" / APP_DIR_NAME
        elif PlatformHelper.is_macos():
            return Path.home() / "Library" / "Application Support" / APP_DIR_NAME
        else:
            return Path.home() / f".{APP_DIR_NAME}"

    @staticmethod
    def get_config_file() -> Path:
        return PlatformHelper.get_config_dir() / "config.json"

    @staticmethod
    def get_log_dir() -> Path:
        return PlatformHelper.get_config_dir() / "logs"

    @staticmethod
    def get_cache_dir() -> Path:
        """
        Linux honours $XDG_CACHE_HOME, macOS uses ~/Library/Caches,
        everything else nests the cache under the config directory.
        """
        if PlatformHelper.is_linux():
            xdg_cache = os.environ.get("XDG_CACHE_HOME")
            if xdg_cache:
                return Path(xdg_cache) / APP_DIR_NAME
            return Path.home() / ".cache" / APP_DIR_NAME
        elif PlatformHelper.is_macos():
            return Path.home() / "Library" / "Caches" / APP_DIR_NAME
        return PlatformHelper.get_config_dir() / "cache"

    @staticmethod
    def ensure_directories() -> None:
        """Create all necessary directories if they don't exist"""
        for directory in (
            PlatformHelper.get_config_dir(),
            PlatformHelper.get_log_dir(),
            PlatformHelper.get_cache_dir(),
        ):
            directory.mkdir(parents=True, exist_ok=True)
            logger.debug(f"Ensured directory exists: {directory}")


def detect_platform() -> dict:
    """Platform and path summary, printed by ``modkernel_interface.py --platform-info``"""
    return {
        "system": platform.system(),
        "platform": PlatformHelper.get_platform_name(),
        "is_windows": PlatformHelper.is_windows(),
        "is_linux": PlatformHelper.is_linux(),
        "is_macos": PlatformHelper.is_macos(),
        "python_version": f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}",
        "python_executable": sys.executable,
        "config_dir": str(PlatformHelper.get_config_dir()),
        "config_file": str(PlatformHelper.get_config_file()),
        "log_dir": str(PlatformHelper.get_log_dir()),
        "cache_dir": str(PlatformHelper.get_cache_dir()),
    }
