"""
Version information for the rainbow matching toolkit.

The package version is read from pyproject.toml via importlib.metadata,
falling back to parsing pyproject.toml directly in a source checkout.
"""

try:
    from importlib.metadata import version

    __version__ = version("rainbow-matching-toolkit")
except Exception:
    # Source checkout without an installed distribution
    import tomllib
    from pathlib import Path

    try:
        pyproject_path = Path(__file__).parent.parent / "pyproject.toml"
        with open(pyproject_path, "rb") as f:
            __version__ = tomllib.load(f)["project"]["version"]
    except Exception:
        __version__ = "0.0.0-dev"

# Version of the instance, solution and certificate text formats
__format_version__ = "1"
