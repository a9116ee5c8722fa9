"""Lab configuration: packaged defaults with an optional user file merged on top."""

from pathlib import Path

from omegaconf import OmegaConf

DEFAULT_CONFIG = Path(__file__).resolve().parent.parent.parent / "configs" / "lab_config.yaml"


def load_config(path=None, overrides=None):
    """Defaults from configs/lab_config.yaml, then `path`, then a dict of overrides."""
    config = OmegaConf.load(DEFAULT_CONFIG)
    if path is not None:
        config = OmegaConf.merge(config, OmegaConf.load(path))
    if overrides:
        config = OmegaConf.merge(config, OmegaConf.create(overrides))
    return config
