"""
Built-in default configuration for tdcsp.
"""

from ..config import CampaignConfig, CapsConfig, Config


def get_default_config() -> Config:
    """Get the built-in default configuration."""
    return Config(
        version=1,
        caps=CapsConfig(),
        campaign=CampaignConfig(rule="w3hard", trials=100, seed=0),
    )
