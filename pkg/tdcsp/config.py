"""Configuration Management for tdcsp This module holds the resource caps guarding every exact procedure and the defaults of verification campaigns."""

from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, Optional

import yaml


@dataclass
class CapsConfig:
    """Resource caps for exhaustive procedures."""

    max_vertices: int = 20
    max_assignments: int = 10**10
    max_subsets: int = 2_000_000
    max_search_nodes: int = 5_000_000
    max_families: int = 200_000
    max_configurations: int = 5_000
    max_block_steps: int = 10_000
    max_enum_leaves: int = 5
    max_enum_depth: int = 4


@dataclass
class CampaignConfig:
    """Verification campaign settings."""

    rule: str = "w3hard"
    trials: int = 100
    seed: int = 0
    max_n: int = 6
    max_dom: int = 3
    max_d: int = 2
    max_k: int = 3
    out_dir: Optional[str] = None


@dataclass
class Config:
    """Main configuration."""

    version: int = 1
    caps: CapsConfig = field(default_factory=CapsConfig)
    campaign: CampaignConfig = field(default_factory=CampaignConfig)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Config":
        """Create Config from dictionary."""
        config = cls()

        if "version" in data:
            config.version = data["version"]

        if "caps" in data and data["caps"]:
            known = {f.name for f in fields(CapsConfig)}
            unknown = set(data["caps"]) - known
            if unknown:
                raise ValueError(f"Unknown caps: {sorted(unknown)}")
            config.caps = CapsConfig(**data["caps"])

        if "campaign" in data and data["campaign"]:
            known = {f.name for f in fields(CampaignConfig)}
            unknown = set(data["campaign"]) - known
            if unknown:
                raise ValueError(f"Unknown campaign fields: {sorted(unknown)}")
            config.campaign = CampaignConfig(**data["campaign"])

        return config

    def to_dict(self) -> Dict[str, Any]:
        """Convert Config to dictionary."""
        return {
            "version": self.version,
            "caps": asdict(self.caps),
            "campaign": asdict(self.campaign),
        }


def validate_caps(caps: CapsConfig) -> None:
    """Check every cap is a positive integer. Raises: ValueError naming the first bad field"""
    for f in fields(CapsConfig):
        value = getattr(caps, f.name)
        if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
            raise ValueError(f"caps.{f.name} must be a positive integer, got {value!r}")


def validate_campaign(campaign: CampaignConfig) -> None:
    """
    Validate campaign settings.

    Args:
        campaign: CampaignConfig to check

    Raises:
        ValueError: If a size cap is not positive, the trial count is negative,
            or the rule is not registered
    """
    for name in ("max_n", "max_dom", "max_d", "max_k"):
        value = getattr(campaign, name)
        if not isinstance(value, int) or value <= 0:
            raise ValueError(f"campaign.{name} must be a positive integer, got {value!r}")

    if not isinstance(campaign.trials, int) or campaign.trials < 0:
        raise ValueError(f"campaign.trials must be >= 0, got {campaign.trials!r}")

    from .registry.rules import list_rules

    if campaign.rule not in list_rules():
        raise ValueError(
            f"Unknown rule '{campaign.rule}'. Available: {', '.join(list_rules())}"
        )


def validate_config(config: Config) -> None:
    """Validate configuration object. Args: config: Config object to validate Raises: ValueError: If configuration is invalid"""
    if config.version != 1:
        raise ValueError(f"Unsupported configuration version: {config.version}")

    validate_caps(config.caps)
    validate_campaign(config.campaign)


def load_config_from_file(path: str) -> Config:
    """Load configuration from YAML file. Args: path: Path to YAML file Returns: Config object"""
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)

    if data is None:
        raise ValueError(f"Failed to parse YAML file: {path}")

    return Config.from_dict(data)


def save_config_to_file(config: Config, path: str) -> None:
    """Save configuration to YAML file. Args: config: Config object path: Path to save file"""
    data = config.to_dict()

    with open(path, "w", encoding="utf-8") as f:
        yaml.dump(data, f, default_flow_style=False, sort_keys=False)


# Global state
_current_config: Optional[Config] = None


def load_config(path: Optional[str] = None) -> Config:
    """
    Load configuration from YAML file or use defaults.

    Args:
        path: Path to YAML config file. If None, uses built-in defaults.

    Returns:
        Config object, also installed as the active configuration
    """
    global _current_config

    if path is None:
        from .data.defaults import get_default_config

        config = get_default_config()
    else:
        config = load_config_from_file(path)

    validate_config(config)
    _current_config = config
    return config


def get_config() -> Config:
    """Return the active configuration, loading built-in defaults on first use."""
    if _current_config is None:
        return load_config()
    return _current_config


def get_caps(caps: Optional[CapsConfig] = None) -> CapsConfig:
    """Return ``caps`` if given, else the caps of the active configuration."""
    if caps is not None:
        return caps
    return get_config().caps
