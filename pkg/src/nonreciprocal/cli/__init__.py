from .config import RunConfig, load_config, network_from_dict, network_to_dict, parse_config
from .main import main, run

__all__ = ["RunConfig", "load_config", "main", "network_from_dict", "network_to_dict",
           "parse_config", "run"]
