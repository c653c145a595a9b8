import logging
import os

from dotenv import load_dotenv

load_dotenv()

config = None


def get_config():
    env = os.environ.get("ENV", "local")
    logging.info(f"Env: {env}")

    config_data = {
        "env": env,
        "logging_level": os.environ.get("LOGGING_LEVEL", "INFO"),
        "app_name": os.environ.get("APP_NAME", "fidel-workbench"),
        # Universe limits
        "universe_ceiling": int(os.environ.get("UNIVERSE_CEILING", 10**6)),
        "exhaustive_limit": int(os.environ.get("EXHAUSTIVE_LIMIT", 65536)),
        # Sampling
        "default_seed": int(os.environ.get("DEFAULT_SEED", 20240611)),
        "default_samples": int(os.environ.get("DEFAULT_SAMPLES", 10000)),
        # Infinity unfolding bound
        "infinity_bound": int(os.environ.get("INFINITY_BOUND", 8)),
        # Structure lookup
        "structures_dir": os.environ.get("STRUCTURES_DIR", "structures"),
    }
    return config_data


if not config:
    try:
        config = get_config()
    except Exception as e:
        logging.error(f"Error config: {e}")
        config = {}
