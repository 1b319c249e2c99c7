"""
Configuration Module
Manages toolkit limits, budgets and catalog settings
"""
import json
import logging
import os
from typing import Any, Dict, List, Optional
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


class Config:
    """Toolkit configuration settings"""

    # Model checking
    BUDGET = int(os.getenv('SGD_BUDGET', '1000000000'))
    MEMO_QUANTIFIERS = int(os.getenv('SGD_MEMO_QUANTIFIERS', '4'))

    # Parallelism and reproducibility
    JOBS = int(os.getenv('SGD_JOBS', '1'))
    SEED = int(os.getenv('SGD_SEED', '0'))

    # Desk-scale limits
    AUT_LIMIT = int(os.getenv('SGD_AUT_LIMIT', '64'))
    AUT_LARGE_LIMIT = int(os.getenv('SGD_AUT_LARGE_LIMIT', '720'))
    SIMPLE_LIMIT = int(os.getenv('SGD_SIMPLE_LIMIT', '10000'))
    PSL_LIMIT = int(os.getenv('SGD_PSL_LIMIT', '25000'))
    HOLOMORPH_LIMIT = int(os.getenv('SGD_HOLOMORPH_LIMIT', '50000'))
    SWEEP_MAX_ORDER = int(os.getenv('SGD_SWEEP_MAX_ORDER', '400'))
    ASSOC_EXHAUSTIVE = 256
    ASSOC_SAMPLES = int(os.getenv('SGD_ASSOC_SAMPLES', '100000'))

    # Logging
    LOG_LEVEL = os.getenv('SGD_LOG_LEVEL', 'INFO')
    LOG_FILE = os.getenv('SGD_LOG_FILE', '')

    # Catalog recipes (None = default catalog)
    CATALOG: Optional[List[Dict[str, Any]]] = None

    _INT_KEYS = (
        'BUDGET', 'MEMO_QUANTIFIERS', 'JOBS', 'SEED', 'AUT_LIMIT',
        'AUT_LARGE_LIMIT', 'SIMPLE_LIMIT', 'PSL_LIMIT', 'HOLOMORPH_LIMIT',
        'SWEEP_MAX_ORDER', 'ASSOC_SAMPLES',
    )

    @classmethod
    def load_json(cls, path: str):
        """
        Apply settings from a JSON config file

        Args:
            path: Config file; keys are attribute names in lower case,
                plus "catalog" holding a catalog spec list
        """
        with open(path, 'r', encoding='utf-8') as handle:
            data = json.load(handle)

        for key, value in data.items():
            name = key.upper()
            if name == 'CATALOG':
                cls.CATALOG = list(value)
            elif name in cls._INT_KEYS:
                setattr(cls, name, int(value))
            elif name in ('LOG_LEVEL', 'LOG_FILE'):
                setattr(cls, name, str(value))
            else:
                logger.warning(f"Ignoring unknown config key {key!r}")

    @classmethod
    def apply_overrides(cls, budget: Optional[int] = None, jobs: Optional[int] = None,
                        seed: Optional[int] = None, log_level: Optional[str] = None):
        """Apply command-line overrides; SGD_BUDGET in the environment wins over --budget"""
        if budget is not None:
            cls.BUDGET = budget
        if jobs is not None:
            cls.JOBS = jobs
        if seed is not None:
            cls.SEED = seed
        if log_level is not None:
            cls.LOG_LEVEL = log_level

        env_budget = os.getenv('SGD_BUDGET')
        if env_budget:
            cls.BUDGET = int(env_budget)

    @classmethod
    def validate(cls) -> bool:
        """
        Validate configuration

        Returns:
            True if config is valid, False otherwise
        """
        errors = []

        if cls.BUDGET < 1:
            errors.append("SGD_BUDGET must be positive")

        if cls.JOBS < 1:
            errors.append("SGD_JOBS must be at least 1")

        if cls.AUT_LARGE_LIMIT < cls.AUT_LIMIT:
            errors.append("SGD_AUT_LARGE_LIMIT is below SGD_AUT_LIMIT")

        if cls.LOG_LEVEL.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            errors.append(f"Unknown log level {cls.LOG_LEVEL}")

        if errors:
            logger.error("Configuration errors:")
            for error in errors:
                logger.error(f"  - {error}")
            return False

        return True

    @classmethod
    def display(cls):
        """Display current configuration"""
        print("\n" + "="*50)
        print("DESCRIBING-SENTENCE TOOLKIT CONFIGURATION")
        print("="*50)
        print(f"Node budget: {cls.BUDGET:,}")
        print(f"Memo above: {cls.MEMO_QUANTIFIERS} quantifiers")
        print(f"Jobs: {cls.JOBS}")
        print(f"Seed: {cls.SEED}")
        print(f"Aut limit: {cls.AUT_LIMIT} (large: {cls.AUT_LARGE_LIMIT})")
        print(f"Simplicity limit: {cls.SIMPLE_LIMIT}")
        print(f"PSL limit: {cls.PSL_LIMIT}")
        print(f"Sweep max order: {cls.SWEEP_MAX_ORDER}")
        print(f"Catalog: {'custom' if cls.CATALOG else 'default'}")
        print("="*50 + "\n")
