import os

from dotenv import load_dotenv

load_dotenv()


class Config:
    """Base configuration class"""
    # Logging
    LOG_LEVEL = os.environ.get('SLOCC_LOG_LEVEL') or 'WARNING'
    LOG_FILE = os.environ.get('SLOCC_LOG_FILE') or None

    # Randomness
    DEFAULT_SEED = int(os.environ.get('SLOCC_SEED') or 0)
    SAMPLING_SCALE = float(os.environ.get('SLOCC_SAMPLING_SCALE') or 0.3)

    # Numerical tolerances
    NORMALIZATION_TOLERANCE = 1e-12
    DETERMINANT_TOLERANCE = 1e-9
    SUPPORT_TOLERANCE = 1e-12
    ENTROPY_CUTOFF = 1e-14
    RANK_TOLERANCE = 1e-8
    RATIO_TOLERANCE = 1e-8
    INVARIANCE_TOLERANCE = 1e-8

    # Size guard for basis enumeration
    MAX_SECTOR_LABELS = 2 ** 20

    # Property checks
    CHECK_SAMPLES = int(os.environ.get('SLOCC_CHECK_SAMPLES') or 100)


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    TESTING = False


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    TESTING = False


class TestingConfig(Config):
    """Testing configuration"""
    DEBUG = True
    TESTING = True
    CHECK_SAMPLES = 10


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config():
    """Return the configuration class selected by SLOCC_ENV"""
    return config.get(os.environ.get('SLOCC_ENV') or 'default', config['default'])
