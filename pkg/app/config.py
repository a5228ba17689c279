"""
Configuration settings for the outage simulator
"""


class Config:
    """Base configuration"""

    # Baseline scenario (powers in dBm, distances in meters)
    TAU = 2.7
    ETA = 0.8
    GAMMA_TH_DB = 1.0
    P_RS_DBM = 20.0
    P_P1_DBM = 35.0
    P_P2_DBM = 35.0
    P_RP_DBM = 35.0
    ANTENNAS = 4
    STREAMS = 1
    R_A_RS = 0.5
    R_RS_B = 0.5
    R_RS_RP = 2.0
    R_P1_RP = 0.5
    R_RP_P2 = 0.5

    # Alternating optimization loop caps
    MAX_OUTER_ITERS = 5
    MAX_INNER_ITERS = 20
    INNER_TOLERANCE = 1e-6

    # Runs
    TRIALS = 10000
    SEED = 1
    OUTPUT = 'results/outage.csv'

    # Runtime
    WORKERS = 1
    TRIAL_CHUNK_SIZE = 64
    LOG_LEVEL = 'INFO'
    PROGRESS_EVERY = 2000


class DevelopmentConfig(Config):
    """Development configuration"""
    LOG_LEVEL = 'DEBUG'


class ProductionConfig(Config):
    """Production configuration (long figure runs)"""
    WORKERS = 4
    TRIAL_CHUNK_SIZE = 256
    TRIALS = 100000


class TestingConfig(Config):
    """Testing configuration"""
    LOG_LEVEL = 'WARNING'
    TRIAL_CHUNK_SIZE = 8
    TRIALS = 50


config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': Config
}
