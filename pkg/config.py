"""
Configuration Management for the VOA verification engine
Loads environment variables and provides configuration settings
"""

import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Config:
    """Engine configuration"""

    # Verification defaults
    VOA_DEFAULT_CUTOFF = int(os.getenv('VOA_DEFAULT_CUTOFF', 8))
    VOA_DEFAULT_SAMPLES = int(os.getenv('VOA_DEFAULT_SAMPLES', 200))
    VOA_DEFAULT_SEED = int(os.getenv('VOA_DEFAULT_SEED', 7))

    # Lattice search
    VOA_PARTNER_RADIUS = int(os.getenv('VOA_PARTNER_RADIUS', 10))  # ball radius cap for negative partners

    # Reports
    VOA_REPORT_FORMAT = os.getenv('VOA_REPORT_FORMAT', 'json')

    # Logging
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FILE = os.getenv('LOG_FILE', 'logs/voa.log')
