"""
Django settings for the discrim_lab project.

The project has no web surface: Django supplies settings, logging, the
management-command CLI and the test runner around the `discrimination` app.
Numerical defaults below can be overridden from the environment (or a .env
file) with DISCRIM_* variables.
"""

from pathlib import Path
import os
from dotenv import load_dotenv
load_dotenv()
# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'discrim-lab-local-key')

DEBUG = os.getenv('DJANGO_DEBUG', 'false').lower() == 'true'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'discrimination',
]

# Results are files (CSV / JSONL); nothing is stored in a database.
DATABASES = {}

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'COERCE_DECIMAL_TO_STRING': False,
}


def _env_float(name, default):
    return float(os.getenv(name, default))


def _env_int(name, default):
    return int(os.getenv(name, default))


# Solver record shared by the PPT splitting solver, the POVM SDP, the
# one-way seesaw and the LO sphere ascent.
DISCRIM_SOLVER = {
    'tolerance': _env_float('DISCRIM_SOLVER_TOLERANCE', '1e-7'),
    'gap_tolerance': _env_float('DISCRIM_SOLVER_GAP_TOLERANCE', '1e-6'),
    'max_iterations': _env_int('DISCRIM_SOLVER_MAX_ITERATIONS', '20000'),
    'penalty': _env_float('DISCRIM_SOLVER_PENALTY', '1.0'),
    'relaxation': _env_float('DISCRIM_SOLVER_RELAXATION', '1.0'),
    'restarts': _env_int('DISCRIM_SOLVER_RESTARTS', '5'),
    'feasibility_rounds': _env_int('DISCRIM_SOLVER_FEASIBILITY_ROUNDS', '500'),
    'check_every': _env_int('DISCRIM_SOLVER_CHECK_EVERY', '10'),
    'inner_max_iterations': _env_int('DISCRIM_SOLVER_INNER_MAX_ITERATIONS', '500'),
    'seesaw_iterations': _env_int('DISCRIM_SOLVER_SEESAW_ITERATIONS', '50'),
    'lo_restarts': _env_int('DISCRIM_SOLVER_LO_RESTARTS', '50'),
    'lo_iterations': _env_int('DISCRIM_SOLVER_LO_ITERATIONS', '2000'),
    'lo_step': _env_float('DISCRIM_SOLVER_LO_STEP', '0.1'),
}

DISCRIM_TOLERANCES = {
    'hermiticity': 1e-12,
    'psd': 1e-9,
    'completeness': 1e-9,
    'trace': 1e-9,
    'certificate': 1e-6,
    'dual_feasibility': 1e-8,
    'traceless': 1e-10,
    'feasibility': 1e-9,
}

DISCRIM_SAMPLES = {
    'width': _env_int('DISCRIM_SAMPLES_WIDTH', '20000'),
    'volume_small': _env_int('DISCRIM_SAMPLES_VOLUME_SMALL', '1000000'),
    'volume_large': _env_int('DISCRIM_SAMPLES_VOLUME_LARGE', '10000000'),
}

DISCRIM_OUTPUT_DIR = BASE_DIR / os.getenv('DISCRIM_OUTPUT_DIR', 'results')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'timestamped': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'timestamped',
        },
    },
    'loggers': {
        'discrimination': {
            'handlers': ['console'],
            'level': os.getenv('DISCRIM_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}

# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True
